/*
 Copyright 2026 The Bandgap Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef BANDGAP_MOMENT2_HPP
#define BANDGAP_MOMENT2_HPP

#include "bandgap/bandsolver.hpp"
#include "bandgap/potential.hpp"
#include "bandgap/specialfn.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bandgap {

/// Gap-extremizing potential at fixed first and second moments.
///
/// With scale = 2K/L the edge states are psi2 = amp sn(scale x),
/// psi1 = amp cn(scale x), amp = k / sqrt(L (1 - E/K)), in the potential
/// v = 2 k^2 scale^2 sn^2(scale x) (zero-offset gauge), with
/// eps1 = scale^2 and eps2 = (1 + k^2) scale^2. Only psi2 is unit-normalized.
struct EllipticOptimum {
    EllipticModulus k{0.0};
    double period = kDefaultPeriod;
    double bigK = 0.0;
    double bigE = 0.0;
    double scale = 0.0;
    /// (eps2 - eps1) L^2/4 = (k K)^2
    double gapScaled = 0.0;
    /// sigma L^2
    double sigmaScaled = 0.0;
    double amplitude = 0.0;
    /// psi2^2 - psi1^2 = alphaLagrange * v in the gauge v = 2 k^2 scale^2 (sn^2 - 1/2);
    /// infinite at k = 0.
    double alphaLagrange = 0.0;
    /// psi_i^2 = beta_i v_i with v2 = 2 k^2 scale^2 sn^2 and v1 = v2 - 2 k^2 scale^2;
    /// alphaLagrange = beta2 - beta1.
    double beta1 = 0.0;
    double beta2 = 0.0;

    double eps1() const { return scale * scale; }
    double eps2() const { return (1.0 + k.k() * k.k()) * scale * scale; }
    double depth() const { return 2.0 * k.k() * k.k() * scale * scale; }
};

/// sigma L^2 = 8 K^2 sqrt((2 (1+k^2)(1-E/K) - k^2 - 3 (1-E/K)^2) / 3).
double sigma_scaled(EllipticModulus k);

/// k = 0 gives the degenerate optimum (constant v, gap 0, amplitude sqrt(2/L)).
EllipticOptimum optimum_from_modulus(EllipticModulus k, double period = kDefaultPeriod);

inline constexpr double kModulusCeiling = 0.999999;

/// Inverts k -> sigma L^2 by bisection on [0, 0.999999] after checking that
/// the map is increasing on a 1000-point grid. Throws std::out_of_range above
/// sigma_scaled(0.999999) and std::logic_error if monotonicity fails.
EllipticOptimum modulus_from_sigma(double sigmaScaledTarget, double period = kDefaultPeriod);

enum class EllipticGauge {
    ZeroMinimum,  ///< v = 2 k^2 scale^2 sn^2
    Proportional, ///< v = 2 k^2 scale^2 (sn^2 - 1/2), so psi2^2 - psi1^2 = alpha v exactly
};

PotentialProfile optimum_profile(EllipticOptimum const& opt, std::size_t n,
                                 EllipticGauge gauge = EllipticGauge::ZeroMinimum);

/// Closed-form psi1 = amp cn, psi2 = amp sn on [0, 2L), n points per period,
/// with eps in the zero-minimum gauge.
BandEdgePair optimum_wavefunctions(EllipticOptimum const& opt, std::size_t n);

/// Second derivative of a periodic sampled function by discrete Fourier
/// differentiation; `length` is the period covered by the samples.
std::vector<double> spectral_second_derivative(std::span<double const> f, double length);

struct OptimumReport {
    double gapBandSolver = 0.0;
    double gapFormula = 0.0;
    double gapRelativeError = 0.0;
    bool gapOk = false;

    /// |g - (slope v + c)| / |slope v + c| for g = psi2^2 - psi1^2 from the band solver
    double affineResidual = 0.0;
    double affineSlope = 0.0;
    bool affineOk = false;

    /// max |-psi'' + v psi - eps psi| / (eps2 max|psi|) over both branches
    double schrodingerResidual = 0.0;
    bool schrodingerOk = false;

    /// max |psi'' - psi^3/beta + eps psi| / (eps2 max|psi|) over both branches
    double nlsResidual = 0.0;
    bool nlsOk = false;

    /// max |v_sn - v_cn| / depth, each v rebuilt from its own branch
    double branchMismatch = 0.0;
    bool branchOk = false;

    bool pass() const { return gapOk && affineOk && schrodingerOk && nlsOk && branchOk; }
};

/// Checks all three coupled equations for the optimum. Requires k > 0.
OptimumReport verify_optimum(EllipticOptimum const& opt, std::size_t nBasis, std::size_t n = 512);

} // namespace bandgap

#endif
