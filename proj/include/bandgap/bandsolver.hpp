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

#ifndef BANDGAP_BANDSOLVER_HPP
#define BANDGAP_BANDSOLVER_HPP

#include "bandgap/csv.hpp"
#include "bandgap/potential.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bandgap {

/// 2x2 propagator acting on (psi, psi').
struct TransferMatrix {
    double m11 = 1.0;
    double m12 = 0.0;
    double m21 = 0.0;
    double m22 = 1.0;

    double trace() const { return m11 + m22; }
    double determinant() const { return m11 * m22 - m12 * m21; }
    double frobenius2() const { return m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22; }
};

TransferMatrix operator*(TransferMatrix const& a, TransferMatrix const& b);

/// One-period monodromy matrix and its derivative with respect to energy.
struct Monodromy {
    TransferMatrix m;
    TransferMatrix dm;
};

/// Propagator across a constant segment of width d and value v at energy eps:
/// rotation for eps > v, hyperbolic for eps < v, shear for eps == v.
TransferMatrix segment_propagator(double width, double value, double eps);

/// Ordered product of segment propagators over one period, with d/deps.
/// Throws SolverError if |det M - 1| > 1e-10 max(1, |M|_F^2).
Monodromy monodromy(PotentialProfile const& p, double eps);

/// Floquet discriminant D(eps) = tr M(eps). Segments only.
double monodromy_discriminant(PotentialProfile const& p, double eps);

/// Two lowest band edges at Bloch wavevector pi/L (antiperiodic states).
///
/// psi1/psi2 hold 2*gridN samples over [0, 2L) at x_j = j L / gridN, are
/// normalized to one over a single period, and carry the sign convention
/// psi > 0 at the first grid point where |psi| exceeds 0.1 max|psi|.
struct BandEdgePair {
    double eps1 = 0.0;
    double eps2 = 0.0;
    std::vector<double> psi1;
    std::vector<double> psi2;
    double period = kDefaultPeriod;
    std::size_t gridN = 0;
    double blochK = 0.0;
    /// |D(eps)+2| at the returned roots (transfer matrix), or the largest
    /// eigen-pair residual |Hx - lambda x| (plane waves).
    double residual = 0.0;

    double gap() const { return eps2 - eps1; }
    double spacing() const { return period / static_cast<double>(gridN); }
    /// First period only: psi_i(x_j), j < gridN.
    std::span<double const> psi1_period() const { return {psi1.data(), gridN}; }
    std::span<double const> psi2_period() const { return {psi2.data(), gridN}; }
};

/// Roots of D(eps) + 2 = 0 by upward scan from min(v) with step (pi/L)^2/50,
/// then bisection. A tangential double root (gap closed) returns eps1 == eps2
/// and an orthonormal cos/sin-like pair. Throws SolverError if the scan
/// exhausts min(v) + 400 (pi/L)^2 + (max(v) - min(v)).
BandEdgePair band_edges_segments(PotentialProfile const& p, std::size_t gridN = 512);

/// Plane-wave diagonalization at Bloch wavevector pi/L using the real basis
/// sqrt(2/L) {cos, sin}(j pi x / L), j = 1, 3, ..., 2 nBasis + 1. Potential
/// matrix elements come from the DFT of the samples. Wavefunctions are
/// synthesized on the profile's own grid. Requires nBasis >= 16.
BandEdgePair band_edges_fourier(PotentialProfile const& p, std::size_t nBasis);

/// Sign changes of psi over one full 2L cycle divided by two; samples with
/// |psi| below 1e-9 max|psi| are skipped.
int nodes_per_period(std::span<double const> psiTwoPeriods);

/// `x,psi1,psi2` over [0, 2L) plus eps1, eps2, L metadata.
CsvTable band_edges_table(BandEdgePair const& e);

} // namespace bandgap

#endif
