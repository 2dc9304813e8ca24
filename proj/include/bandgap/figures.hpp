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


#ifndef BANDGAP_FIGURES_HPP
#define BANDGAP_FIGURES_HPP

#include "bandgap/csv.hpp"
#include "bandgap/maxcontrast.hpp"
#include "bandgap/potential.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bandgap {

// Table builders for the six figure data sets. Columns named *_L2_4 are
// scaled by L^2/4; the unscaled companions use the configured period.

struct Fig1Config {
    double eta = 5.0;
    double alphaMin = 1.5;
    double alphaMax = 6.0;
    std::size_t count = 901;
    double period = kDefaultPeriod;
};
/// alpha, 2A/L, rho1(A), rho2(A), gap_L2_4, gap
CsvTable fig1_table(Fig1Config const& cfg);

struct Fig2Config {
    double eta = 5.0;
    /// Plots the first set at this alpha instead of the optimum.
    std::optional<double> alpha;
    /// Second parameter set given as a raw barrier height.
    double v0 = 1.5;
    std::size_t gridN = 256;
    double period = kDefaultPeriod;
};
/// param_set (1: eta, 2: v0), x, 2x/L, psi1, psi2, v over [0, 2L)
CsvTable fig2_table(Fig2Config const& cfg);

struct SweepConfig {
    double v0ScaledMin = 0.25;
    double v0ScaledMax = 60.0;
    std::size_t count = 240;
    double period = kDefaultPeriod;
    /// sinusoid solve for the Fig. 5 baseline
    std::size_t n = 512;
    std::size_t nBasis = 64;
};
std::vector<double> sweep_grid(SweepConfig const& cfg);

/// v0_L2_4, 2A/L, eta, alpha, v0, A, ok
CsvTable fig3_table(SweepConfig const& cfg);
/// v0_L2_4, eps1_L2_4, eps2_L2_4, eps1, eps2, v0, ok
CsvTable fig4_table(SweepConfig const& cfg);
/// v0_L2_4, gap_opt_L2_4, gap_sin_L2_4, gap_opt, gap_sin, ok
CsvTable fig5_table(SweepConfig const& cfg);

/// Gap of v0 cos^2(pi x / L) from the plane-wave solver.
double sinusoid_gap(double v0, double period, std::size_t n, std::size_t nBasis);

/// sigma L^2 of the optimized square well: 4 eta^2 sqrt(f (1 - f)), f = 1 - 1/alpha.
double squarewell_sigma_scaled(SquareWellSolution const& s);

/// Optimized square well whose own sigma L^2 equals the target, or nullopt
/// outside the range reachable for eta in [etaMin, etaMax].
std::optional<SquareWellSolution> squarewell_at_sigma(double sigmaScaled, double etaMin = 0.05, double etaMax = 40.0);

struct Fig6Config {
    double kmax = 0.95;
    std::size_t count = 19;
    double period = kDefaultPeriod;
    std::size_t n = 512;
    std::size_t nBasis = 64;
};
/// k, sigma_L2, sigma_L2_4, gap_elliptic_L2_4, gap_sinusoid_L2_4,
/// gap_squarewell_L2_4 (nan where undefined), sigma, gap_elliptic,
/// gap_sinusoid, gap_squarewell, eta_squarewell
CsvTable fig6_table(Fig6Config const& cfg);

} // namespace bandgap

#endif
