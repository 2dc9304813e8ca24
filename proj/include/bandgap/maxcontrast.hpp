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

#ifndef BANDGAP_MAXCONTRAST_HPP
#define BANDGAP_MAXCONTRAST_HPP

#include "bandgap/bandsolver.hpp"
#include "bandgap/potential.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bandgap {

/// Optimized periodic square well under 0 <= v <= v0.
///
/// Dimensionless parametrization: eta = sqrt(v0) L / 2, alpha = L / 2A,
/// y_i = k_i A. Energies are in units where L^2/4 = 1, i.e.
/// eps_i L^2/4 = alpha^2 y_i^2. psi1 is cos-like in the well (node at the
/// barrier center), psi2 sin-like (node at the well center).
struct SquareWellSolution {
    double eta = 0.0;
    double alpha = 0.0;
    double y1 = 0.0;
    double y2 = 0.0;
    double eps1 = 0.0;
    double eps2 = 0.0;
    double gap = 0.0;

    /// 2A/L
    double well_fraction() const { return 1.0 / alpha; }
    /// v0 L^2/4
    double v0_scaled() const { return eta * eta; }
};

/// y1 tan y1 - sqrt(eta^2/alpha^2 - y1^2) coth((alpha-1) sqrt(...)), continued
/// to q cot((alpha-1) q) with q = sqrt(y1^2 - eta^2/alpha^2) above the barrier.
double edge_residual_psi1(double y1, double eta, double alpha);

/// tan y2 / y2 + coth((alpha-1) p) / p with p = sqrt(eta^2/alpha^2 - y2^2),
/// continued to -cot((alpha-1) q)/q. Infinite at p = 0 (a pole of the printed
/// form, not a root).
double edge_residual_psi2(double y2, double eta, double alpha);

/// Left minus right side of the printed density-matching equation, verbatim.
double matching_residual_closed(double y1, double y2, double eta, double alpha);

/// The same expression with the roles of (y1, y2) exchanged. This is the form
/// that follows from equating the unit-normalized densities at x = A.
double matching_residual_closed_exchanged(double y1, double y2, double eta, double alpha);

struct EdgeRoots {
    double y1;
    double y2;
};

/// Lowest roots y1 in (0, pi/2) and y2 in (0, pi): 200-cell scan of the
/// pole-free matching determinants, then bisection to machine resolution.
/// Throws SolverError if a root is not found.
EdgeRoots edge_roots(double eta, double alpha);

/// Band edges of the square well at arbitrary (eta, alpha), alpha > 1.
SquareWellSolution square_well_edges(double eta, double alpha);

/// Unit-normalized (over one period, L = 2) densities psi_i^2 at x = A.
struct EdgeDensities {
    double rho1;
    double rho2;
};
EdgeDensities edge_densities(double eta, double alpha);

/// rho1(A) - rho2(A); zero where the gap is stationary in alpha.
double density_match_residual(double eta, double alpha);

inline constexpr double kAlphaMin = 1.01;
inline constexpr double kAlphaMax = 50.0;

/// Gap-maximizing alpha: root of density_match_residual. Without a hint the
/// bracket [1.01, 50] is scanned on 400 log-spaced cells and the root with the
/// largest gap is kept; with a hint the bracket grows around it.
SquareWellSolution optimal_alpha(double eta, std::optional<double> alphaHint = std::nullopt);

/// Roots in alpha of the verbatim printed matching equation on [1.01, 50];
/// sign changes at poles are discarded.
std::vector<double> closed_form_alpha_roots(double eta, bool exchanged = false);

/// Potential of a solution for period L: v0 = 4 eta^2 / L^2, A = L / (2 alpha).
PotentialProfile solution_profile(SquareWellSolution const& s, double period = kDefaultPeriod);

/// Closed-form unit-normalized wavefunctions on [0, 2L), gridN points per period.
BandEdgePair solution_wavefunctions(SquareWellSolution const& s, double period, std::size_t gridN);

/// Closed-form psi1(x), psi2(x), unit-normalized over one period.
struct WavePoint {
    double psi1;
    double psi2;
};
WavePoint solution_wave_at(SquareWellSolution const& s, double period, double x);

struct SweepRow {
    double eta;
    bool ok;
    SquareWellSolution solution;
    std::string error;
};

/// Sequential continuation over an increasing eta grid, warm-starting alpha
/// from the previous row. A failed row is recorded and the sweep continues.
std::vector<SweepRow> sweep_eta(std::span<double const> etaGrid);

} // namespace bandgap

#endif
