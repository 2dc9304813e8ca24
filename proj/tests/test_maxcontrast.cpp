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

#include "bandgap/bandsolver.hpp"
#include "bandgap/maxcontrast.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace bandgap;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

} // namespace

TEST_CASE("edge roots satisfy the printed edge conditions")
{
    for (double eta : {0.5, 2.0, 5.0, 9.0}) {
        for (double alpha : {1.3, 3.136, 7.0}) {
            auto const r = edge_roots(eta, alpha);
            CAPTURE(eta);
            CAPTURE(alpha);
            CHECK(r.y1 > 0.0);
            CHECK(r.y1 < kPi / 2);
            CHECK(r.y2 > r.y1);
            CHECK(r.y2 < kPi);
            CHECK(std::abs(edge_residual_psi1(r.y1, eta, alpha)) < 1e-12 * std::max(1.0, eta));
            double const res2 = edge_residual_psi2(r.y2, eta, alpha);
            CHECK(std::abs(res2) < 1e-11 * std::max(1.0, std::abs(std::tan(r.y2) / r.y2)));
        }
    }
}

TEST_CASE("residuals are continuous where the barrier wavenumber turns imaginary")
{
    double const eta = 3.0;
    double const alpha = 2.5;
    double const y0 = eta / alpha;
    REQUIRE(y0 < kPi / 2);
    // step 1e-8 in y^2
    double const d = 1e-8 / (2 * y0);
    CHECK(std::abs(edge_residual_psi1(y0 + d, eta, alpha) - edge_residual_psi1(y0 - d, eta, alpha)) < 1e-6);
    // away from the p = 0 pole of the psi2 form
    double const eta2 = 2.0;
    double const alpha2 = 1.2;
    double const y2 = eta2 / alpha2;
    REQUIRE(y2 > kPi / 2);
    double const lo = edge_residual_psi2(y2 - 1e-3, eta2, alpha2);
    double const hi = edge_residual_psi2(y2 + 1e-3, eta2, alpha2);
    CHECK(std::isfinite(lo));
    CHECK(std::isfinite(hi));
    // pole of the printed form at p = 0
    CHECK(std::abs(edge_residual_psi2(y2, eta2, alpha2)) > 1e6);
}

TEST_CASE("free-particle limit")
{
    for (double alpha : {1.5, 3.0, 6.0}) {
        auto const s = square_well_edges(1e-4, alpha);
        CHECK(s.y1 == doctest::Approx(kPi / (2 * alpha)).epsilon(1e-6));
        // the odd partner meets the same free-particle edge
        CHECK(s.y2 == doctest::Approx(kPi / (2 * alpha)).epsilon(1e-6));
        CHECK(s.gap < 1e-6);
        // free cos/sin pair: (cos^2 - sin^2)(pi A / L) in L = 2 units
        CHECK(density_match_residual(1e-4, alpha) == doctest::Approx(std::cos(kPi / alpha)).epsilon(1e-5));
    }
}

TEST_CASE("deep-barrier trend")
{
    double prev1 = 0.0;
    double prev2 = 0.0;
    for (double eta : {1.0, 3.0, 10.0, 30.0, 100.0}) {
        auto const r = edge_roots(eta, 2.0);
        CHECK(r.y1 > prev1);
        CHECK(r.y2 > prev2);
        prev1 = r.y1;
        prev2 = r.y2;
    }
    // isolated wells of width 2A: cos and sin ground/first states
    CHECK(prev1 == doctest::Approx(kPi / 2).epsilon(2e-2));
    CHECK(prev2 == doctest::Approx(kPi).epsilon(2e-2));
}

TEST_CASE("closed form agrees with the transfer matrix")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> etaD(0.3, 12.0);
    std::uniform_real_distribution<double> alphaD(1.05, 9.0);
    for (int i = 0; i < 40; ++i) {
        double const eta = etaD(rng);
        double const alpha = alphaD(rng);
        auto const s = square_well_edges(eta, alpha);
        for (double L : {2.0, 3.7}) {
            auto const e = band_edges_segments(solution_profile(s, L), 32);
            double const q = L * L / 4.0;
            CAPTURE(eta);
            CAPTURE(alpha);
            CHECK(rel(e.eps1 * q, s.eps1) < 1e-10);
            CHECK(rel(e.eps2 * q, s.eps2) < 1e-10);
        }
        CHECK(s.eps1 == doctest::Approx(alpha * alpha * s.y1 * s.y1).epsilon(1e-15));
        CHECK(s.gap > 0.0);
    }
}

TEST_CASE("closed-form wavefunctions match the transfer-matrix ones")
{
    auto const s = optimal_alpha(5.0);
    for (double L : {2.0, 1.3}) {
        auto const closed = solution_wavefunctions(s, L, 128);
        auto const tm = band_edges_segments(solution_profile(s, L), 128);
        REQUIRE(closed.psi1.size() == tm.psi1.size());
        // the solver normalizes with the grid sum, the closed form exactly
        auto grid_norm = [](std::vector<double> const& psi, double h) {
            double s2 = 0.0;
            for (std::size_t j = 0; j < psi.size() / 2; ++j) s2 += psi[j] * psi[j];
            return std::sqrt(s2 * h);
        };
        double const h = closed.spacing();
        double const c1 = grid_norm(closed.psi1, h);
        double const c2 = grid_norm(closed.psi2, h);
        CHECK(c1 == doctest::Approx(1.0).epsilon(1e-4));
        double worst = 0.0;
        for (std::size_t j = 0; j < tm.psi1.size(); ++j) {
            worst = std::max({worst, std::abs(closed.psi1[j] / c1 - tm.psi1[j]), std::abs(closed.psi2[j] / c2 - tm.psi2[j])});
        }
        CHECK(worst < 1e-9);
        auto const w = solution_wave_at(s, L, 38 * h);
        CHECK(w.psi1 == doctest::Approx(closed.psi1[38]).epsilon(1e-14));
        CHECK(w.psi2 == doctest::Approx(closed.psi2[38]).epsilon(1e-14));
    }
}

TEST_CASE("optimal alpha at eta = 5")
{
    auto const s = optimal_alpha(5.0);
    CHECK(std::abs(s.alpha - 3.136) < 0.005);
    CHECK(std::abs(density_match_residual(5.0, s.alpha)) < 1e-12);
    CHECK(s.gap >= square_well_edges(5.0, s.alpha + 0.1).gap);
    CHECK(s.gap >= square_well_edges(5.0, s.alpha - 0.1).gap);
    double const h = 1e-3;
    double const fd = (square_well_edges(5.0, s.alpha + h).gap - square_well_edges(5.0, s.alpha - h).gap) / (2 * h);
    CHECK(std::abs(fd) < 1e-4);
    auto const d = edge_densities(5.0, s.alpha);
    CHECK(d.rho1 == doctest::Approx(d.rho2).epsilon(1e-12));
    // a hint near the optimum converges to the same root
    CHECK(optimal_alpha(5.0, 3.0).alpha == doctest::Approx(s.alpha).epsilon(1e-12));
}

TEST_CASE("density crossing coincides with the gap maximum on a grid")
{
    for (double eta : {2.0, 5.0, 8.0}) {
        auto const s = optimal_alpha(eta);
        double bestAlpha = 0.0;
        double bestGap = -1.0;
        for (int i = 0; i <= 2000; ++i) {
            double const a = 1.05 + 9.0 * i / 2000.0;
            double const g = square_well_edges(eta, a).gap;
            if (g > bestGap) {
                bestGap = g;
                bestAlpha = a;
            }
        }
        CAPTURE(eta);
        CHECK(std::abs(bestAlpha - s.alpha) <= 9.0 / 2000.0);
        CHECK(s.gap >= bestGap);
    }
}

TEST_CASE("bang-bang consistency at the optimum")
{
    auto const s = optimal_alpha(5.0);
    double const L = 2.0;
    double const A = L / (2 * s.alpha);
    int n = 0;
    for (int j = 0; j < 1000; ++j) {
        double const x = L * (j + 0.5) / 1000.0;
        double const distance = std::min({std::abs(x - A), std::abs(x - (L - A))});
        if (distance < 1e-3) {
            continue;
        }
        auto const w = solution_wave_at(s, L, x);
        bool const barrier = x > A && x < L - A;
        CHECK((w.psi2 * w.psi2 > w.psi1 * w.psi1) == barrier);
        ++n;
    }
    CHECK(n > 990);
    auto const at = solution_wave_at(s, L, A);
    CHECK(at.psi1 * at.psi1 == doctest::Approx(at.psi2 * at.psi2).epsilon(1e-10));
}

TEST_CASE("gap positivity and vanishing contrast")
{
    double prev = 0.0;
    for (double eta : {0.05, 0.2, 1.0, 4.0, 12.0}) {
        auto const s = optimal_alpha(eta);
        CHECK(s.gap > prev);
        prev = s.gap;
    }
    CHECK(optimal_alpha(0.05).gap < 1e-2);
}

TEST_CASE("printed matching form versus exchanged indices")
{
    // The verbatim form has its root far from the gap maximum; exchanging
    // y1 and y2 recovers it. Both are kept so the discrepancy stays visible.
    for (double eta : {3.0, 5.0, 8.0}) {
        double const ref = optimal_alpha(eta).alpha;
        auto const verbatim = closed_form_alpha_roots(eta);
        auto const swapped = closed_form_alpha_roots(eta, true);
        REQUIRE(!verbatim.empty());
        REQUIRE(!swapped.empty());
        double nearestSwapped = 1e9;
        for (double a : swapped) nearestSwapped = std::min(nearestSwapped, std::abs(a - ref));
        double nearestVerbatim = 1e9;
        for (double a : verbatim) nearestVerbatim = std::min(nearestVerbatim, std::abs(a - ref));
        CAPTURE(eta);
        CHECK(nearestSwapped < 1e-6);
        CHECK(nearestVerbatim > 0.1);
        // sign change across the optimum for the exchanged form
        auto at = [eta](double a) {
            auto const r = edge_roots(eta, a);
            return matching_residual_closed_exchanged(r.y1, r.y2, eta, a);
        };
        CHECK(at(ref - 0.01) * at(ref + 0.01) < 0.0);
    }
}

TEST_CASE("sweep with continuation")
{
    std::vector<double> etas;
    for (int i = 1; i <= 40; ++i) etas.push_back(0.2 * i);
    auto const rows = sweep_eta(etas);
    REQUIRE(rows.size() == etas.size());
    double prevFraction = 1.0;
    for (auto const& r : rows) {
        REQUIRE(r.ok);
        CHECK(r.solution.eps1 < r.solution.eps2);
        CHECK(std::abs(density_match_residual(r.eta, r.solution.alpha)) < 1e-10);
        // the well narrows as the barrier grows
        CHECK(r.solution.well_fraction() < prevFraction);
        prevFraction = r.solution.well_fraction();
    }
    CHECK(rows[24].eta == doctest::Approx(5.0));
    CHECK(rows[24].solution.alpha == doctest::Approx(optimal_alpha(5.0).alpha).epsilon(1e-10));
    CHECK_THROWS_AS(sweep_eta(std::vector<double>{1.0, 0.5}), std::domain_error);
}

TEST_CASE("argument validation")
{
    CHECK_THROWS_AS(square_well_edges(-1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(square_well_edges(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(optimal_alpha(0.0), std::domain_error);
}
