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
#include "bandgap/errors.hpp"
#include "bandgap/potential.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

using namespace bandgap;

namespace {

constexpr double kPi = std::numbers::pi;

// Kronig-Penney discriminant for well width a (v = 0) and barrier width b (v = v0), eps < v0.
double kronig_penney(double a, double b, double v0, double eps)
{
    double const q = std::sqrt(eps);
    double const kap = std::sqrt(v0 - eps);
    return 2.0 * std::cos(q * a) * std::cosh(kap * b) +
           (kap * kap - q * q) / (q * kap) * std::sin(q * a) * std::sinh(kap * b);
}

double norm_one_period(BandEdgePair const& e, std::vector<double> const& psi)
{
    double s = 0.0;
    for (std::size_t j = 0; j < e.gridN; ++j) s += psi[j] * psi[j];
    return s * e.spacing();
}

void check_edge_shape(BandEdgePair const& e)
{
    REQUIRE(e.psi1.size() == 2 * e.gridN);
    REQUIRE(e.psi2.size() == 2 * e.gridN);
    CHECK(e.eps1 <= e.eps2);
    CHECK(e.blochK == doctest::Approx(kPi / e.period));
    for (auto const* psi : {&e.psi1, &e.psi2}) {
        CHECK(norm_one_period(e, *psi) == doctest::Approx(1.0).epsilon(1e-12));
        double worst = 0.0;
        for (std::size_t j = 0; j < e.gridN; ++j) worst = std::max(worst, std::abs((*psi)[j] + (*psi)[j + e.gridN]));
        CHECK(worst < 1e-8);
        CHECK(nodes_per_period(*psi) == 1);
    }
}

} // namespace

TEST_CASE("free particle discriminant")
{
    auto const p = PotentialProfile::from_segments(2.0, {{0.5, 0.0}, {1.5, 0.0}});
    for (double e : {0.1, 1.0, 2.4674, 7.3, 30.0}) {
        CHECK(monodromy_discriminant(p, e) == doctest::Approx(2.0 * std::cos(std::sqrt(e) * 2.0)).epsilon(1e-12));
    }
    CHECK(monodromy_discriminant(p, 0.0) == doctest::Approx(2.0));
    CHECK(monodromy_discriminant(p, -1.0) == doctest::Approx(2.0 * std::cosh(2.0)).epsilon(1e-13));
}

TEST_CASE("Kronig-Penney oracle")
{
    double const a = 0.7;
    double const b = 2.0 - a;
    auto const p = PotentialProfile::from_segments(2.0, {{a / 2, 0.0}, {b, 9.0}, {a / 2, 0.0}});
    for (double e : {0.2, 1.5, 4.0, 8.5}) {
        CHECK(monodromy_discriminant(p, e) == doctest::Approx(kronig_penney(a, b, 9.0, e)).epsilon(1e-11));
    }
}

TEST_CASE("below the potential minimum D > 2")
{
    auto const p = square_well_profile(10.0, 0.3, 2.0);
    for (double e : {-5.0, -0.5, -1e-3}) CHECK(monodromy_discriminant(p, e) > 2.0);
}

TEST_CASE("symplectic determinant and analytic energy derivative")
{
    auto const p = PotentialProfile::from_segments(2.0, {{0.3, 1.0}, {0.4, 20.0}, {0.9, -3.0}, {0.4, 5.0}});
    for (double e : {-2.0, 0.5, 1.0, 5.0, 19.999999, 20.0, 45.0}) {
        auto const m = monodromy(p, e);
        CHECK(std::abs(m.m.determinant() - 1.0) < 1e-10 * std::max(1.0, m.m.frobenius2()));
        double const h = 1e-6;
        double const fd = (monodromy(p, e + h).m.trace() - monodromy(p, e - h).m.trace()) / (2 * h);
        CHECK(m.dm.trace() == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("shear propagator at eps == v")
{
    auto const t = segment_propagator(0.7, 3.0, 3.0);
    CHECK(t.m11 == 1.0);
    CHECK(t.m12 == doctest::Approx(0.7));
    CHECK(t.m21 == 0.0);
    CHECK(t.m22 == 1.0);
}

TEST_CASE("free particle edges are degenerate in both backends")
{
    double const target = kPi * kPi / 4.0;
    auto const seg = band_edges_segments(PotentialProfile::from_segments(2.0, {{2.0, 0.0}}), 64);
    CHECK(seg.eps1 == doctest::Approx(target).epsilon(1e-10));
    CHECK(seg.gap() < 1e-10);
    auto const fou = band_edges_fourier(PotentialProfile::from_samples(2.0, std::vector<double>(64, 0.0)), 16);
    CHECK(fou.eps1 == doctest::Approx(target).epsilon(1e-10));
    CHECK(fou.eps2 == doctest::Approx(target).epsilon(1e-10));
    for (auto const* e : {&seg, &fou}) {
        double dot = 0.0;
        for (std::size_t j = 0; j < e->gridN; ++j) dot += e->psi1[j] * e->psi2[j];
        CHECK(std::abs(dot * e->spacing()) < 1e-10);
        check_edge_shape(*e);
    }
}

TEST_CASE("edges solve D = -2 with the right shape")
{
    auto const p = square_well_profile(25.0, 2.0 / (2 * 3.136), 2.0);
    auto const e = band_edges_segments(p, 256);
    CHECK(std::abs(monodromy_discriminant(p, e.eps1) + 2.0) < 1e-9);
    CHECK(std::abs(monodromy_discriminant(p, e.eps2) + 2.0) < 1e-9);
    CHECK(e.gap() > 1.0);
    check_edge_shape(e);
    // psi1 is even about the well center, psi2 odd
    CHECK(std::abs(e.psi2[0]) < 1e-10);
    CHECK(std::abs(e.psi1[0]) > 0.1);
}

TEST_CASE("sign convention")
{
    auto const e = band_edges_fourier(elliptic_profile(EllipticModulus(0.5), 2.0, 128), 32);
    for (auto const* psi : {&e.psi1, &e.psi2}) {
        double mx = 0.0;
        for (double x : *psi) mx = std::max(mx, std::abs(x));
        for (double x : *psi) {
            if (std::abs(x) > 0.1 * mx) {
                CHECK(x > 0.0);
                break;
            }
        }
    }
}

TEST_CASE("weak sinusoid: gap from degenerate perturbation theory")
{
    double const v0 = 1e-3;
    auto const e = band_edges_fourier(sinusoidal_profile(v0, 2.0, 64), 16);
    CHECK(e.gap() / (v0 / 2.0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(e.residual < 1e-9);
}

TEST_CASE("backend agreement on a sampled square well")
{
    for (double alpha : {1.5, 3.136, 5.0}) {
        auto const p = square_well_profile(25.0, 1.0 / alpha, 2.0);
        auto const tm = band_edges_segments(p, 512);
        auto const pw = band_edges_fourier(p.to_samples(512), 64);
        CAPTURE(alpha);
        CHECK(std::abs(pw.gap() - tm.gap()) / tm.gap() < 2e-3);
        CHECK(pw.residual < 1e-9);
        check_edge_shape(pw);
    }
}

TEST_CASE("deep barrier trend")
{
    double const A = 0.4;
    double prev1 = 0.0;
    double prev2 = 0.0;
    double const ground = std::pow(kPi / (2 * A), 2);
    for (double v0 : {5.0, 20.0, 80.0, 320.0, 1280.0}) {
        auto const e = band_edges_segments(square_well_profile(v0, A, 2.0), 64);
        CHECK(e.eps1 > prev1);
        CHECK(e.eps2 > prev2);
        CHECK(e.eps1 < ground);
        CHECK(e.eps2 < 4 * ground);
        prev1 = e.eps1;
        prev2 = e.eps2;
    }
    // finite depth: the well looks wider by about 2/sqrt(v0)
    CHECK(prev1 / ground > 0.85);
}

TEST_CASE("representation errors")
{
    auto const seg = square_well_profile(1.0, 0.5, 2.0);
    auto const smp = seg.to_samples(64);
    CHECK_THROWS_AS(band_edges_fourier(seg, 32), std::invalid_argument);
    CHECK_THROWS(band_edges_segments(smp));
    CHECK_THROWS(monodromy_discriminant(smp, 1.0));
    CHECK_THROWS(band_edges_fourier(smp, 8));
}

TEST_CASE("node counting")
{
    std::vector<double> twoNodes(64);
    for (std::size_t j = 0; j < 64; ++j) twoNodes[j] = std::sin(2 * kPi * (j + 0.5) / 32.0 * 1.5);
    std::vector<double> sinOne(64);
    for (std::size_t j = 0; j < 64; ++j) sinOne[j] = std::sin(kPi * (j + 0.5) / 32.0);
    CHECK(nodes_per_period(sinOne) == 1);
    CHECK(nodes_per_period(twoNodes) == 3);
}

TEST_CASE("csv output")
{
    auto const e = band_edges_fourier(sinusoidal_profile(1.0, 2.0, 16), 16);
    auto const t = band_edges_table(e);
    CHECK(t.rows() == 32);
    std::ostringstream os;
    t.write(os);
    CHECK(os.str().find("x,psi1,psi2") != std::string::npos);
    CHECK(os.str().find("# eps1=") != std::string::npos);
}
