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
#include "bandgap/moment2.hpp"
#include "bandgap/potential.hpp"

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace bandgap;

namespace {

constexpr double kPi = std::numbers::pi;

double quad_sigma_scaled(EllipticOptimum const& o)
{
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    auto v = [&o](double x) { return o.depth() * std::pow(jacobi_sn_cn_dn(o.scale * x, o.k).sn, 2); };
    double const L = o.period;
    double const m1 = GK::integrate(v, 0.0, L, 15, 1e-14) / L;
    double const m2 = GK::integrate([&v](double x) { return v(x) * v(x); }, 0.0, L, 15, 1e-14) / L;
    return std::sqrt(m2 - m1 * m1) * L * L;
}

} // namespace

TEST_CASE("degenerate optimum at k = 0")
{
    auto const o = optimum_from_modulus(EllipticModulus(0.0));
    CHECK(o.gapScaled == 0.0);
    CHECK(o.sigmaScaled == 0.0);
    CHECK(o.amplitude == doctest::Approx(1.0));
    CHECK(std::isinf(o.alphaLagrange));
    auto const v = optimum_profile(o, 32).samples();
    for (double x : v) CHECK(x == 0.0);
}

TEST_CASE("gap formula")
{
    for (double k : {0.2, 0.8}) {
        EllipticModulus const m(k);
        auto const o = optimum_from_modulus(m);
        double const K = complete_elliptic(m).bigK;
        CHECK(o.gapScaled == doctest::Approx(std::pow(k * K, 2)).epsilon(1e-15));
        CHECK((o.eps2() - o.eps1()) == doctest::Approx(o.gapScaled).epsilon(1e-14));
    }
    auto const o3 = optimum_from_modulus(EllipticModulus(0.8), 3.0);
    CHECK((o3.eps2() - o3.eps1()) * 9.0 / 4.0 == doctest::Approx(o3.gapScaled).epsilon(1e-14));
}

TEST_CASE("small-k sigma")
{
    double const k = 0.05;
    auto const o = optimum_from_modulus(EllipticModulus(k));
    CHECK(o.sigmaScaled / (kPi * kPi * k * k / std::sqrt(2.0)) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(o.sigmaScaled == doctest::Approx(quad_sigma_scaled(o)).epsilon(1e-8));
    // tiny k: no cancellation in the radicand
    auto const t = optimum_from_modulus(EllipticModulus(1e-4));
    CHECK(t.sigmaScaled / (kPi * kPi * 1e-8 / std::sqrt(2.0)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sigma formula against quadrature and sampled moments")
{
    for (double k : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        auto const o = optimum_from_modulus(EllipticModulus(k));
        CAPTURE(k);
        CHECK(o.sigmaScaled == doctest::Approx(quad_sigma_scaled(o)).epsilon(1e-8));
        CHECK(o.sigmaScaled == doctest::Approx(moments(optimum_profile(o, 1024)).sigma * 4.0).epsilon(1e-8));
    }
}

TEST_CASE("gap and sigma increase with k")
{
    double g = -1.0;
    double s = -1.0;
    for (int i = 0; i < 500; ++i) {
        auto const o = optimum_from_modulus(EllipticModulus(0.999 * i / 499.0));
        CHECK(o.gapScaled > g);
        CHECK(o.sigmaScaled > s);
        g = o.gapScaled;
        s = o.sigmaScaled;
    }
}

TEST_CASE("modulus from sigma")
{
    auto const target = sigma_scaled(EllipticModulus(0.6));
    CHECK(modulus_from_sigma(target).k.k() == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(modulus_from_sigma(0.0).k.k() == 0.0);
    CHECK_THROWS_AS(modulus_from_sigma(1e6), std::out_of_range);
    CHECK_THROWS_AS(modulus_from_sigma(-1.0), std::domain_error);
}

TEST_CASE("verify_optimum")
{
    for (double k : {0.1, 0.5, 0.8, 0.95}) {
        auto const r = verify_optimum(optimum_from_modulus(EllipticModulus(k)), 64);
        CAPTURE(k);
        CHECK(r.gapRelativeError < 1e-6);
        CHECK(r.affineResidual < 1e-10);
        CHECK(r.affineSlope > 0.0);
        CHECK(r.schrodingerResidual < 1e-8);
        CHECK(r.nlsResidual < 1e-9);
        CHECK(r.branchMismatch < 1e-10);
        CHECK(r.pass());
    }
    CHECK_THROWS_AS(verify_optimum(optimum_from_modulus(EllipticModulus(0.0)), 64), std::domain_error);
}

TEST_CASE("edge energies match the band solver")
{
    auto const o = optimum_from_modulus(EllipticModulus(0.7), 2.0);
    auto const e = band_edges_fourier(optimum_profile(o, 512), 64);
    CHECK(e.eps1 == doctest::Approx(o.eps1()).epsilon(1e-9));
    CHECK(e.eps2 == doctest::Approx(o.eps2()).epsilon(1e-9));
}

TEST_CASE("proportional gauge gives psi2^2 - psi1^2 = alpha v")
{
    auto const o = optimum_from_modulus(EllipticModulus(0.6));
    auto const v = optimum_profile(o, 64, EllipticGauge::Proportional).samples();
    auto const w = optimum_wavefunctions(o, 64);
    for (std::size_t j = 0; j < 64; ++j) {
        CHECK(w.psi2[j] * w.psi2[j] - w.psi1[j] * w.psi1[j] ==
              doctest::Approx(o.alphaLagrange * v[j]).epsilon(1e-12).scale(o.amplitude * o.amplitude));
    }
    CHECK(o.alphaLagrange == doctest::Approx(o.beta2 - o.beta1));
}

TEST_CASE("closed-form edge states")
{
    auto const o = optimum_from_modulus(EllipticModulus(0.85), 2.0);
    auto const w = optimum_wavefunctions(o, 256);
    double n1 = 0.0;
    double n2 = 0.0;
    for (std::size_t j = 0; j < 256; ++j) {
        n1 += w.psi1[j] * w.psi1[j];
        n2 += w.psi2[j] * w.psi2[j];
        CHECK(std::abs(w.psi1[j] + w.psi1[j + 256]) < 1e-12);
        CHECK(std::abs(w.psi2[j] + w.psi2[j + 256]) < 1e-12);
    }
    CHECK(n2 * w.spacing() == doctest::Approx(1.0).epsilon(1e-12));
    // psi1 shares psi2's amplitude and is therefore not unit-normalized
    CHECK(n1 * w.spacing() < 1.0);
    CHECK(nodes_per_period(w.psi1) == 1);
    CHECK(nodes_per_period(w.psi2) == 1);
}

TEST_CASE("dn branch is periodic, not an antiperiodic edge")
{
    auto const o = optimum_from_modulus(EllipticModulus(0.7), 2.0);
    for (double x : {0.1, 0.5, 1.3}) {
        double const a = jacobi_sn_cn_dn(o.scale * x, o.k).dn;
        double const b = jacobi_sn_cn_dn(o.scale * (x + o.period), o.k).dn;
        CHECK(b == doctest::Approx(a).epsilon(1e-12));
        CHECK(a > 0.0);
    }
}

TEST_CASE("spectral second derivative")
{
    std::vector<double> f(64);
    for (std::size_t j = 0; j < 64; ++j) f[j] = std::sin(2 * kPi * 3 * j / 64.0) + std::cos(2 * kPi * j / 64.0);
    auto const d = spectral_second_derivative(f, 5.0);
    for (std::size_t j = 0; j < 64; ++j) {
        double const w1 = 2 * kPi / 5.0;
        double const exact = -9 * w1 * w1 * std::sin(2 * kPi * 3 * j / 64.0) - w1 * w1 * std::cos(2 * kPi * j / 64.0);
        CHECK(d[j] == doctest::Approx(exact).epsilon(1e-11).scale(1.0));
    }
}
