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

#include "bandgap/verification.hpp"

#include "bandgap/bandsolver.hpp"
#include "bandgap/figures.hpp"
#include "bandgap/maxcontrast.hpp"
#include "bandgap/moment2.hpp"
#include "bandgap/potential.hpp"
#include "bandgap/specialfn.hpp"
#include "bandgap/varopt.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <random>
#include <sstream>

namespace bandgap {

namespace {

constexpr double kPeriod = 2.0;
constexpr double kReferenceAlpha = 3.136;

void check(CriterionResult& r, std::string what, double value, double tol)
{
    bool const ok = std::isfinite(value) && value <= tol;
    r.checks.push_back({std::move(what), value, tol, ok});
}

void note(CriterionResult& r, std::string const& text)
{
    r.notes.push_back(text);
}

std::string fmt(char const* pattern, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// K and E by adaptive Gauss-Kronrod over the Legendre form.
double quad_k(double k)
{
    auto f = [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2, 15, 1e-15);
}

double quad_e(double k)
{
    auto f = [k](double t) { return std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2, 15, 1e-15);
}

// variance of v(x) = depth sn^2(2Kx/L) by quadrature over one period
double quad_variance(EllipticOptimum const& o)
{
    auto v = [&o](double x) {
        double const s = jacobi_sn_cn_dn(o.scale * x, o.k).sn;
        return o.depth() * s * s;
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double const L = o.period;
    double const m1 = GK::integrate(v, 0.0, L, 15, 1e-14) / L;
    double const m2 = GK::integrate([&v](double x) { return v(x) * v(x); }, 0.0, L, 15, 1e-14) / L;
    return m2 - m1 * m1;
}

void criterion1(CriterionResult& r)
{
    auto const t0 = std::chrono::steady_clock::now();
    auto const s = optimal_alpha(5.0);
    double const dt = seconds_since(t0);
    check(r, "|alpha(eta=5) - 3.136|", std::abs(s.alpha - kReferenceAlpha), 0.005);
    check(r, "runtime [s]", dt, 5.0);
    note(r, fmt("alpha=%.10f gap*L^2/4=%.10f", s.alpha, s.gap));
}

void criterion2(CriterionResult& r)
{
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> etaDist(1.0, 10.0);
    std::uniform_real_distribution<double> alphaDist(1.5, 6.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        double const eta = etaDist(rng);
        double const alpha = alphaDist(rng);
        auto const s = square_well_edges(eta, alpha);
        auto const e = band_edges_segments(solution_profile(s, kPeriod), 64);
        // L = 2, so eps L^2/4 = eps
        worst = std::max({worst, rel(e.eps1, s.eps1), rel(e.eps2, s.eps2)});
    }
    check(r, "max rel |eps_closed - eps_transfer| over 20 pairs", worst, 1e-10);
}

void criterion3(CriterionResult& r)
{
    for (double k : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        auto const o = optimum_from_modulus(EllipticModulus(k), kPeriod);
        double const gap = band_edges_fourier(optimum_profile(o, 512), 64).gap();
        check(r, fmt("k=%.1f rel gap error vs (kK)^2", k), rel(gap, o.gapScaled), 1e-6);
    }
}

void criterion4(CriterionResult& r)
{
    for (double k : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        auto const o = optimum_from_modulus(EllipticModulus(k), kPeriod);
        double const sigmaQuad = std::sqrt(quad_variance(o)) * kPeriod * kPeriod;
        check(r, fmt("k=%.1f rel sigma L^2 vs quadrature", k), rel(o.sigmaScaled, sigmaQuad), 1e-8);
    }
    double const k = 0.05;
    double const ratio = sigma_scaled(EllipticModulus(k)) / (std::numbers::pi * std::numbers::pi * k * k / std::sqrt(2.0));
    check(r, "k=0.05 |sigma L^2 / (pi^2 k^2/sqrt2) - 1|", std::abs(ratio - 1.0), 0.01);
}

void criterion5(CriterionResult& r)
{
    std::size_t const n = 512;
    auto const s = optimal_alpha(5.0);
    auto const profile = solution_profile(s, kPeriod).to_samples(n, SamplingMode::CellCenter);
    auto const waves = solution_wavefunctions(s, kPeriod, n);
    ConstraintSpec const box = BoxConstraint{0.0, profile.max_value()};
    check(r, "box residual at square-well optimum",
          extremality_residual(profile.samples(), gap_gradient(waves, profile), box), 1e-6);

    auto const o = optimum_from_modulus(EllipticModulus(0.6), kPeriod);
    auto const ep = optimum_profile(o, n);
    auto const m = moments(ep);
    ConstraintSpec const mom = MomentConstraint{m.mean, m.variance + m.mean * m.mean};
    auto const state = make_state(ep, mom, OptimizerOptions{.nBasis = 128});
    check(r, "moment residual at elliptic optimum (k=0.6)", state.extremalityResidual, 1e-10);

    double const h = 1e-3;
    double const fd = (square_well_edges(5.0, s.alpha + h).gap - square_well_edges(5.0, s.alpha - h).gap) / (2 * h);
    check(r, "|d gap / d alpha| by centered difference", std::abs(fd), 1e-4);
}

void criterion6(CriterionResult& r)
{
    SweepConfig cfg;
    cfg.v0ScaledMin = 1.0;
    cfg.v0ScaledMax = 60.0;
    cfg.count = 15;
    auto const t = fig5_table(cfg);
    auto const opt = t.column("gap_opt_L2_4");
    auto const sin = t.column("gap_sin_L2_4");
    int violations = 0;
    double margin = INFINITY;
    for (std::size_t i = 0; i < opt.size(); ++i) {
        if (!(opt[i] > sin[i])) {
            ++violations;
        }
        margin = std::min(margin, (opt[i] - sin[i]) / sin[i]);
    }
    check(r, "rows with gap_opt <= gap_sinusoid (of 15)", violations, 0.0);
    note(r, fmt("smallest relative margin %.6g", margin));
}

void criterion7(CriterionResult& r)
{
    auto const t = fig6_table(Fig6Config{});
    auto const ell = t.column("gap_elliptic_L2_4");
    auto const sin = t.column("gap_sinusoid_L2_4");
    auto const sw = t.column("gap_squarewell_L2_4");
    int vsSin = 0;
    int vsSw = 0;
    int defined = 0;
    for (std::size_t i = 0; i < ell.size(); ++i) {
        if (!(ell[i] >= sin[i])) {
            ++vsSin;
        }
        if (std::isfinite(sw[i])) {
            ++defined;
            if (!(ell[i] >= sw[i])) {
                ++vsSw;
            }
        }
    }
    check(r, "rows with gap_elliptic < gap_sinusoid", vsSin, 0.0);
    check(r, "rows with gap_elliptic < gap_squarewell", vsSw, 0.0);
    note(r, fmt("%.0f rows, square well defined on %.0f", static_cast<double>(ell.size()), defined));
}

void criterion8(CriterionResult& r)
{
    std::size_t const n = 512;
    {
        auto const t0 = std::chrono::steady_clock::now();
        auto const s = optimal_alpha(5.0);
        double const v0 = 25.0;
        ConstraintSpec const box = BoxConstraint{0.0, v0};
        auto const res = optimize(random_profile(box, n, 42), box, {}, 42);
        double const dt = seconds_since(t0);
        auto const& v = res.state.profile.samples();
        double const frac = static_cast<double>(std::count(v.begin(), v.end(), v0)) / static_cast<double>(n);
        check(r, "box: converged (0 = yes)", res.converged ? 0.0 : 1.0, 0.0);
        check(r, "box: runs - 2", std::abs(static_cast<double>(count_runs(v)) - 2.0), 0.0);
        check(r, "box: |barrier fraction - (1 - 1/alpha)| in cells",
              std::abs(frac - (1.0 - 1.0 / s.alpha)) * static_cast<double>(n), 1.0);
        check(r, "box: rel gap error", rel(res.state.gap(), s.gap), 1e-3);
        check(r, "box: runtime [s]", dt, 120.0);
        note(r, fmt("box: %.0f iterations, barrier fraction %.9f, gap %.10f", res.state.iterations, frac,
                    res.state.gap()));
    }
    {
        auto const t0 = std::chrono::steady_clock::now();
        auto const o = optimum_from_modulus(EllipticModulus(0.6), kPeriod);
        auto const m = moments(optimum_profile(o, n));
        ConstraintSpec const mom = MomentConstraint{m.mean, m.variance + m.mean * m.mean};
        auto const res = optimize(random_profile(mom, n, 7), mom, {}, 7);
        double const dt = seconds_since(t0);
        check(r, "moments: converged (0 = yes)", res.converged ? 0.0 : 1.0, 0.0);
        check(r, "moments: rel gap error vs (kK)^2, k=0.6", rel(res.state.gap(), o.gapScaled), 1e-3);
        check(r, "moments: runtime [s]", dt, 120.0);
        note(r, fmt("moments: %.0f iterations, gap %.12f", res.state.iterations, res.state.gap()));
    }
}

void criterion9(CriterionResult& r)
{
    double worstK = 0.0;
    double worstLegendre = 0.0;
    double worstPyth = 0.0;
    double worstPeriod = 0.0;
    for (double k : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        EllipticModulus const m(k);
        auto const ke = complete_elliptic(m);
        worstK = std::max({worstK, rel(ke.bigK, quad_k(k)), rel(ke.bigE, quad_e(k))});
        if (k > 0.0) {
            // K(k') is singular at k = 0
            auto const kc = complete_elliptic(EllipticModulus(m.complementary()));
            worstLegendre = std::max(worstLegendre, std::abs(ke.bigE * kc.bigK + kc.bigE * ke.bigK - ke.bigK * kc.bigK -
                                                             std::numbers::pi / 2));
        }
        for (int i = 0; i <= 64; ++i) {
            double const u = 4.0 * ke.bigK * i / 64.0 + 0.1;
            auto const t = jacobi_sn_cn_dn(u, m);
            auto const t4 = jacobi_sn_cn_dn(u + 4.0 * ke.bigK, m);
            worstPyth = std::max({worstPyth, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0),
                                  std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1.0)});
            worstPeriod = std::max(worstPeriod, std::abs(t4.sn - t.sn));
        }
    }
    check(r, "max rel |K, E - quadrature|", worstK, 1e-12);
    check(r, "max |sn^2 + cn^2 - 1|, |dn^2 + k^2 sn^2 - 1|", worstPyth, 1e-12);
    check(r, "max |Legendre relation - pi/2|", worstLegendre, 1e-12);
    check(r, "max |sn(u + 4K) - sn(u)|", worstPeriod, 1e-10);
}

void criterion10(CriterionResult& r)
{
    for (double eta : {3.0, 5.0, 8.0}) {
        double const ref = optimal_alpha(eta).alpha;
        auto const roots = closed_form_alpha_roots(eta);
        double best = INFINITY;
        double nearest = NAN;
        for (double a : roots) {
            if (std::abs(a - ref) < best) {
                best = std::abs(a - ref);
                nearest = a;
            }
        }
        check(r, fmt("eta=%.0f |alpha(printed matching eq.) - alpha(density match)|", eta), best, 1e-6);
        note(r, fmt("eta=%.0f: density-match root %.10f, nearest printed-form root %.10f", eta, ref, nearest));
        auto const swapped = closed_form_alpha_roots(eta, true);
        double bestSwapped = INFINITY;
        for (double a : swapped) {
            bestSwapped = std::min(bestSwapped, std::abs(a - ref));
        }
        note(r, fmt("eta=%.0f: with y1 and y2 exchanged the nearest root differs by %.3g", eta, bestSwapped));
    }
}

} // namespace

bool CriterionResult::pass() const
{
    return error.empty() && !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](CheckLine const& c) { return c.pass; });
}

CriterionResult run_criterion(int id)
{
    static char const* const titles[] = {
        "optimal alpha at eta=5",
        "square-well closed form vs transfer matrix",
        "elliptic gap formula vs plane-wave solve",
        "sigma formula vs quadrature",
        "extremality of both exact optima",
        "square well beats sinusoid at equal contrast",
        "elliptic optimum dominates at equal sigma",
        "optimizer convergence from random starts",
        "special-function identities",
        "printed matching equation vs density match",
    };
    CriterionResult r;
    if (id < 1 || id > kCriterionCount) {
        r.id = id;
        r.error = "no such criterion";
        return r;
    }
    r.id = id;
    r.title = titles[id - 1];
    auto const t0 = std::chrono::steady_clock::now();
    try {
        switch (id) {
        case 1: criterion1(r); break;
        case 2: criterion2(r); break;
        case 3: criterion3(r); break;
        case 4: criterion4(r); break;
        case 5: criterion5(r); break;
        case 6: criterion6(r); break;
        case 7: criterion7(r); break;
        case 8: criterion8(r); break;
        case 9: criterion9(r); break;
        default: criterion10(r); break;
        }
    } catch (std::exception const& e) {
        r.error = e.what();
    }
    r.seconds = seconds_since(t0);
    return r;
}

std::string format_result(CriterionResult const& r)
{
    std::ostringstream os;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s c%02d %s (%.2f s)\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(),
                  r.seconds);
    os << buf;
    for (auto const& c : r.checks) {
        std::snprintf(buf, sizeof buf, "    %s  %-58s %.6g (tol %.3g)\n", c.pass ? "ok  " : "FAIL", c.what.c_str(),
                      c.value, c.tolerance);
        os << buf;
    }
    for (auto const& n : r.notes) {
        os << "    note: " << n << '\n';
    }
    if (!r.error.empty()) {
        os << "    error: " << r.error << '\n';
    }
    return os.str();
}

} // namespace bandgap
