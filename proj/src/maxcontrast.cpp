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

#include "bandgap/maxcontrast.hpp"

#include "bandgap/errors.hpp"
#include "bandgap/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bandgap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanCells = 200;

void require_params(double eta, double alpha)
{
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw std::domain_error("eta must be positive, got " + std::to_string(eta));
    }
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
        throw std::domain_error("alpha must exceed 1, got " + std::to_string(alpha));
    }
}

// Barrier functions of s = eta^2/alpha^2 - y^2 = (kappa A)^2, continued
// analytically to s < 0 (kappa imaginary). All are entire in s.

// cosh(w sqrt s)
double ch(double s, double w)
{
    return s >= 0.0 ? std::cosh(w * std::sqrt(s)) : std::cos(w * std::sqrt(-s));
}

// sinh(w sqrt s) / sqrt s
double shp(double s, double w)
{
    if (s > 0.0) {
        double const p = std::sqrt(s);
        return std::sinh(w * p) / p;
    }
    if (s < 0.0) {
        double const q = std::sqrt(-s);
        return std::sin(w * q) / q;
    }
    return w;
}

// (1/s) int_0^c sinh^2(sqrt(s) t) dt
double sinh2_integral_over_s(double s, double c)
{
    double const u = s * c * c;
    if (std::abs(u) < 0.5) {
        // c^3 sum_{n>=1} 2^(2n-1) u^(n-1) / ((2n+1) (2n)!)
        double term = 2.0 / 2.0; // 2^(2n-1)/(2n)! at n = 1
        double sum = term / 3.0;
        for (int n = 2; n <= 30; ++n) {
            term *= 4.0 * u / ((2.0 * n - 1.0) * (2.0 * n));
            sum += term / (2.0 * n + 1.0);
        }
        return c * c * c * sum;
    }
    double q = 0.0;
    if (s > 0.0) {
        double const p = std::sqrt(s);
        q = 0.5 * (std::sinh(2.0 * p * c) / (2.0 * p) - c);
    } else {
        double const r = std::sqrt(-s);
        q = -0.5 * (c - std::sin(2.0 * r * c) / (2.0 * r));
    }
    return q / s;
}

double sinc(double y)
{
    return std::abs(y) < 1e-8 ? 1.0 - y * y / 6.0 : std::sin(y) / y;
}

// Matching determinants with the poles multiplied out:
// y sin y sinh(cp)/p - cos y cosh(cp) and sin y / y * p sinh(cp) + cos y cosh(cp).
double even_determinant(double y, double eta, double alpha)
{
    double const s = eta * eta / (alpha * alpha) - y * y;
    double const c = alpha - 1.0;
    return y * std::sin(y) * shp(s, c) - std::cos(y) * ch(s, c);
}

double odd_determinant(double y, double eta, double alpha)
{
    double const s = eta * eta / (alpha * alpha) - y * y;
    double const c = alpha - 1.0;
    return sinc(y) * s * shp(s, c) + std::cos(y) * ch(s, c);
}

template <class F>
double lowest_root(F&& f, double lo, double hi, char const* what, double eta, double alpha)
{
    auto const brackets = scan_sign_changes(f, lo, hi, kScanCells);
    if (brackets.empty()) {
        throw SolverError(std::string("edge_roots: no ") + what + " root in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] at eta=" + std::to_string(eta) +
                          ", alpha=" + std::to_string(alpha));
    }
    return bisect(f, brackets.front());
}

// Normalization integrals over one period in units A = 1 (period 2 alpha).
struct Norms {
    double n1;
    double n2;
};

Norms normalization(EdgeRoots r, double eta, double alpha)
{
    double const c = alpha - 1.0;
    double const s1 = eta * eta / (alpha * alpha) - r.y1 * r.y1;
    double const s2 = eta * eta / (alpha * alpha) - r.y2 * r.y2;

    double const cos1 = std::cos(r.y1);
    double const ysin1 = r.y1 * std::sin(r.y1);
    double const q1 = sinh2_integral_over_s(s1, c);
    double barrier1 = 0.0;
    if (cos1 * cos1 >= ysin1 * ysin1) {
        double const sh = shp(s1, c);
        barrier1 = cos1 * cos1 * q1 / (sh * sh);
    } else {
        double const chc = ch(s1, c);
        barrier1 = ysin1 * ysin1 * q1 / (chc * chc);
    }
    double const well1 = 0.5 + std::sin(2.0 * r.y1) / (4.0 * r.y1);

    double const sin2 = std::sin(r.y2);
    double const ycos2 = r.y2 * std::cos(r.y2);
    double const cosh2Int = c + s2 * sinh2_integral_over_s(s2, c); // int_0^c cosh^2
    double barrier2 = 0.0;
    if (sin2 * sin2 >= ycos2 * ycos2) {
        double const chc = ch(s2, c);
        barrier2 = sin2 * sin2 * cosh2Int / (chc * chc);
    } else {
        double const sh = s2 * shp(s2, c);
        barrier2 = ycos2 * ycos2 * cosh2Int / (sh * sh);
    }
    double const well2 = 0.5 - std::sin(2.0 * r.y2) / (4.0 * r.y2);
    return {2.0 * (well1 + barrier1), 2.0 * (well2 + barrier2)};
}

double closed_form_side(double ya, double yb, double eta, double alpha)
{
    // cot^2 ya (1 - (alpha-1) ya^2/sa) - cot ya / ya (1 + ya^2/sa)
    //   - tan^2 yb (1 - (alpha-1) yb^2/sb) - tan yb / yb (1 + yb^2/sb)
    double const c = alpha - 1.0;
    double const r2 = eta * eta / (alpha * alpha);
    double const sa = r2 - ya * ya;
    double const sb = r2 - yb * yb;
    double const cota = 1.0 / std::tan(ya);
    double const tanb = std::tan(yb);
    double const lhs = cota * cota * (1.0 - c * ya * ya / sa) - cota / ya * (1.0 + ya * ya / sa);
    double const rhs = tanb * tanb * (1.0 - c * yb * yb / sb) + tanb / yb * (1.0 + yb * yb / sb);
    return lhs - rhs;
}

double log_cell(double lo, double hi, int i, int cells)
{
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) / cells);
}

} // namespace

double edge_residual_psi1(double y1, double eta, double alpha)
{
    require_params(eta, alpha);
    double const c = alpha - 1.0;
    double const s = eta * eta / (alpha * alpha) - y1 * y1;
    double rhs = 0.0;
    if (s > 0.0) {
        double const p = std::sqrt(s);
        rhs = p / std::tanh(c * p);
    } else if (s < 0.0) {
        double const q = std::sqrt(-s);
        rhs = q / std::tan(c * q);
    } else {
        rhs = 1.0 / c;
    }
    return y1 * std::tan(y1) - rhs;
}

double edge_residual_psi2(double y2, double eta, double alpha)
{
    require_params(eta, alpha);
    double const c = alpha - 1.0;
    double const s = eta * eta / (alpha * alpha) - y2 * y2;
    double rhs = 0.0;
    if (s > 0.0) {
        double const p = std::sqrt(s);
        rhs = -1.0 / (p * std::tanh(c * p));
    } else if (s < 0.0) {
        double const q = std::sqrt(-s);
        rhs = 1.0 / (q * std::tan(c * q));
    } else {
        return std::numeric_limits<double>::infinity();
    }
    return std::tan(y2) / y2 - rhs;
}

double matching_residual_closed(double y1, double y2, double eta, double alpha)
{
    require_params(eta, alpha);
    return closed_form_side(y1, y2, eta, alpha);
}

double matching_residual_closed_exchanged(double y1, double y2, double eta, double alpha)
{
    require_params(eta, alpha);
    return closed_form_side(y2, y1, eta, alpha);
}

EdgeRoots edge_roots(double eta, double alpha)
{
    require_params(eta, alpha);
    auto even = [&](double y) { return even_determinant(y, eta, alpha); };
    auto odd = [&](double y) { return odd_determinant(y, eta, alpha); };
    return {lowest_root(even, 0.0, kPi / 2.0, "y1", eta, alpha), lowest_root(odd, 0.0, kPi, "y2", eta, alpha)};
}

SquareWellSolution square_well_edges(double eta, double alpha)
{
    auto const r = edge_roots(eta, alpha);
    SquareWellSolution s;
    s.eta = eta;
    s.alpha = alpha;
    s.y1 = r.y1;
    s.y2 = r.y2;
    s.eps1 = alpha * alpha * r.y1 * r.y1;
    s.eps2 = alpha * alpha * r.y2 * r.y2;
    s.gap = s.eps2 - s.eps1;
    return s;
}

EdgeDensities edge_densities(double eta, double alpha)
{
    auto const r = edge_roots(eta, alpha);
    auto const nrm = normalization(r, eta, alpha);
    double const c1 = std::cos(r.y1);
    double const s2 = std::sin(r.y2);
    // physical density at x = A with L = 2: psi^2(A) / (A N), A = 1/alpha
    return {alpha * c1 * c1 / nrm.n1, alpha * s2 * s2 / nrm.n2};
}

double density_match_residual(double eta, double alpha)
{
    auto const d = edge_densities(eta, alpha);
    return d.rho1 - d.rho2;
}

SquareWellSolution optimal_alpha(double eta, std::optional<double> alphaHint)
{
    if (!(eta > 0.0)) {
        throw std::domain_error("optimal_alpha: eta must be positive");
    }
    auto resid = [&](double a) { return density_match_residual(eta, a); };
    if (alphaHint && *alphaHint > kAlphaMin && *alphaHint < kAlphaMax) {
        double lo = std::max(kAlphaMin, *alphaHint / 1.02);
        double hi = std::min(kAlphaMax, *alphaHint * 1.02);
        double flo = resid(lo);
        double fhi = resid(hi);
        for (int grow = 0; grow < 12 && (flo < 0) == (fhi < 0); ++grow) {
            lo = std::max(kAlphaMin, lo / 1.2);
            hi = std::min(kAlphaMax, hi * 1.2);
            flo = resid(lo);
            fhi = resid(hi);
        }
        if ((flo < 0) != (fhi < 0)) {
            // a single sign change in the local bracket is taken as the continued branch
            return square_well_edges(eta, bisect(resid, {lo, hi, flo, fhi}));
        }
    }
    constexpr int cells = 400;
    std::optional<SquareWellSolution> best;
    double a0 = kAlphaMin;
    double f0 = resid(a0);
    for (int i = 1; i <= cells; ++i) {
        double const a1 = log_cell(kAlphaMin, kAlphaMax, i, cells);
        double const f1 = resid(a1);
        if ((f0 < 0) != (f1 < 0)) {
            auto const sol = square_well_edges(eta, bisect(resid, {a0, a1, f0, f1}));
            if (!best || sol.gap > best->gap) {
                best = sol;
            }
        }
        a0 = a1;
        f0 = f1;
    }
    if (!best) {
        throw SolverError("optimal_alpha: density_match_residual has no root for alpha in [" +
                          std::to_string(kAlphaMin) + ", " + std::to_string(kAlphaMax) +
                          "] at eta=" + std::to_string(eta));
    }
    return *best;
}

std::vector<double> closed_form_alpha_roots(double eta, bool exchanged)
{
    auto f = [&](double a) {
        auto const r = edge_roots(eta, a);
        return exchanged ? matching_residual_closed_exchanged(r.y1, r.y2, eta, a)
                         : matching_residual_closed(r.y1, r.y2, eta, a);
    };
    constexpr int cells = 400;
    std::vector<double> roots;
    double a0 = kAlphaMin;
    double f0 = f(a0);
    for (int i = 1; i <= cells; ++i) {
        double const a1 = log_cell(kAlphaMin, kAlphaMax, i, cells);
        double const f1 = f(a1);
        if (std::isfinite(f0) && std::isfinite(f1) && (f0 < 0) != (f1 < 0)) {
            double const a = bisect(f, {a0, a1, f0, f1});
            double const fa = std::abs(f(a));
            // at a pole |f| blows up as the bracket closes; at a root it collapses
            if (fa < 1e-6 * std::min(std::abs(f0), std::abs(f1)) || fa < 1e-9) {
                roots.push_back(a);
            }
        }
        a0 = a1;
        f0 = f1;
    }
    return roots;
}

PotentialProfile solution_profile(SquareWellSolution const& s, double period)
{
    return square_well_profile(4.0 * s.eta * s.eta / (period * period), period / (2.0 * s.alpha), period);
}

WavePoint solution_wave_at(SquareWellSolution const& s, double period, double x)
{
    double const L = period;
    double const halfWidth = L / (2.0 * s.alpha);
    auto const nrm = normalization({s.y1, s.y2}, s.eta, s.alpha);
    double const c = s.alpha - 1.0;
    double const r2 = s.eta * s.eta / (s.alpha * s.alpha);
    double const s1 = r2 - s.y1 * s.y1;
    double const s2 = r2 - s.y2 * s.y2;

    double xr = std::fmod(x, 2.0 * L);
    if (xr < 0.0) {
        xr += 2.0 * L;
    }
    double sign1 = 1.0;
    double sign2 = 1.0;
    if (xr >= L) {
        xr -= L;
        sign1 = -1.0;
        sign2 = -1.0;
    }
    if (xr > 0.5 * L) {
        // psi1 is odd about L/2, psi2 even about L/2
        xr = L - xr;
        sign1 = -sign1;
    }
    double const t = xr / halfWidth;
    double p1 = 0.0;
    double p2 = 0.0;
    if (t <= 1.0) {
        p1 = std::cos(s.y1 * t);
        p2 = std::sin(s.y2 * t);
    } else {
        double const tau = s.alpha - t;
        double const cos1 = std::cos(s.y1);
        double const ysin1 = s.y1 * std::sin(s.y1);
        p1 = (cos1 * cos1 >= ysin1 * ysin1) ? cos1 * shp(s1, tau) / shp(s1, c) : ysin1 * shp(s1, tau) / ch(s1, c);
        double const sin2 = std::sin(s.y2);
        double const ycos2 = s.y2 * std::cos(s.y2);
        p2 = (sin2 * sin2 >= ycos2 * ycos2) ? sin2 * ch(s2, tau) / ch(s2, c)
                                            : -ycos2 * ch(s2, tau) / (s2 * shp(s2, c));
    }
    return {sign1 * p1 / std::sqrt(halfWidth * nrm.n1), sign2 * p2 / std::sqrt(halfWidth * nrm.n2)};
}

BandEdgePair solution_wavefunctions(SquareWellSolution const& s, double period, std::size_t gridN)
{
    BandEdgePair out;
    out.period = period;
    out.gridN = gridN;
    out.blochK = kPi / period;
    out.eps1 = s.eps1 * 4.0 / (period * period);
    out.eps2 = s.eps2 * 4.0 / (period * period);
    out.psi1.resize(2 * gridN);
    out.psi2.resize(2 * gridN);
    for (std::size_t j = 0; j < 2 * gridN; ++j) {
        auto const w = solution_wave_at(s, period, static_cast<double>(j) * out.spacing());
        out.psi1[j] = w.psi1;
        out.psi2[j] = w.psi2;
    }
    return out;
}

std::vector<SweepRow> sweep_eta(std::span<double const> etaGrid)
{
    double prev = 0.0;
    for (double eta : etaGrid) {
        if (!(eta > prev) || !std::isfinite(eta)) {
            throw std::domain_error("sweep_eta: grid must be positive and increasing");
        }
        prev = eta;
    }
    std::vector<SweepRow> rows;
    std::optional<double> hint;
    for (double eta : etaGrid) {
        SweepRow row{eta, false, {}, {}};
        try {
            row.solution = optimal_alpha(eta, hint);
            row.ok = true;
            hint = row.solution.alpha;
        } catch (std::exception const& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace bandgap
