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
#include "bandgap/linalg.hpp"
#include "bandgap/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bandgap {

namespace {

// C(s) = cos(d sqrt s), S(s) = sin(d sqrt s)/sqrt s (continued to s < 0),
// and their derivatives in s = eps - v.
struct SegmentFunctions {
    double c;
    double s;
    double dc;
    double ds;
};

SegmentFunctions segment_functions(double sArg, double d)
{
    double const u = sArg * d * d;
    SegmentFunctions f{};
    if (std::abs(u) < 0.05) {
        double termC = 1.0;
        double termS = 1.0;
        double sumC = 1.0;
        double sumS = 1.0;
        double sumDs = 0.0;
        double upow = 1.0; // u^(n-1)
        for (int n = 1; n <= 10; ++n) {
            termC *= -u / ((2.0 * n - 1.0) * (2.0 * n));
            termS *= -u / ((2.0 * n) * (2.0 * n + 1.0));
            sumC += termC;
            sumS += termS;
            // n (-1)^n u^(n-1) / (2n+1)!
            double fact = 1.0;
            for (int m = 2; m <= 2 * n + 1; ++m) {
                fact *= m;
            }
            sumDs += n * ((n % 2) ? -1.0 : 1.0) * upow / fact;
            upow *= u;
        }
        f.c = sumC;
        f.s = d * sumS;
        f.ds = d * d * d * sumDs;
    } else if (sArg > 0.0) {
        double const q = std::sqrt(sArg);
        f.c = std::cos(q * d);
        f.s = std::sin(q * d) / q;
        f.ds = (d * f.c - f.s) / (2.0 * sArg);
    } else {
        double const kappa = std::sqrt(-sArg);
        f.c = std::cosh(kappa * d);
        f.s = std::sinh(kappa * d) / kappa;
        f.ds = (d * f.c - f.s) / (2.0 * sArg);
    }
    f.dc = -0.5 * d * f.s;
    return f;
}

TransferMatrix propagator_from(SegmentFunctions const& f, double sArg)
{
    return {f.c, f.s, -sArg * f.s, f.c};
}

TransferMatrix operator+(TransferMatrix const& a, TransferMatrix const& b)
{
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

void require_segments(PotentialProfile const& p, char const* who)
{
    if (!p.is_segments()) {
        throw std::invalid_argument(std::string(who) + ": requires a Segments profile");
    }
}

void fix_sign(std::vector<double>& psi)
{
    double peak = 0.0;
    for (double x : psi) {
        peak = std::max(peak, std::abs(x));
    }
    for (double x : psi) {
        if (std::abs(x) > 0.1 * peak) {
            if (x < 0) {
                for (auto& y : psi) {
                    y = -y;
                }
            }
            return;
        }
    }
}

double period_norm2(std::vector<double> const& psi, std::size_t gridN, double h)
{
    double s = 0.0;
    for (std::size_t j = 0; j < gridN; ++j) {
        s += psi[j] * psi[j];
    }
    return s * h;
}

void normalize(std::vector<double>& psi, std::size_t gridN, double h)
{
    double const nrm = std::sqrt(period_norm2(psi, gridN, h));
    if (nrm == 0.0) {
        throw SolverError("band edge wavefunction vanished on the grid");
    }
    for (auto& x : psi) {
        x /= nrm;
    }
}

// psi on [0, 2L) from initial data (psi(0), psi'(0)) propagated across the segments twice.
std::vector<double> propagate_on_grid(PotentialProfile const& p, double eps, double psi0, double dpsi0,
                                      std::size_t gridN)
{
    auto const& segs = p.segments();
    double const L = p.period();
    double const h = L / static_cast<double>(gridN);
    std::vector<double> psi(2 * gridN);
    double psiStart = psi0;
    double dpsiStart = dpsi0;
    std::size_t j = 0;
    double left = 0.0;
    for (int cycle = 0; cycle < 2; ++cycle) {
        for (std::size_t i = 0; i < segs.size(); ++i) {
            double const right = (i + 1 == segs.size()) ? (cycle + 1) * L : left + segs[i].width;
            double const sArg = eps - segs[i].value;
            while (j < 2 * gridN && static_cast<double>(j) * h < right) {
                double const t = static_cast<double>(j) * h - left;
                auto const f = segment_functions(sArg, t);
                psi[j] = f.c * psiStart + f.s * dpsiStart;
                ++j;
            }
            auto const f = segment_functions(sArg, right - left);
            auto const m = propagator_from(f, sArg);
            double const a = m.m11 * psiStart + m.m12 * dpsiStart;
            double const b = m.m21 * psiStart + m.m22 * dpsiStart;
            psiStart = a;
            dpsiStart = b;
            left = right;
        }
    }
    return psi;
}

} // namespace

TransferMatrix operator*(TransferMatrix const& a, TransferMatrix const& b)
{
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22, a.m21 * b.m11 + a.m22 * b.m21,
            a.m21 * b.m12 + a.m22 * b.m22};
}

TransferMatrix segment_propagator(double width, double value, double eps)
{
    double const sArg = eps - value;
    return propagator_from(segment_functions(sArg, width), sArg);
}

Monodromy monodromy(PotentialProfile const& p, double eps)
{
    require_segments(p, "monodromy");
    Monodromy out;
    out.dm = {0.0, 0.0, 0.0, 0.0};
    for (auto const& seg : p.segments()) {
        double const sArg = eps - seg.value;
        auto const f = segment_functions(sArg, seg.width);
        auto const prop = propagator_from(f, sArg);
        TransferMatrix const dprop{f.dc, f.ds, -f.s - sArg * f.ds, f.dc};
        out.dm = dprop * out.m + prop * out.dm;
        out.m = prop * out.m;
    }
    double const det = out.m.determinant();
    if (!(std::abs(det - 1.0) <= 1e-10 * std::max(1.0, out.m.frobenius2()))) {
        throw SolverError("monodromy: symplectic check failed, det = " + std::to_string(det) + " at eps = " +
                          std::to_string(eps));
    }
    return out;
}

double monodromy_discriminant(PotentialProfile const& p, double eps)
{
    return monodromy(p, eps).m.trace();
}

BandEdgePair band_edges_segments(PotentialProfile const& p, std::size_t gridN)
{
    require_segments(p, "band_edges_segments");
    if (gridN < kMinSamples) {
        throw std::domain_error("band_edges_segments: grid must have at least 8 points");
    }
    double const L = p.period();
    double const free = std::numbers::pi * std::numbers::pi / (L * L);
    double const step = free / 50.0;
    double const start = p.min_value();
    double const stop = start + 400.0 * free + (p.max_value() - p.min_value());

    auto dOf = [&](double e) { return monodromy(p, e).m.trace(); };
    auto slopeOf = [&](double e) { return monodromy(p, e).dm.trace(); };

    // D decreases monotonically from +inf up to its first local minimum,
    // which lies in the first antiperiodic gap (or touches -2 when it is closed).
    std::vector<double> es{start};
    std::vector<double> ds{dOf(start)};
    std::size_t turn = 0;
    while (true) {
        double const e = es.back() + step;
        if (e > stop) {
            throw SolverError("band_edges_segments: no antiperiodic edge found while scanning eps in [" +
                              std::to_string(start) + ", " + std::to_string(stop) + "]");
        }
        double const d = dOf(e);
        es.push_back(e);
        ds.push_back(d);
        if (d > ds[ds.size() - 2]) {
            turn = es.size() - 1;
            break;
        }
    }
    double lo = es[turn >= 2 ? turn - 2 : 0];
    double hi = es[turn];
    while (slopeOf(hi) <= 0.0) {
        hi += step;
        if (hi > stop) {
            throw SolverError("band_edges_segments: discriminant minimum not bracketed below " +
                              std::to_string(stop));
        }
    }
    double const eMin = bisect(slopeOf, {lo, hi, slopeOf(lo), slopeOf(hi)});
    auto const mMin = monodromy(p, eMin).m;
    double const dMin = mMin.trace();
    // rounding in the trace scales with |M|, not |M|^2
    double const degenerateTol = 1e-12 * std::max(1.0, std::sqrt(mMin.frobenius2()));

    BandEdgePair out;
    out.period = L;
    out.gridN = gridN;
    out.blochK = std::numbers::pi / L;
    double const h = L / static_cast<double>(gridN);

    auto f = [&](double e) { return dOf(e) + 2.0; };
    if (dMin + 2.0 > -degenerateTol) {
        out.eps1 = eMin;
        out.eps2 = eMin;
        out.residual = std::abs(dMin + 2.0);
        out.psi1 = propagate_on_grid(p, eMin, 1.0, 0.0, gridN);
        out.psi2 = propagate_on_grid(p, eMin, 0.0, 1.0, gridN);
        normalize(out.psi1, gridN, h);
        double overlap = 0.0;
        for (std::size_t j = 0; j < gridN; ++j) {
            overlap += out.psi1[j] * out.psi2[j];
        }
        overlap *= h;
        for (std::size_t j = 0; j < out.psi2.size(); ++j) {
            out.psi2[j] -= overlap * out.psi1[j];
        }
        normalize(out.psi2, gridN, h);
    } else {
        // lower edge: last scanned point before the minimum with D + 2 > 0
        std::size_t a = 0;
        for (std::size_t i = 0; i < es.size() && es[i] < eMin; ++i) {
            if (ds[i] + 2.0 > 0.0) {
                a = i;
            }
        }
        double const e1 = bisect(f, {es[a], eMin, ds[a] + 2.0, dMin + 2.0});
        double b = eMin;
        double fb = dMin + 2.0;
        while (fb < 0.0) {
            b += step;
            if (b > stop) {
                throw SolverError("band_edges_segments: upper edge not found below " + std::to_string(stop));
            }
            fb = f(b);
        }
        double const e2 = bisect(f, {std::max(eMin, b - step), b, f(std::max(eMin, b - step)), fb});
        out.eps1 = e1;
        out.eps2 = e2;
        out.residual = std::max(std::abs(f(e1)), std::abs(f(e2)));
        auto reconstruct = [&](double e) {
            auto const m = monodromy(p, e).m;
            // null vector of M + I from its better-conditioned row
            double const r1a = m.m11 + 1.0;
            double const r1b = m.m12;
            double const r2a = m.m21;
            double const r2b = m.m22 + 1.0;
            bool const useFirst = std::hypot(r1a, r1b) >= std::hypot(r2a, r2b);
            double const u0 = useFirst ? r1b : r2b;
            double const u1 = useFirst ? -r1a : -r2a;
            auto psi = propagate_on_grid(p, e, u0, u1, gridN);
            normalize(psi, gridN, h);
            return psi;
        };
        out.psi1 = reconstruct(e1);
        out.psi2 = reconstruct(e2);
    }
    fix_sign(out.psi1);
    fix_sign(out.psi2);
    return out;
}

BandEdgePair band_edges_fourier(PotentialProfile const& p, std::size_t nBasis)
{
    if (!p.is_samples()) {
        throw std::invalid_argument("band_edges_fourier: requires a Samples profile");
    }
    if (nBasis < 16) {
        throw std::domain_error("band_edges_fourier: nBasis must be >= 16");
    }
    auto const& v = p.samples();
    std::size_t const n = v.size();
    double const L = p.period();
    std::size_t const nModes = nBasis + 1; // j = 1, 3, ..., 2 nBasis + 1
    std::size_t const maxHarmonic = 2 * nBasis + 1;

    std::vector<double> cosTable(n);
    std::vector<double> sinTable(n);
    for (std::size_t j = 0; j < n; ++j) {
        double const t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        cosTable[j] = std::cos(t);
        sinTable[j] = std::sin(t);
    }
    // (1/L) int v cos(2 pi h x / L), (1/L) int v sin(2 pi h x / L) by the periodic trapezoid rule
    std::vector<double> cosCoef(maxHarmonic + 1);
    std::vector<double> sinCoef(maxHarmonic + 1);
    for (std::size_t hm = 0; hm <= maxHarmonic; ++hm) {
        double c = 0.0;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t const idx = (hm * j) % n;
            c += v[j] * cosTable[idx];
            s += v[j] * sinTable[idx];
        }
        cosCoef[hm] = c / static_cast<double>(n);
        sinCoef[hm] = s / static_cast<double>(n);
    }
    auto cc = [&](long hm) { return cosCoef[static_cast<std::size_t>(std::labs(hm))]; };
    auto ss = [&](long hm) {
        double const s = sinCoef[static_cast<std::size_t>(std::labs(hm))];
        return hm < 0 ? -s : s;
    };

    SquareMatrix hmat(2 * nModes);
    for (std::size_t a = 0; a < nModes; ++a) {
        long const ja = 2 * static_cast<long>(a) + 1;
        for (std::size_t b = 0; b < nModes; ++b) {
            long const jb = 2 * static_cast<long>(b) + 1;
            long const dif = (ja - jb) / 2;
            long const sum = (ja + jb) / 2;
            hmat(a, b) = cc(dif) + cc(sum);
            hmat(nModes + a, nModes + b) = cc(dif) - cc(sum);
            double const cs = ss(sum) - ss(dif); // <cos_a | v | sin_b>
            hmat(a, nModes + b) = cs;
            hmat(nModes + b, a) = cs;
        }
        double const kin = std::pow(static_cast<double>(ja) * std::numbers::pi / L, 2);
        hmat(a, a) += kin;
        hmat(nModes + a, nModes + a) += kin;
    }
    auto const eig = eigh_householder_ql(hmat);

    BandEdgePair out;
    out.period = L;
    out.gridN = n;
    out.blochK = std::numbers::pi / L;
    out.eps1 = eig.values[0];
    out.eps2 = eig.values[1];
    out.residual = eigen_residual(hmat, eig, 2);
    double const h = L / static_cast<double>(n);
    double const amp = std::sqrt(2.0 / L);
    auto synth = [&](std::size_t col) {
        std::vector<double> psi(2 * n);
        for (std::size_t i = 0; i < 2 * n; ++i) {
            double const x = static_cast<double>(i) * h;
            double acc = 0.0;
            for (std::size_t a = 0; a < nModes; ++a) {
                double const arg = static_cast<double>(2 * a + 1) * std::numbers::pi * x / L;
                acc += eig.vectors(a, col) * std::cos(arg) + eig.vectors(nModes + a, col) * std::sin(arg);
            }
            psi[i] = amp * acc;
        }
        normalize(psi, n, h);
        fix_sign(psi);
        return psi;
    };
    out.psi1 = synth(0);
    out.psi2 = synth(1);
    return out;
}

int nodes_per_period(std::span<double const> psi)
{
    double peak = 0.0;
    for (double x : psi) {
        peak = std::max(peak, std::abs(x));
    }
    double const floor = 1e-9 * peak;
    std::vector<int> signs;
    for (double x : psi) {
        if (std::abs(x) > floor) {
            signs.push_back(x > 0 ? 1 : -1);
        }
    }
    if (signs.empty()) {
        return 0;
    }
    int changes = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != signs[(i + 1) % signs.size()]) {
            ++changes;
        }
    }
    return changes / 2;
}

CsvTable band_edges_table(BandEdgePair const& e)
{
    CsvTable t({"x", "psi1", "psi2"});
    t.add_meta("eps1", e.eps1);
    t.add_meta("eps2", e.eps2);
    t.add_meta("L", e.period);
    for (std::size_t j = 0; j < e.psi1.size(); ++j) {
        t.add_row({static_cast<double>(j) * e.spacing(), e.psi1[j], e.psi2[j]});
    }
    return t;
}

} // namespace bandgap
