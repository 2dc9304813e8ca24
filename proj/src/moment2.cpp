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

#include "bandgap/moment2.hpp"

#include "bandgap/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bandgap {

namespace {

struct Affine {
    double slope;
    double intercept;
    double relResidual;
};

// Least-squares fit y ~ slope x + intercept.
Affine fit_affine(std::span<double const> x, std::span<double const> y)
{
    auto const n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Affine a{sxx > 0 ? sxy / sxx : 0.0, 0.0, 0.0};
    a.intercept = my - a.slope * mx;
    double r2 = 0.0;
    double f2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double const fit = a.slope * x[i] + a.intercept;
        r2 += (y[i] - fit) * (y[i] - fit);
        f2 += fit * fit;
    }
    a.relResidual = f2 > 0 ? std::sqrt(r2 / f2) : std::sqrt(r2);
    return a;
}

} // namespace

double sigma_scaled(EllipticModulus k)
{
    auto const ke = complete_elliptic(k);
    double const s = ke.oneMinusRatio;
    double const k2 = k.k() * k.k();
    double const radicand = std::max(0.0, (2.0 * (1.0 + k2) * s - k2 - 3.0 * s * s) / 3.0);
    return 8.0 * ke.bigK * ke.bigK * std::sqrt(radicand);
}

EllipticOptimum optimum_from_modulus(EllipticModulus k, double period)
{
    if (!(period > 0.0)) {
        throw std::domain_error("optimum_from_modulus: period must be positive");
    }
    auto const ke = complete_elliptic(k);
    EllipticOptimum o;
    o.k = k;
    o.period = period;
    o.bigK = ke.bigK;
    o.bigE = ke.bigE;
    o.scale = 2.0 * ke.bigK / period;
    o.gapScaled = std::pow(k.k() * ke.bigK, 2);
    o.sigmaScaled = sigma_scaled(k);
    if (k.k() == 0.0) {
        o.amplitude = std::sqrt(2.0 / period);
        o.alphaLagrange = std::numeric_limits<double>::infinity();
        o.beta1 = -std::numeric_limits<double>::infinity();
        o.beta2 = std::numeric_limits<double>::infinity();
        return o;
    }
    o.amplitude = k.k() / std::sqrt(period * ke.oneMinusRatio);
    double const a2 = o.amplitude * o.amplitude;
    o.beta2 = a2 / o.depth();
    o.beta1 = -a2 / o.depth();
    o.alphaLagrange = o.beta2 - o.beta1;
    return o;
}

EllipticOptimum modulus_from_sigma(double target, double period)
{
    if (!(target >= 0.0)) {
        throw std::domain_error("modulus_from_sigma: target must be >= 0");
    }
    constexpr int gridPoints = 1000;
    double prev = -1.0;
    for (int i = 0; i < gridPoints; ++i) {
        double const k = kModulusCeiling * static_cast<double>(i) / (gridPoints - 1);
        double const s = sigma_scaled(EllipticModulus(k));
        if (!(s > prev)) {
            throw std::logic_error("modulus_from_sigma: sigma L^2 is not increasing in k near k=" +
                                   std::to_string(k));
        }
        prev = s;
    }
    double const top = prev;
    if (target > top) {
        throw std::out_of_range("modulus_from_sigma: target sigma L^2 = " + std::to_string(target) +
                                " exceeds the achievable bound " + std::to_string(top) + " at k=" +
                                std::to_string(kModulusCeiling));
    }
    if (target == 0.0) {
        return optimum_from_modulus(EllipticModulus(0.0), period);
    }
    auto f = [&](double k) { return sigma_scaled(EllipticModulus(k)) - target; };
    double const k = bisect(f, {0.0, kModulusCeiling, -target, top - target});
    return optimum_from_modulus(EllipticModulus(k), period);
}

PotentialProfile optimum_profile(EllipticOptimum const& opt, std::size_t n, EllipticGauge gauge)
{
    double const offset = gauge == EllipticGauge::Proportional ? -0.5 * opt.depth() : 0.0;
    return elliptic_profile(opt.k, opt.period, n, offset);
}

BandEdgePair optimum_wavefunctions(EllipticOptimum const& opt, std::size_t n)
{
    BandEdgePair out;
    out.period = opt.period;
    out.gridN = n;
    out.blochK = std::numbers::pi / opt.period;
    out.eps1 = opt.eps1();
    out.eps2 = opt.eps2();
    out.psi1.resize(2 * n);
    out.psi2.resize(2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j) {
        double const x = static_cast<double>(j) * out.spacing();
        auto const t = jacobi_sn_cn_dn(opt.scale * x, opt.k);
        out.psi1[j] = opt.amplitude * t.cn;
        out.psi2[j] = opt.amplitude * t.sn;
    }
    return out;
}

std::vector<double> spectral_second_derivative(std::span<double const> f, double length)
{
    std::size_t const n = f.size();
    std::vector<std::complex<double>> coef(n);
    std::vector<std::complex<double>> roots(n);
    for (std::size_t j = 0; j < n; ++j) {
        roots[j] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    }
    for (std::size_t m = 0; m < n; ++m) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += f[j] * roots[(m * j) % n];
        }
        coef[m] = acc / static_cast<double>(n);
    }
    for (std::size_t m = 0; m < n; ++m) {
        // signed wavenumber; the Nyquist mode of an even-length grid is dropped
        auto const sm = (m <= n / 2) ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
        if (n % 2 == 0 && m == n / 2) {
            coef[m] = 0.0;
            continue;
        }
        double const kw = 2.0 * std::numbers::pi * sm / length;
        coef[m] *= -kw * kw;
    }
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            acc += coef[m] * std::conj(roots[(m * j) % n]);
        }
        out[j] = acc.real();
    }
    return out;
}

OptimumReport verify_optimum(EllipticOptimum const& opt, std::size_t nBasis, std::size_t n)
{
    if (!(opt.k.k() > 0.0)) {
        throw std::domain_error("verify_optimum: requires k > 0");
    }
    OptimumReport r;
    double const L = opt.period;
    auto const profile = optimum_profile(opt, n);
    auto const& v = profile.samples();

    // (i) plane-wave gap against (kK)^2 4/L^2
    auto const edges = band_edges_fourier(profile, nBasis);
    r.gapBandSolver = edges.gap();
    r.gapFormula = opt.gapScaled * 4.0 / (L * L);
    r.gapRelativeError = std::abs(r.gapBandSolver - r.gapFormula) / r.gapFormula;
    r.gapOk = r.gapRelativeError <= 1e-6;

    // (ii) psi2^2 - psi1^2 from the band solver is affine in v
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        g[j] = edges.psi2[j] * edges.psi2[j] - edges.psi1[j] * edges.psi1[j];
    }
    auto const fit = fit_affine(v, g);
    r.affineResidual = fit.relResidual;
    r.affineSlope = fit.slope;
    r.affineOk = fit.relResidual < 1e-10 && fit.slope > 0.0;

    // (iii)/(iv) closed-form branches over two periods, spectrally differentiated
    auto const waves = optimum_wavefunctions(opt, n);
    auto const d1 = spectral_second_derivative(waves.psi1, 2.0 * L);
    auto const d2 = spectral_second_derivative(waves.psi2, 2.0 * L);
    double const depth = opt.depth();
    double const norm = opt.eps2() * opt.amplitude;
    double schr = 0.0;
    double nls = 0.0;
    for (std::size_t j = 0; j < 2 * n; ++j) {
        double const vj = v[j % n];
        double const p1 = waves.psi1[j];
        double const p2 = waves.psi2[j];
        schr = std::max(schr, std::abs(-d1[j] + vj * p1 - opt.eps1() * p1));
        schr = std::max(schr, std::abs(-d2[j] + vj * p2 - opt.eps2() * p2));
        // sn branch: psi2^2 = beta2 v; cn branch: psi1^2 = beta1 (v - depth), eps1 shifted by -depth
        nls = std::max(nls, std::abs(d2[j] - p2 * p2 * p2 / opt.beta2 + opt.eps2() * p2));
        nls = std::max(nls, std::abs(d1[j] - p1 * p1 * p1 / opt.beta1 + (opt.eps1() - depth) * p1));
    }
    r.schrodingerResidual = schr / norm;
    r.schrodingerOk = r.schrodingerResidual < 1e-8;
    r.nlsResidual = nls / norm;
    r.nlsOk = r.nlsResidual < 1e-9;

    // (v) both branches imply the same potential: v = eps + psi''/psi with
    // sn'' = -sn (dn^2 + k^2 cn^2), cn'' = -cn (dn^2 - k^2 sn^2)
    double const k2 = opt.k.k() * opt.k.k();
    double const s2 = opt.scale * opt.scale;
    double mismatch = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        auto const t = jacobi_sn_cn_dn(opt.scale * static_cast<double>(j) * L / static_cast<double>(n), opt.k);
        double const vSn = opt.eps2() - s2 * (t.dn * t.dn + k2 * t.cn * t.cn);
        double const vCn = opt.eps1() - s2 * (t.dn * t.dn - k2 * t.sn * t.sn);
        mismatch = std::max({mismatch, std::abs(vSn - vCn), std::abs(vSn - v[j])});
    }
    r.branchMismatch = mismatch / depth;
    r.branchOk = r.branchMismatch < 1e-10;
    return r;
}

} // namespace bandgap
