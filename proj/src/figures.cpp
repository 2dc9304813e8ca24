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

#include "bandgap/figures.hpp"

#include "bandgap/bandsolver.hpp"
#include "bandgap/moment2.hpp"
#include "bandgap/roots.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bandgap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> linspace(double a, double b, std::size_t count)
{
    if (count < 2) {
        throw std::invalid_argument("grid needs at least two points");
    }
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
}

std::vector<SweepRow> run_sweep(SweepConfig const& cfg)
{
    std::vector<double> etas;
    for (double s : sweep_grid(cfg)) {
        etas.push_back(std::sqrt(s));
    }
    return sweep_eta(etas);
}

void add_period_meta(CsvTable& t, double period)
{
    t.add_meta("L", period);
    t.add_meta("units", "hbar^2/2m=1; *_L2_4 columns scaled by L^2/4");
}

} // namespace

CsvTable fig1_table(Fig1Config const& cfg)
{
    if (!(cfg.alphaMin > 1.0) || !(cfg.alphaMax > cfg.alphaMin)) {
        throw std::invalid_argument("fig1: alpha range must satisfy 1 < alphaMin < alphaMax");
    }
    double const q = cfg.period * cfg.period / 4.0;
    CsvTable t({"alpha", "two_A_over_L", "rho1_A", "rho2_A", "gap_L2_4", "gap"});
    add_period_meta(t, cfg.period);
    t.add_meta("eta", cfg.eta);
    t.add_meta("rho_normalization", "unit norm over one period, L=2 units");
    for (double alpha : linspace(cfg.alphaMin, cfg.alphaMax, cfg.count)) {
        auto const s = square_well_edges(cfg.eta, alpha);
        auto const rho = edge_densities(cfg.eta, alpha);
        t.add_row({alpha, 1.0 / alpha, rho.rho1, rho.rho2, s.gap, s.gap / q});
    }
    return t;
}

CsvTable fig2_table(Fig2Config const& cfg)
{
    if (!(cfg.v0 > 0.0) || !(cfg.eta > 0.0)) {
        throw std::invalid_argument("fig2: eta and v0 must be positive");
    }
    CsvTable t({"param_set", "x", "two_x_over_L", "psi1", "psi2", "v"});
    add_period_meta(t, cfg.period);
    double const etaFromV0 = std::sqrt(cfg.v0) * cfg.period / 2.0;
    double const etas[] = {cfg.eta, etaFromV0};
    for (int set = 0; set < 2; ++set) {
        auto const s = set == 0 && cfg.alpha ? square_well_edges(etas[set], *cfg.alpha) : optimal_alpha(etas[set]);
        std::string const tag = "set" + std::to_string(set + 1);
        t.add_meta(tag + "_eta", s.eta);
        t.add_meta(tag + "_alpha", s.alpha);
        t.add_meta(tag + "_v0", 4.0 * s.eta * s.eta / (cfg.period * cfg.period));
        auto const profile = solution_profile(s, cfg.period);
        auto const waves = solution_wavefunctions(s, cfg.period, cfg.gridN);
        for (std::size_t j = 0; j < waves.psi1.size(); ++j) {
            double const x = static_cast<double>(j) * waves.spacing();
            t.add_row({static_cast<double>(set + 1), x, 2.0 * x / cfg.period, waves.psi1[j], waves.psi2[j],
                       profile.value_at(x)});
        }
    }
    return t;
}

std::vector<double> sweep_grid(SweepConfig const& cfg)
{
    if (!(cfg.v0ScaledMin > 0.0) || !(cfg.v0ScaledMax > cfg.v0ScaledMin)) {
        throw std::invalid_argument("sweep: need 0 < v0 min < v0 max");
    }
    return linspace(cfg.v0ScaledMin, cfg.v0ScaledMax, cfg.count);
}

CsvTable fig3_table(SweepConfig const& cfg)
{
    double const q = cfg.period * cfg.period / 4.0;
    CsvTable t({"v0_L2_4", "two_A_over_L", "eta", "alpha", "v0", "A", "ok"});
    add_period_meta(t, cfg.period);
    for (auto const& r : run_sweep(cfg)) {
        auto const& s = r.solution;
        double const v0s = r.eta * r.eta;
        t.add_row({v0s, r.ok ? 1.0 / s.alpha : kNaN, r.eta, r.ok ? s.alpha : kNaN, v0s / q,
                   r.ok ? cfg.period / (2.0 * s.alpha) : kNaN, r.ok ? 1.0 : 0.0});
    }
    return t;
}

CsvTable fig4_table(SweepConfig const& cfg)
{
    double const q = cfg.period * cfg.period / 4.0;
    CsvTable t({"v0_L2_4", "eps1_L2_4", "eps2_L2_4", "eps1", "eps2", "v0", "ok"});
    add_period_meta(t, cfg.period);
    for (auto const& r : run_sweep(cfg)) {
        auto const& s = r.solution;
        double const v0s = r.eta * r.eta;
        double const e1 = r.ok ? s.eps1 : kNaN;
        double const e2 = r.ok ? s.eps2 : kNaN;
        t.add_row({v0s, e1, e2, e1 / q, e2 / q, v0s / q, r.ok ? 1.0 : 0.0});
    }
    return t;
}

double sinusoid_gap(double v0, double period, std::size_t n, std::size_t nBasis)
{
    return band_edges_fourier(sinusoidal_profile(v0, period, n), nBasis).gap();
}

CsvTable fig5_table(SweepConfig const& cfg)
{
    double const q = cfg.period * cfg.period / 4.0;
    CsvTable t({"v0_L2_4", "gap_opt_L2_4", "gap_sin_L2_4", "gap_opt", "gap_sin", "ok"});
    add_period_meta(t, cfg.period);
    t.add_meta("sinusoid", "v0 cos^2(pi x/L), plane waves");
    t.add_meta("n", static_cast<double>(cfg.n));
    t.add_meta("nbasis", static_cast<double>(cfg.nBasis));
    for (auto const& r : run_sweep(cfg)) {
        double const v0s = r.eta * r.eta;
        double const gs = sinusoid_gap(v0s / q, cfg.period, cfg.n, cfg.nBasis);
        double const go = r.ok ? r.solution.gap : kNaN;
        t.add_row({v0s, go, gs * q, go / q, gs, r.ok ? 1.0 : 0.0});
    }
    return t;
}

double squarewell_sigma_scaled(SquareWellSolution const& s)
{
    double const f = 1.0 - 1.0 / s.alpha;
    return 4.0 * s.eta * s.eta * std::sqrt(f * (1.0 - f));
}

std::optional<SquareWellSolution> squarewell_at_sigma(double target, double etaMin, double etaMax)
{
    if (!(target > 0.0)) {
        return std::nullopt;
    }
    // coarse log grid with continuation, then bisection in eta inside the bracketing cell
    constexpr std::size_t cells = 200;
    std::vector<double> etas(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        etas[i] = etaMin * std::pow(etaMax / etaMin, static_cast<double>(i) / cells);
    }
    auto const rows = sweep_eta(etas);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (!rows[i].ok || !rows[i + 1].ok) {
            continue;
        }
        double const lo = squarewell_sigma_scaled(rows[i].solution) - target;
        double const hi = squarewell_sigma_scaled(rows[i + 1].solution) - target;
        if (lo == 0.0) {
            return rows[i].solution;
        }
        if ((lo < 0.0) != (hi < 0.0)) {
            double hint = rows[i].solution.alpha;
            auto f = [&](double eta) {
                auto const s = optimal_alpha(eta, hint);
                return squarewell_sigma_scaled(s) - target;
            };
            double const eta = bisect(f, {etas[i], etas[i + 1], lo, hi});
            return optimal_alpha(eta, hint);
        }
    }
    return std::nullopt;
}

CsvTable fig6_table(Fig6Config const& cfg)
{
    if (!(cfg.kmax > 0.0) || !(cfg.kmax <= kModulusCeiling) || cfg.count < 1) {
        throw std::invalid_argument("fig6: need 0 < kmax <= 0.999999 and at least one row");
    }
    double const q = cfg.period * cfg.period / 4.0;
    double const l2 = cfg.period * cfg.period;
    CsvTable t({"k", "sigma_L2", "sigma_L2_4", "gap_elliptic_L2_4", "gap_sinusoid_L2_4", "gap_squarewell_L2_4",
                "sigma", "gap_elliptic", "gap_sinusoid", "gap_squarewell", "eta_squarewell"});
    add_period_meta(t, cfg.period);
    t.add_meta("sinusoid", "v0 cos^2(pi x/L) with v0 = sqrt(8) sigma");
    t.add_meta("squarewell", "maximum-contrast optimum with the same sigma L^2");
    t.add_meta("n", static_cast<double>(cfg.n));
    t.add_meta("nbasis", static_cast<double>(cfg.nBasis));
    for (std::size_t i = 1; i <= cfg.count; ++i) {
        double const k = cfg.kmax * static_cast<double>(i) / static_cast<double>(cfg.count);
        auto const opt = optimum_from_modulus(EllipticModulus(k), cfg.period);
        double const sigmaL2 = opt.sigmaScaled;
        double const sigma = sigmaL2 / l2;
        double const gs = sinusoid_gap(std::sqrt(8.0) * sigma, cfg.period, cfg.n, cfg.nBasis);
        auto const sw = squarewell_at_sigma(sigmaL2);
        double const gsw = sw ? sw->gap : kNaN;
        t.add_row({k, sigmaL2, sigmaL2 / 4.0, opt.gapScaled, gs * q, gsw, sigma, opt.gapScaled / q, gs, gsw / q,
                   sw ? sw->eta : kNaN});
    }
    return t;
}

} // namespace bandgap
