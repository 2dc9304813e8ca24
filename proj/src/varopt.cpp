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

#include "bandgap/varopt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <utility>
#include <random>
#include <stdexcept>
#include <string>

namespace bandgap {

namespace {

double mean_of(std::span<double const> v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(std::span<double const> v, double mean)
{
    double acc = 0.0;
    for (double x : v) {
        acc += (x - mean) * (x - mean);
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

std::vector<double> rescale_to_moments(std::span<double const> v, MomentConstraint const& m)
{
    double const mu = mean_of(v);
    double const sd = sd_of(v, mu);
    double const sigma = m.sigma();
    std::vector<double> out(v.size(), m.v1);
    if (sigma == 0.0) {
        return out;
    }
    if (!(sd > 0.0)) {
        throw std::invalid_argument("project: constant profile cannot carry a nonzero variance");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = m.v1 + sigma * (v[i] - mu) / sd;
    }
    return out;
}

PotentialProfile with_values(PotentialProfile const& p, std::vector<double> v)
{
    return PotentialProfile::from_samples(p.period(), std::move(v));
}

bool accept(double gapNew, double gapOld, OptimizerOptions const& o)
{
    return gapNew >= gapOld - o.ascentSlack * std::max(1.0, std::abs(gapOld));
}

// Tries target, then halving blends of it with the current profile.
template <class Blend>
OptimizerState damped_update(OptimizerState const& state, std::vector<double> const& target,
                             ConstraintSpec const& spec, OptimizerOptions const& options, Blend blend)
{
    auto const& vOld = state.profile.samples();
    if (std::equal(vOld.begin(), vOld.end(), target.begin(), target.end())) {
        OptimizerState next = state;
        next.iterations += 1;
        next.lastStep = 0.0;
        next.status = StepStatus::Unchanged;
        next.gapHistory.push_back(state.gap());
        return next;
    }
    double const gapOld = state.gap();
    for (double t = 1.0; t >= options.minStep; t *= 0.5) {
        std::vector<double> trial = t == 1.0 ? target : blend(vOld, target, t);
        auto next = make_state(with_values(state.profile, std::move(trial)), spec, options);
        if (accept(next.gap(), gapOld, options)) {
            next.gapHistory = state.gapHistory;
            next.gapHistory.push_back(next.gap());
            next.iterations = state.iterations + 1;
            next.lastStep = t;
            next.status = StepStatus::Accepted;
            return next;
        }
    }
    OptimizerState stalled = state;
    stalled.iterations += 1;
    stalled.lastStep = 0.0;
    stalled.status = StepStatus::Stalled;
    return stalled;
}

// Rounds to the nearer bound, then moves single interface cells while the gap
// increases. Damped blends leave fractional cells at the interfaces that the
// pure fixed-point update cannot remove on its own.
OptimizerState polish_bangbang(OptimizerState state, BoxConstraint const& box, OptimizerOptions const& options)
{
    ConstraintSpec const spec = box;
    double const mid = 0.5 * (box.vmin + box.vmax);
    auto v = state.profile.samples();
    for (auto& x : v) {
        x = x > mid ? box.vmax : box.vmin;
    }
    auto best = make_state(with_values(state.profile, v), spec, options);
    std::size_t const n = v.size();
    for (std::size_t round = 0; round < n; ++round) {
        auto const& cur = best.profile.samples();
        std::optional<OptimizerState> improved;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t const k = (j + 1) % n;
            if (cur[j] == cur[k]) {
                continue;
            }
            for (auto [dst, src] : {std::pair{j, k}, std::pair{k, j}}) {
                auto trial = cur;
                trial[dst] = cur[src];
                auto next = make_state(with_values(best.profile, std::move(trial)), spec, options);
                double const bar = improved ? improved->gap() : best.gap();
                if (next.gap() > bar + options.ascentSlack * std::max(1.0, bar)) {
                    improved = std::move(next);
                }
            }
        }
        if (!improved) {
            break;
        }
        best = std::move(*improved);
    }
    best.gapHistory = state.gapHistory;
    best.gapHistory.push_back(best.gap());
    best.iterations = state.iterations + 1;
    best.lastStep = 1.0;
    best.status = StepStatus::Accepted;
    return best;
}

} // namespace

double MomentConstraint::sigma() const
{
    return std::sqrt(std::max(0.0, v2 - v1 * v1));
}

void validate(ConstraintSpec const& spec)
{
    if (auto const* b = std::get_if<BoxConstraint>(&spec)) {
        if (!std::isfinite(b->vmin) || !std::isfinite(b->vmax) || b->vmax < b->vmin) {
            throw std::invalid_argument("box constraint requires finite vmin <= vmax");
        }
        return;
    }
    auto const& m = std::get<MomentConstraint>(spec);
    if (!std::isfinite(m.v1) || !std::isfinite(m.v2) || m.v2 < m.v1 * m.v1) {
        throw std::invalid_argument("moment constraint requires v2 >= v1^2");
    }
}

double constraint_scale(ConstraintSpec const& spec)
{
    if (auto const* b = std::get_if<BoxConstraint>(&spec)) {
        return b->vmax - b->vmin;
    }
    return std::get<MomentConstraint>(spec).sigma();
}

PotentialProfile project(PotentialProfile const& samples, ConstraintSpec const& spec)
{
    validate(spec);
    auto const& v = samples.samples();
    if (auto const* b = std::get_if<BoxConstraint>(&spec)) {
        std::vector<double> out(v.size());
        std::transform(v.begin(), v.end(), out.begin(),
                       [b](double x) { return std::clamp(x, b->vmin, b->vmax); });
        return with_values(samples, std::move(out));
    }
    return with_values(samples, rescale_to_moments(v, std::get<MomentConstraint>(spec)));
}

std::size_t basis_size(OptimizerOptions const& options, std::size_t n)
{
    return options.nBasis != 0 ? options.nBasis : std::max<std::size_t>(16, n / 4);
}

OptimizerState make_state(PotentialProfile const& samples, ConstraintSpec const& spec,
                          OptimizerOptions const& options)
{
    OptimizerState s;
    s.profile = samples;
    s.edges = band_edges_fourier(samples, basis_size(options, samples.samples().size()));
    s.extremalityResidual = extremality_residual(s, spec);
    return s;
}

std::vector<double> gap_gradient(BandEdgePair const& edges)
{
    std::vector<double> g(edges.gridN);
    for (std::size_t j = 0; j < edges.gridN; ++j) {
        g[j] = edges.psi2[j] * edges.psi2[j] - edges.psi1[j] * edges.psi1[j];
    }
    return g;
}

std::vector<double> gap_gradient(BandEdgePair const& edges, PotentialProfile const& samples)
{
    auto const n = samples.samples().size();
    if (edges.gridN != n || edges.psi1.size() < n || edges.psi2.size() < n ||
        std::abs(edges.period - samples.period()) > 1e-12 * samples.period()) {
        throw std::invalid_argument("gap_gradient: edge grid (" + std::to_string(edges.gridN) +
                                    " points) does not match the profile (" + std::to_string(n) + ")");
    }
    return gap_gradient(edges);
}

OptimizerState bangbang_step(OptimizerState const& state, BoxConstraint const& box, OptimizerOptions const& options)
{
    ConstraintSpec const spec = box;
    validate(spec);
    auto const g = gap_gradient(state.edges, state.profile);
    std::vector<double> target(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        target[j] = g[j] > 0.0 ? box.vmax : box.vmin;
    }
    if (box.vmin == box.vmax) {
        target = state.profile.samples();
    }
    auto blend = [](std::vector<double> const& a, std::vector<double> const& b, double t) {
        std::vector<double> out(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) {
            out[j] = (1.0 - t) * a[j] + t * b[j];
        }
        return out;
    };
    return damped_update(state, target, spec, options, blend);
}

OptimizerState moment_project_step(OptimizerState const& state, MomentConstraint const& moments,
                                   OptimizerOptions const& options)
{
    ConstraintSpec const spec = moments;
    validate(spec);
    auto const g = gap_gradient(state.edges, state.profile);
    double const gm = mean_of(g);
    double const gs = sd_of(g, gm);
    if (!(gs > 1e-300)) {
        OptimizerState stalled = state;
        stalled.iterations += 1;
        stalled.lastStep = 0.0;
        stalled.status = StepStatus::Stalled;
        return stalled;
    }
    // positive multiple of g: the first-order gain is sigma sd(g) L > 0
    auto target = rescale_to_moments(g, moments);
    auto const& vOld = state.profile.samples();
    double maxDiff = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        maxDiff = std::max(maxDiff, std::abs(target[j] - vOld[j]));
    }
    // moment targets are reached only to rounding, so compare at that level
    if (maxDiff <= 1e-13 * std::max(1.0, std::abs(moments.v1) + moments.sigma())) {
        target = vOld;
    }
    auto blend = [&moments](std::vector<double> const& a, std::vector<double> const& b, double t) {
        std::vector<double> out(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) {
            out[j] = (1.0 - t) * a[j] + t * b[j];
        }
        return rescale_to_moments(out, moments);
    };
    return damped_update(state, target, spec, options, blend);
}

double extremality_residual(std::span<double const> v, std::span<double const> g, ConstraintSpec const& spec)
{
    if (v.size() != g.size() || v.empty()) {
        throw std::invalid_argument("extremality_residual: size mismatch");
    }
    if (auto const* b = std::get_if<BoxConstraint>(&spec)) {
        double const span = b->vmax - b->vmin;
        double num = 0.0;
        double den = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            double const star = g[j] > 0.0 ? b->vmax : b->vmin;
            num += std::abs(g[j]) * std::abs(v[j] - star);
            den += std::abs(g[j]);
        }
        if (!(span > 0.0) || !(den > 0.0)) {
            return 0.0;
        }
        return num / (span * den);
    }
    double const vm = mean_of(v);
    double const gm = mean_of(g);
    double svv = 0.0;
    double sgg = 0.0;
    double svg = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        svv += (v[j] - vm) * (v[j] - vm);
        sgg += (g[j] - gm) * (g[j] - gm);
        svg += (v[j] - vm) * (g[j] - gm);
    }
    if (!(sgg > 0.0)) {
        return 0.0;
    }
    if (!(svv > 0.0)) {
        return 1.0;
    }
    return std::max(0.0, 1.0 - svg * svg / (svv * sgg));
}

double extremality_residual(OptimizerState const& state, ConstraintSpec const& spec)
{
    return extremality_residual(state.profile.samples(), gap_gradient(state.edges, state.profile), spec);
}

PotentialProfile random_profile(ConstraintSpec const& spec, std::size_t n, std::uint64_t seed, double period)
{
    validate(spec);
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    if (auto const* b = std::get_if<BoxConstraint>(&spec)) {
        std::uniform_real_distribution<double> dist(b->vmin, b->vmax);
        for (auto& x : v) {
            x = b->vmin == b->vmax ? b->vmin : dist(rng);
        }
        return PotentialProfile::from_samples(period, std::move(v));
    }
    std::normal_distribution<double> dist(0.0, 1.0);
    for (auto& x : v) {
        x = dist(rng);
    }
    return project(PotentialProfile::from_samples(period, std::move(v)), spec);
}

OptimizeResult optimize(PotentialProfile const& initial, ConstraintSpec const& spec,
                        OptimizerOptions const& options, std::uint64_t seed)
{
    validate(spec);
    OptimizeResult result;
    double const scale = constraint_scale(spec);
    auto start = project(initial.is_samples() ? initial : initial.to_samples(512), spec);
    auto state = make_state(start, spec, options);
    if (scale > 0.0 && state.gap() <= 1e-12 * std::max(1.0, scale)) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> noise(-1e-3 * scale, 1e-3 * scale);
        auto v = start.samples();
        for (auto& x : v) {
            x += noise(rng);
        }
        state = make_state(project(PotentialProfile::from_samples(start.period(), std::move(v)), spec), spec, options);
    }
    state.gapHistory = {state.gap()};
    result.trace.add_meta("mode", std::holds_alternative<BoxConstraint>(spec) ? "box" : "moments");
    result.trace.add_row({0.0, state.gap(), state.extremalityResidual, 0.0});

    int settled = 0;
    for (int it = 0; it < options.maxIterations; ++it) {
        double const gapOld = state.gap();
        state = std::holds_alternative<BoxConstraint>(spec)
                    ? bangbang_step(state, std::get<BoxConstraint>(spec), options)
                    : moment_project_step(state, std::get<MomentConstraint>(spec), options);
        result.trace.add_row({static_cast<double>(state.iterations), state.gap(), state.extremalityResidual,
                              state.lastStep});
        if (state.status == StepStatus::Stalled) {
            break;
        }
        bool const quiet = std::abs(state.gap() - gapOld) < options.gapTol * std::max(1.0, std::abs(gapOld)) &&
                           state.extremalityResidual < options.residualTol;
        settled = quiet ? settled + 1 : 0;
        if (settled >= options.settleCount) {
            result.converged = true;
            break;
        }
    }
    if (auto const* box = std::get_if<BoxConstraint>(&spec); box && box->vmax > box->vmin && result.converged) {
        auto const& v = state.profile.samples();
        bool const pure = std::all_of(v.begin(), v.end(), [box](double x) { return x == box->vmin || x == box->vmax; });
        if (!pure) {
            state = polish_bangbang(std::move(state), *box, options);
            result.trace.add_row({static_cast<double>(state.iterations), state.gap(), state.extremalityResidual,
                                  state.lastStep});
        }
    }
    result.state = std::move(state);
    return result;
}

std::size_t count_runs(std::span<double const> v)
{
    std::size_t changes = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] != v[(j + 1) % v.size()]) {
            ++changes;
        }
    }
    return changes == 0 ? 1 : changes;
}

} // namespace bandgap
