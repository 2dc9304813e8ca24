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


#ifndef BANDGAP_VAROPT_HPP
#define BANDGAP_VAROPT_HPP

#include "bandgap/bandsolver.hpp"
#include "bandgap/csv.hpp"
#include "bandgap/potential.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace bandgap {

/// vmin <= v(x) <= vmax. vmin == vmax is allowed and makes every step a no-op.
struct BoxConstraint {
    double vmin;
    double vmax;
};

/// <v> = v1 and <v^2> = v2, so the variance is v2 - v1^2.
struct MomentConstraint {
    double v1;
    double v2;

    double sigma() const;
};

using ConstraintSpec = std::variant<BoxConstraint, MomentConstraint>;

/// Throws std::invalid_argument for vmax < vmin, v2 < v1^2 or non-finite values.
void validate(ConstraintSpec const& spec);

/// Box: vmax - vmin. Moments: sigma.
double constraint_scale(ConstraintSpec const& spec);

/// Box: pointwise clamp. Moments: affine rescale v1 + sigma (v - <v>)/sd(v);
/// throws std::invalid_argument if v is constant and sigma > 0.
PotentialProfile project(PotentialProfile const& samples, ConstraintSpec const& spec);

struct OptimizerOptions {
    /// Plane-wave basis size; 0 means n/4.
    std::size_t nBasis = 0;
    int maxIterations = 200;
    double minStep = 1e-4;
    double gapTol = 1e-10;
    double residualTol = 1e-6;
    int settleCount = 3;
    /// Acceptance slack relative to max(1, gap).
    double ascentSlack = 1e-12;
};

enum class StepStatus { Accepted, Unchanged, Stalled };

struct OptimizerState {
    PotentialProfile profile = PotentialProfile::from_samples(kDefaultPeriod, std::vector<double>(kMinSamples, 0.0));
    BandEdgePair edges;
    std::vector<double> gapHistory;
    double extremalityResidual = 0.0;
    int iterations = 0;
    double lastStep = 0.0;
    StepStatus status = StepStatus::Accepted;

    double gap() const { return edges.gap(); }
};

std::size_t basis_size(OptimizerOptions const& options, std::size_t n);

/// Solves the edges of a sampled profile and fills the residual for `spec`.
OptimizerState make_state(PotentialProfile const& samples, ConstraintSpec const& spec,
                          OptimizerOptions const& options = {});

/// g = psi2^2 - psi1^2 on the first period of the edge grid.
std::vector<double> gap_gradient(BandEdgePair const& edges);

/// As above, throwing std::invalid_argument unless the edge grid matches the profile.
std::vector<double> gap_gradient(BandEdgePair const& edges, PotentialProfile const& samples);

/// v <- vmax where g > 0, vmin elsewhere, with step halving on gap decrease.
OptimizerState bangbang_step(OptimizerState const& state, BoxConstraint const& box,
                             OptimizerOptions const& options = {});

/// v <- v1 + sigma (g - <g>)/sd(g), with step halving and re-projection of blends.
OptimizerState moment_project_step(OptimizerState const& state, MomentConstraint const& moments,
                                   OptimizerOptions const& options = {});

/// Zero exactly at a stationary point of the gap under the constraint.
/// Box: sum |g| |v - v*| / ((vmax - vmin) sum |g|) with v* the bang-bang assignment.
/// Moments: 1 - R^2 of the least-squares fit of g on {1, v}.
double extremality_residual(std::span<double const> v, std::span<double const> g, ConstraintSpec const& spec);
double extremality_residual(OptimizerState const& state, ConstraintSpec const& spec);

/// Uniform in the box, or Gaussian projected onto the moments. Deterministic in seed.
PotentialProfile random_profile(ConstraintSpec const& spec, std::size_t n, std::uint64_t seed,
                                double period = kDefaultPeriod);

struct OptimizeResult {
    OptimizerState state;
    bool converged = false;
    /// iter, gap, residual, t
    CsvTable trace{{"iter", "gap", "residual", "t"}};
};

/// Damped fixed-point iteration until the gap changes by less than gapTol and
/// the residual is below residualTol for settleCount consecutive iterations.
/// A degenerate start (gap ~ 0) is perturbed with seeded noise of 1e-3 scale.
/// A converged box run that still has fractional cells is rounded to the
/// nearer bound and its interfaces moved cell by cell while the gap grows.
OptimizeResult optimize(PotentialProfile const& initial, ConstraintSpec const& spec,
                        OptimizerOptions const& options = {}, std::uint64_t seed = 0);

/// Cyclic runs of equal values; a two-level bang-bang optimum has two.
std::size_t count_runs(std::span<double const> v);

} // namespace bandgap

#endif
