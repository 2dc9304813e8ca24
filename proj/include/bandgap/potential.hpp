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

#ifndef BANDGAP_POTENTIAL_HPP
#define BANDGAP_POTENTIAL_HPP

#include "bandgap/csv.hpp"
#include "bandgap/specialfn.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace bandgap {

/// Units: hbar^2/2m = 1, so -psi'' + v psi = eps psi. L = 2 makes L^2/4 = 1.
inline constexpr double kDefaultPeriod = 2.0;
inline constexpr std::size_t kMinSamples = 8;

struct Segment {
    double width;
    double value;
};

enum class SamplingMode {
    CellAverage, ///< mean of the profile over [x_j - h/2, x_j + h/2)
    CellCenter,  ///< value of the segment containing x_j
};

/// One period of a real periodic potential on [0, L).
///
/// Segments are laid out left to right starting at x = 0. Samples are the
/// values at x_j = j L / n, j = 0..n-1. Immutable once built.
class PotentialProfile {
public:
    /// Widths must be > 0 and sum to L within 1e-12 L.
    static PotentialProfile from_segments(double period, std::vector<Segment> segments);
    /// At least kMinSamples finite values.
    static PotentialProfile from_samples(double period, std::vector<double> values);

    double period() const { return period_; }
    bool is_segments() const { return std::holds_alternative<std::vector<Segment>>(rep_); }
    bool is_samples() const { return !is_segments(); }

    /// Throw std::logic_error on the wrong representation.
    std::vector<Segment> const& segments() const;
    std::vector<double> const& samples() const;

    double min_value() const;
    double max_value() const;

    /// Segments: exact value at x (taken modulo L). Samples: value of the
    /// nearest grid point.
    double value_at(double x) const;

    /// Segments -> Samples on n points; Samples input must already have n points.
    PotentialProfile to_samples(std::size_t n, SamplingMode mode = SamplingMode::CellAverage) const;

    /// v(x) + c.
    PotentialProfile shifted(double c) const;

    /// Cyclic shift by `cells` grid points (Samples only): v'_j = v_{j+cells}.
    PotentialProfile rotated(std::ptrdiff_t cells) const;

private:
    PotentialProfile(double period, std::variant<std::vector<Segment>, std::vector<double>> rep)
        : period_(period), rep_(std::move(rep))
    {
    }

    double period_;
    std::variant<std::vector<Segment>, std::vector<double>> rep_;
};

struct MomentSummary {
    double mean;
    double variance;
    double sigma;
};

/// Periodic square well: v = 0 on (-A, A), v0 on (A, L - A), extended periodically.
/// Stored as [well half A, barrier L - 2A, well half A] so that x = 0 is the
/// well center; 2A = L collapses to a single zero segment.
PotentialProfile square_well_profile(double v0, double halfWidth, double period);

/// v0 cos^2(pi x / L) sampled on n points.
PotentialProfile sinusoidal_profile(double v0, double period, std::size_t n);

/// 2 k^2 (2K/L)^2 sn^2(2K x / L, k) + offset sampled on n points.
PotentialProfile elliptic_profile(EllipticModulus k, double period, std::size_t n, double offset = 0.0);

/// Exact for Segments; periodic trapezoid (equal weights) for Samples.
MomentSummary moments(PotentialProfile const& p);

/// `x,v` rows: one per sample, or the two end points of each segment.
CsvTable profile_table(PotentialProfile const& p);

} // namespace bandgap

#endif
