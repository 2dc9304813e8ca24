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

#include "bandgap/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bandgap {

namespace {

void require_period(double period)
{
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw std::domain_error("period must be positive and finite");
    }
}

void require_samples(std::size_t n)
{
    if (n < kMinSamples) {
        throw std::domain_error("sample count must be >= " + std::to_string(kMinSamples) + ", got " +
                                std::to_string(n));
    }
}

} // namespace

PotentialProfile PotentialProfile::from_segments(double period, std::vector<Segment> segments)
{
    require_period(period);
    if (segments.empty()) {
        throw std::domain_error("segment list is empty");
    }
    double total = 0.0;
    for (auto const& s : segments) {
        if (!(s.width > 0.0) || !std::isfinite(s.width)) {
            throw std::domain_error("segment widths must be positive");
        }
        if (!std::isfinite(s.value)) {
            throw std::domain_error("segment values must be finite");
        }
        total += s.width;
    }
    if (std::abs(total - period) > 1e-12 * period) {
        throw std::domain_error("segment widths sum to " + std::to_string(total) + ", not the period " +
                                std::to_string(period));
    }
    return PotentialProfile(period, std::move(segments));
}

PotentialProfile PotentialProfile::from_samples(double period, std::vector<double> values)
{
    require_period(period);
    require_samples(values.size());
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::domain_error("sample values must be finite");
        }
    }
    return PotentialProfile(period, std::move(values));
}

std::vector<Segment> const& PotentialProfile::segments() const
{
    if (!is_segments()) {
        throw std::logic_error("profile is not in Segments representation");
    }
    return std::get<std::vector<Segment>>(rep_);
}

std::vector<double> const& PotentialProfile::samples() const
{
    if (!is_samples()) {
        throw std::logic_error("profile is not in Samples representation");
    }
    return std::get<std::vector<double>>(rep_);
}

double PotentialProfile::min_value() const
{
    if (is_segments()) {
        auto const& s = segments();
        return std::min_element(s.begin(), s.end(), [](auto& a, auto& b) { return a.value < b.value; })->value;
    }
    auto const& v = samples();
    return *std::min_element(v.begin(), v.end());
}

double PotentialProfile::max_value() const
{
    if (is_segments()) {
        auto const& s = segments();
        return std::max_element(s.begin(), s.end(), [](auto& a, auto& b) { return a.value < b.value; })->value;
    }
    auto const& v = samples();
    return *std::max_element(v.begin(), v.end());
}

double PotentialProfile::value_at(double x) const
{
    double xr = std::fmod(x, period_);
    if (xr < 0.0) {
        xr += period_;
    }
    if (is_samples()) {
        auto const& v = samples();
        auto const n = v.size();
        auto j = static_cast<std::size_t>(std::llround(xr / period_ * static_cast<double>(n)));
        return v[j % n];
    }
    double left = 0.0;
    for (auto const& s : segments()) {
        if (xr < left + s.width) {
            return s.value;
        }
        left += s.width;
    }
    return segments().back().value;
}

PotentialProfile PotentialProfile::to_samples(std::size_t n, SamplingMode mode) const
{
    require_samples(n);
    if (is_samples()) {
        if (samples().size() != n) {
            throw std::domain_error("resampling a Samples profile is not supported");
        }
        return *this;
    }
    double const h = period_ / static_cast<double>(n);
    std::vector<double> out(n);
    if (mode == SamplingMode::CellCenter) {
        for (std::size_t j = 0; j < n; ++j) {
            out[j] = value_at(static_cast<double>(j) * h);
        }
        return from_samples(period_, std::move(out));
    }
    // Cell j covers [x_j - h/2, x_j + h/2); the first cell wraps around x = 0,
    // so integrate over the shifted window [-h/2, L - h/2).
    auto const& segs = segments();
    std::vector<double> bounds{0.0};
    for (auto const& s : segs) {
        bounds.push_back(bounds.back() + s.width);
    }
    bounds.back() = period_;
    auto integrate = [&](double a, double b) {
        // integral of v over [a, b] with 0 <= a <= b <= L
        double acc = 0.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            double const lo = std::max(a, bounds[i]);
            double const hi = std::min(b, bounds[i + 1]);
            if (hi > lo) {
                acc += (hi - lo) * segs[i].value;
            }
        }
        return acc;
    };
    for (std::size_t j = 0; j < n; ++j) {
        double const a = (static_cast<double>(j) - 0.5) * h;
        double const b = (static_cast<double>(j) + 0.5) * h;
        double acc = 0.0;
        if (a < 0.0) {
            acc = integrate(period_ + a, period_) + integrate(0.0, b);
        } else if (b > period_) {
            acc = integrate(a, period_) + integrate(0.0, b - period_);
        } else {
            acc = integrate(a, b);
        }
        out[j] = acc / h;
    }
    return from_samples(period_, std::move(out));
}

PotentialProfile PotentialProfile::shifted(double c) const
{
    if (is_segments()) {
        auto s = segments();
        for (auto& seg : s) {
            seg.value += c;
        }
        return from_segments(period_, std::move(s));
    }
    auto v = samples();
    for (auto& x : v) {
        x += c;
    }
    return from_samples(period_, std::move(v));
}

PotentialProfile PotentialProfile::rotated(std::ptrdiff_t cells) const
{
    auto const& v = samples();
    auto const n = static_cast<std::ptrdiff_t>(v.size());
    std::vector<double> out(v.size());
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        out[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(((j + cells) % n + n) % n)];
    }
    return from_samples(period_, std::move(out));
}

PotentialProfile square_well_profile(double v0, double halfWidth, double period)
{
    require_period(period);
    if (!(v0 >= 0.0) || !std::isfinite(v0)) {
        throw std::domain_error("square well height v0 must be >= 0");
    }
    if (!(halfWidth > 0.0) || 2.0 * halfWidth > period * (1.0 + 1e-15)) {
        throw std::domain_error("square well needs 0 < 2A <= L");
    }
    double const barrier = period - 2.0 * halfWidth;
    if (barrier <= 1e-14 * period) {
        return PotentialProfile::from_segments(period, {{period, 0.0}});
    }
    return PotentialProfile::from_segments(period, {{halfWidth, 0.0}, {barrier, v0}, {halfWidth, 0.0}});
}

PotentialProfile sinusoidal_profile(double v0, double period, std::size_t n)
{
    require_period(period);
    require_samples(n);
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        double const c = std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
        v[j] = v0 * c * c;
    }
    return PotentialProfile::from_samples(period, std::move(v));
}

PotentialProfile elliptic_profile(EllipticModulus k, double period, std::size_t n, double offset)
{
    require_period(period);
    require_samples(n);
    double const bigK = complete_elliptic(k).bigK;
    double const scale = 2.0 * bigK / period;
    double const depth = 2.0 * k.k() * k.k() * scale * scale;
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        double const x = period * static_cast<double>(j) / static_cast<double>(n);
        double const sn = jacobi_sn_cn_dn(scale * x, k).sn;
        v[j] = depth * sn * sn + offset;
    }
    return PotentialProfile::from_samples(period, std::move(v));
}

MomentSummary moments(PotentialProfile const& p)
{
    double mean = 0.0;
    double var = 0.0;
    if (p.is_segments()) {
        for (auto const& s : p.segments()) {
            mean += s.width * s.value;
        }
        mean /= p.period();
        for (auto const& s : p.segments()) {
            var += s.width * (s.value - mean) * (s.value - mean);
        }
        var /= p.period();
    } else {
        auto const& v = p.samples();
        auto const n = static_cast<double>(v.size());
        for (double x : v) {
            mean += x;
        }
        mean /= n;
        for (double x : v) {
            var += (x - mean) * (x - mean);
        }
        var /= n;
    }
    return {mean, var, std::sqrt(var)};
}

CsvTable profile_table(PotentialProfile const& p)
{
    CsvTable t({"x", "v"});
    t.add_meta("L", p.period());
    if (p.is_samples()) {
        auto const& v = p.samples();
        auto const n = static_cast<double>(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            t.add_row({p.period() * static_cast<double>(j) / n, v[j]});
        }
    } else {
        double x = 0.0;
        for (auto const& s : p.segments()) {
            t.add_row({x, s.value});
            x += s.width;
            t.add_row({x, s.value});
        }
    }
    return t;
}

} // namespace bandgap
