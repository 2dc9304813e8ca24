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

#include "bandgap/specialfn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bandgap {

namespace {

constexpr int kMaxAgmSteps = 32;

struct AgmSequence {
    std::array<double, kMaxAgmSteps + 1> a{};
    std::array<double, kMaxAgmSteps + 1> c{};
    int steps = 0;
};

// a_0 = 1, b_0 = k', c_0 = k; stops once c_n is negligible against a_n.
AgmSequence agm(double k, double kp)
{
    AgmSequence s;
    double a = 1.0;
    double b = kp;
    s.a[0] = a;
    s.c[0] = k;
    int n = 0;
    while (std::abs(s.c[n]) > std::numeric_limits<double>::epsilon() * a && n < kMaxAgmSteps) {
        double const an = 0.5 * (a + b);
        double const cn = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        ++n;
        s.a[n] = a;
        s.c[n] = cn;
    }
    s.steps = n;
    return s;
}

} // namespace

EllipticModulus::EllipticModulus(double k) : k_(k), kp_(0.0)
{
    if (!(k >= 0.0 && k < 1.0)) {
        throw std::domain_error("elliptic modulus must satisfy 0 <= k < 1, got " + std::to_string(k));
    }
    kp_ = std::sqrt((1.0 - k) * (1.0 + k));
}

EllipticPair complete_elliptic(EllipticModulus k)
{
    auto const s = agm(k.k(), k.complementary());
    double const bigK = std::numbers::pi / (2.0 * s.a[s.steps]);
    // E = K (1 - sum_n 2^(n-1) c_n^2)
    double sum = 0.0;
    double weight = 0.5;
    for (int n = 0; n <= s.steps; ++n) {
        sum += weight * s.c[n] * s.c[n];
        weight *= 2.0;
    }
    return {bigK, bigK * (1.0 - sum), sum};
}

JacobiTriple jacobi_sn_cn_dn(double u, EllipticModulus k)
{
    if (!std::isfinite(u)) {
        throw std::domain_error("jacobi_sn_cn_dn: argument must be finite");
    }
    if (k.k() == 0.0) {
        return {std::sin(u), std::cos(u), 1.0};
    }
    auto const s = agm(k.k(), k.complementary());
    int const n = s.steps;
    double phi = std::ldexp(s.a[n] * u, n);
    for (int i = n; i >= 1; --i) {
        phi = 0.5 * (phi + std::asin(s.c[i] * std::sin(phi) / s.a[i]));
    }
    double const sn = std::sin(phi);
    double const cn = std::cos(phi);
    // cn / cos(phi_1 - phi_0) is 0/0 at the quarter period; dn > 0 for k < 1.
    double const ksn = k.k() * sn;
    double const dn = std::sqrt((1.0 - ksn) * (1.0 + ksn));
    return {sn, cn, dn};
}

} // namespace bandgap
