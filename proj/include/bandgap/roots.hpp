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

#ifndef BANDGAP_ROOTS_HPP
#define BANDGAP_ROOTS_HPP

#include <cmath>
#include <vector>

namespace bandgap {

struct Bracket {
    double lo;
    double hi;
    double flo;
    double fhi;
};

/// Bisection on a sign-changing bracket until the midpoint is no longer
/// representable between the ends or |hi - lo| <= xtol. Returns the end with
/// the smaller |f|.
template <class F>
double bisect(F&& f, Bracket b, double xtol = 0.0, int maxIter = 400)
{
    for (int it = 0; it < maxIter; ++it) {
        double const mid = 0.5 * (b.lo + b.hi);
        if (mid <= b.lo || mid >= b.hi || std::abs(b.hi - b.lo) <= xtol) {
            break;
        }
        double const fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm < 0) == (b.flo < 0)) {
            b.lo = mid;
            b.flo = fm;
        } else {
            b.hi = mid;
            b.fhi = fm;
        }
    }
    return std::abs(b.flo) <= std::abs(b.fhi) ? b.lo : b.hi;
}

/// Uniform scan of [a, b] in `cells` cells; every cell whose end values have
/// opposite signs (or hit zero) is returned, in increasing order.
template <class F>
std::vector<Bracket> scan_sign_changes(F&& f, double a, double b, int cells)
{
    std::vector<Bracket> out;
    double x0 = a;
    double f0 = f(a);
    for (int i = 1; i <= cells; ++i) {
        double const x1 = (i == cells) ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(cells);
        double const f1 = f(x1);
        if (std::isfinite(f0) && std::isfinite(f1) && ((f0 < 0) != (f1 < 0) || f1 == 0.0)) {
            out.push_back({x0, x1, f0, f1});
        }
        x0 = x1;
        f0 = f1;
    }
    return out;
}

} // namespace bandgap

#endif
