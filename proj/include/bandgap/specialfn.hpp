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

#ifndef BANDGAP_SPECIALFN_HPP
#define BANDGAP_SPECIALFN_HPP

namespace bandgap {

/// Elliptic modulus k (not the parameter m = k^2). Valid range is [0, 1).
class EllipticModulus {
public:
    /// Throws std::domain_error unless 0 <= k < 1.
    explicit EllipticModulus(double k);

    double k() const { return k_; }
    /// k' = sqrt(1 - k^2), computed as sqrt((1-k)(1+k)).
    double complementary() const { return kp_; }

private:
    double k_;
    double kp_;
};

/// Complete elliptic integrals K(k) and E(k).
struct EllipticPair {
    double bigK;
    double bigE;
    /// 1 - E/K taken straight from the AGM sum (no cancellation at small k).
    double oneMinusRatio;
};

/// Arithmetic-geometric mean iteration; converges to machine precision.
EllipticPair complete_elliptic(EllipticModulus k);

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

/// Jacobi elliptic functions sn(u|k), cn(u|k), dn(u|k) of modulus k,
/// evaluated with the descending Landen (AGM) recursion.
JacobiTriple jacobi_sn_cn_dn(double u, EllipticModulus k);

} // namespace bandgap

#endif
