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

#ifndef BANDGAP_LINALG_HPP
#define BANDGAP_LINALG_HPP

#include <cstddef>
#include <vector>

namespace bandgap {

/// Dense square matrix, row-major.
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> a_;
};

/// Eigenvalues ascending; column j of `vectors` is the unit eigenvector of values[j].
struct SymmetricEigen {
    std::vector<double> values;
    SquareMatrix vectors{0};
};

/// Householder tridiagonalization followed by implicit QL with shifts.
/// Throws SolverError if an eigenvalue takes more than 60 QL iterations.
SymmetricEigen eigh_householder_ql(SquareMatrix a);

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// 1e-15 of the total. Throws SolverError after `maxSweeps` sweeps.
SymmetricEigen eigh_jacobi(SquareMatrix a, int maxSweeps = 60);

/// max_j |A x_j - lambda_j x_j| over the first `count` pairs.
double eigen_residual(SquareMatrix const& a, SymmetricEigen const& e, std::size_t count);

} // namespace bandgap

#endif
