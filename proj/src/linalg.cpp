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

#include "bandgap/linalg.hpp"

#include "bandgap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace bandgap {

namespace {

// Householder reduction to tridiagonal form (EISPACK tred2 ordering).
// On exit v holds the orthogonal transform, d the diagonal and e the
// subdiagonal in e[1..n-1].
void tridiagonalize(SquareMatrix& v, std::vector<double>& d, std::vector<double>& e)
{
    int const n = static_cast<int>(v.size());
    for (int j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
    }
    for (int i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (int k = 0; k < i; ++k) {
            scale += std::abs(d[k]);
        }
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (int j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (int j = 0; j < i; ++j) {
                e[j] = 0.0;
            }
            for (int j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (int j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            double const hh = f / (h + h);
            for (int j = 0; j < i; ++j) {
                e[j] -= hh * d[j];
            }
            for (int j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (int k = j; k <= i - 1; ++k) {
                    v(k, j) -= (f * e[k] + g * d[k]);
                }
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }
    for (int i = 0; i < n - 1; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        double const h = d[i + 1];
        if (h != 0.0) {
            for (int k = 0; k <= i; ++k) {
                d[k] = v(k, i + 1) / h;
            }
            for (int j = 0; j <= i; ++j) {
                double g = 0.0;
                for (int k = 0; k <= i; ++k) {
                    g += v(k, i + 1) * v(k, j);
                }
                for (int k = 0; k <= i; ++k) {
                    v(k, j) -= g * d[k];
                }
            }
        }
        for (int k = 0; k <= i; ++k) {
            v(k, i + 1) = 0.0;
        }
    }
    for (int j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e), accumulating rotations into v.
void tridiagonal_ql(SquareMatrix& v, std::vector<double>& d, std::vector<double>& e)
{
    int const n = static_cast<int>(v.size());
    for (int i = 1; i < n; ++i) {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    double f = 0.0;
    double tst1 = 0.0;
    double const eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        int m = l;
        while (m < n) {
            if (std::abs(e[m]) <= eps * tst1) {
                break;
            }
            ++m;
        }
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 60) {
                    throw SolverError("eigh_householder_ql: no convergence for eigenvalue " + std::to_string(l));
                }
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                double const dl1 = d[l + 1];
                double h = g - d[l];
                for (int i = l + 2; i < n; ++i) {
                    d[i] -= h;
                }
                f += h;

                p = d[m];
                double c = 1.0;
                double c2 = c;
                double c3 = c;
                double const el1 = e[l + 1];
                double s = 0.0;
                double s2 = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (int k = 0; k < n; ++k) {
                        h = v(k, i + 1);
                        v(k, i + 1) = s * v(k, i) + c * h;
                        v(k, i) = c * v(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

void sort_ascending(std::vector<double>& d, SquareMatrix& v)
{
    std::size_t const n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t k = i;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (d[j] < d[k]) {
                k = j;
            }
        }
        if (k != i) {
            std::swap(d[i], d[k]);
            for (std::size_t r = 0; r < n; ++r) {
                std::swap(v(r, i), v(r, k));
            }
        }
    }
}

} // namespace

SymmetricEigen eigh_householder_ql(SquareMatrix a)
{
    std::size_t const n = a.size();
    SymmetricEigen out;
    if (n == 0) {
        return out;
    }
    std::vector<double> d(n);
    std::vector<double> e(n);
    tridiagonalize(a, d, e);
    tridiagonal_ql(a, d, e);
    sort_ascending(d, a);
    out.values = std::move(d);
    out.vectors = std::move(a);
    return out;
}

SymmetricEigen eigh_jacobi(SquareMatrix a, int maxSweeps)
{
    std::size_t const n = a.size();
    SquareMatrix v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v(i, i) = 1.0;
    }
    auto offNorm2 = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                s += 2.0 * a(i, j) * a(i, j);
            }
        }
        return s;
    };
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            total += a(i, j) * a(i, j);
        }
    }
    double const tol = 1e-30 * total;
    int sweep = 0;
    for (; sweep < maxSweeps && offNorm2() > tol; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double const apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                double const theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double const t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double const c = 1.0 / std::sqrt(t * t + 1.0);
                double const s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double const akp = a(k, p);
                    double const akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double const apk = a(p, k);
                    double const aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double const vkp = v(k, p);
                    double const vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (offNorm2() > tol) {
        throw SolverError("eigh_jacobi: off-diagonal norm did not converge in " + std::to_string(maxSweeps) +
                          " sweeps");
    }
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a(i, i);
    }
    sort_ascending(d, v);
    SymmetricEigen out;
    out.values = std::move(d);
    out.vectors = std::move(v);
    return out;
}

double eigen_residual(SquareMatrix const& a, SymmetricEigen const& e, std::size_t count)
{
    std::size_t const n = a.size();
    double worst = 0.0;
    for (std::size_t j = 0; j < std::min(count, n); ++j) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ax = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                ax += a(i, k) * e.vectors(k, j);
            }
            double const r = ax - e.values[j] * e.vectors(i, j);
            r2 += r * r;
        }
        worst = std::max(worst, std::sqrt(r2));
    }
    return worst;
}

} // namespace bandgap
