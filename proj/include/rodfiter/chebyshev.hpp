// Copyright 2026 The rodfiter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

// Chebyshev polynomials of the first kind on the mapped interval [-1, 1].
//
// A ChebSeries3 holds a 3-vector valued expansion sum_i b_i F_i(tau) as a
// dense 3 x (degree + 1) coefficient block, column i holding degree i.

namespace rodfiter {

using Index = Eigen::Index;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using Coeffs3 = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// F_i(tau) by the three-term recurrence F_{i+1} = 2 tau F_i - F_{i-1}.
template <typename Scalar>
Scalar eval_basis(Index i, Scalar tau) {
  assert(i >= 0);
  assert(tau >= Scalar(-1) - Scalar(1e-12) && tau <= Scalar(1) + Scalar(1e-12));
  if (i == 0) return Scalar(1);
  Scalar prev(1);
  Scalar cur = tau;
  for (Index k = 1; k < i; ++k) {
    const Scalar next = Scalar(2) * tau * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Clenshaw evaluation of sum_i coeffs.col(i) F_i(tau).
template <typename Derived>
Vector3<typename Derived::Scalar> eval_series(
    const Eigen::MatrixBase<Derived>& coeffs, typename Derived::Scalar tau) {
  using Scalar = typename Derived::Scalar;
  const Index degree = coeffs.cols() - 1;
  Vector3<Scalar> b1 = Vector3<Scalar>::Zero();
  Vector3<Scalar> b2 = Vector3<Scalar>::Zero();
  for (Index k = degree; k >= 1; --k) {
    const Vector3<Scalar> b0 = coeffs.col(k) + Scalar(2) * tau * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  if (degree < 0) return Vector3<Scalar>::Zero();
  return coeffs.col(0) + tau * b1 - b2;
}

template <typename Scalar>
class ChebSeries3 {
 public:
  using Vector = Vector3<Scalar>;
  using Matrix = Coeffs3<Scalar>;

  /// The zero series of degree 0.
  ChebSeries3() : coeffs_(Matrix::Zero(3, 1)) {}

  explicit ChebSeries3(Matrix coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.cols() < 1) {
      throw std::invalid_argument("ChebSeries3 needs at least one coefficient");
    }
  }

  static ChebSeries3 Zero(Index degree) {
    return ChebSeries3(Matrix::Zero(3, degree + 1));
  }

  static ChebSeries3 Constant(const Vector& value) {
    return ChebSeries3(Matrix(value));
  }

  Index degree() const { return coeffs_.cols() - 1; }
  const Matrix& coeffs() const { return coeffs_; }
  auto coefficient(Index i) const { return coeffs_.col(i); }

  /// Coefficient of degree i, or zero beyond the stored degree.
  Vector coefficient_or_zero(Index i) const {
    return i <= degree() ? Vector(coeffs_.col(i)) : Vector::Zero();
  }

  Vector operator()(Scalar tau) const { return eval_series(coeffs_, tau); }

  /// Keeps degrees 0..d, zero-padding when d exceeds the current degree.
  ChebSeries3 truncated(Index d) const {
    Matrix out = Matrix::Zero(3, d + 1);
    const Index keep = std::min(d, degree()) + 1;
    out.leftCols(keep) = coeffs_.leftCols(keep);
    return ChebSeries3(std::move(out));
  }

  bool all_finite() const { return coeffs_.allFinite(); }

  friend ChebSeries3 operator+(const ChebSeries3& a, const ChebSeries3& b) {
    const Index d = std::max(a.degree(), b.degree());
    Matrix out = a.truncated(d).coeffs_;
    out.leftCols(b.coeffs_.cols()) += b.coeffs_;
    return ChebSeries3(std::move(out));
  }

  friend ChebSeries3 operator-(const ChebSeries3& a, const ChebSeries3& b) {
    return a + (b * Scalar(-1));
  }

  friend ChebSeries3 operator*(const ChebSeries3& a, Scalar s) {
    return ChebSeries3(Matrix(a.coeffs_ * s));
  }

  friend ChebSeries3 operator*(Scalar s, const ChebSeries3& a) { return a * s; }

 private:
  Matrix coeffs_;
};

using ChebSeries3d = ChebSeries3<double>;

template <typename Scalar>
Vector3<Scalar> eval_series(const ChebSeries3<Scalar>& s, Scalar tau) {
  return s(tau);
}

/// Largest absolute coefficient difference, treating missing degrees as zero.
template <typename Scalar>
Scalar max_coefficient_delta(const ChebSeries3<Scalar>& a,
                             const ChebSeries3<Scalar>& b) {
  return (a - b).coeffs().cwiseAbs().maxCoeff();
}

/// sup_tau |s(tau)| estimated on a uniform grid of `points` nodes.
template <typename Scalar>
Scalar sup_norm_on_grid(const ChebSeries3<Scalar>& s, int points) {
  Scalar sup(0);
  for (int k = 0; k < points; ++k) {
    const Scalar tau = Scalar(-1) + Scalar(2) * Scalar(k) / Scalar(points - 1);
    sup = std::max(sup, s(tau).norm());
  }
  return sup;
}

/// F_j F_k = 1/2 (F_{sum} + F_{diff}).
struct BasisProduct {
  Index sum;
  Index diff;
  static constexpr double weight = 0.5;
};

inline BasisProduct basis_product(Index j, Index k) {
  return {j + k, j > k ? j - k : k - j};
}

/// Chebyshev expansion of G_i(tau) = integral of F_i from -1 to tau.
///
/// Every entry has the shape up * F_{i+1} + down * F_{i-1} + constant * F_0;
/// `down` is zero for i < 2 (the i = 1 lower term is folded into `constant`).
template <typename Scalar>
struct BasisIntegral {
  Index degree;  // i
  Scalar up;
  Scalar down;
  Scalar constant;

  Index result_degree() const { return degree + 1; }

  Scalar operator()(Scalar tau) const {
    Scalar value = up * eval_basis(degree + 1, tau) + constant;
    if (degree >= 2) value += down * eval_basis(degree - 1, tau);
    return value;
  }

  /// Dense coefficient vector of length degree + 2.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dense() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out =
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(degree + 2);
    out(degree + 1) += up;
    if (degree >= 2) out(degree - 1) += down;
    out(0) += constant;
    return out;
  }
};

template <typename Scalar>
BasisIntegral<Scalar> integrate_basis(Index i) {
  assert(i >= 0);
  if (i == 0) return {0, Scalar(1), Scalar(0), Scalar(1)};
  if (i == 1) return {1, Scalar(0.25), Scalar(0), Scalar(-0.25)};
  const Scalar is(static_cast<Scalar>(i));
  const Scalar sign = (i % 2 == 0) ? Scalar(1) : Scalar(-1);
  return {i, Scalar(1) / (Scalar(2) * (is + Scalar(1))),
          Scalar(-1) / (Scalar(2) * (is - Scalar(1))),
          -sign / (is * is - Scalar(1))};
}

/// Integral of F_i over [a, b].
template <typename Scalar>
Scalar integrate_basis_segment(Index i, Scalar a, Scalar b) {
  const BasisIntegral<Scalar> g = integrate_basis<Scalar>(i);
  return g(b) - g(a);
}

/// Precomputed integrate_basis entries for degrees 0..D.
template <typename Scalar>
class BasisIntegralTable {
 public:
  explicit BasisIntegralTable(Index upper_degree) {
    entries_.reserve(static_cast<std::size_t>(upper_degree + 1));
    for (Index i = 0; i <= upper_degree; ++i) {
      entries_.push_back(integrate_basis<Scalar>(i));
    }
  }

  Index upper_degree() const { return static_cast<Index>(entries_.size()) - 1; }

  const BasisIntegral<Scalar>& operator[](Index i) const {
    assert(i >= 0 && i <= upper_degree());
    return entries_[static_cast<std::size_t>(i)];
  }

  /// Antiderivative from -1 of a dense integrand series. The result has one
  /// more degree than the integrand.
  template <typename Derived>
  Coeffs3<Scalar> integrate(const Eigen::MatrixBase<Derived>& integrand) const {
    const Index degree = integrand.cols() - 1;
    if (degree > upper_degree()) {
      throw std::out_of_range("BasisIntegralTable: degree exceeds table");
    }
    Coeffs3<Scalar> out = Coeffs3<Scalar>::Zero(3, degree + 2);
    for (Index i = 0; i <= degree; ++i) {
      const BasisIntegral<Scalar>& g = entries_[static_cast<std::size_t>(i)];
      const auto c = integrand.col(i);
      out.col(i + 1) += g.up * c;
      if (i >= 2) out.col(i - 1) += g.down * c;
      out.col(0) += g.constant * c;
    }
    return out;
  }

 private:
  std::vector<BasisIntegral<Scalar>> entries_;
};

/// Chebyshev coefficients of f on [-1, 1] from P cosine-spaced samples.
template <typename Scalar, typename Function>
ChebSeries3<Scalar> coeffs_by_cosine_sampling(Function&& f, Index max_degree,
                                              Index samples) {
  if (samples < max_degree + 1) {
    throw std::invalid_argument("cosine sampling needs P >= M + 1");
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar p = static_cast<Scalar>(samples);
  std::vector<Vector3<Scalar>> values;
  values.reserve(static_cast<std::size_t>(samples));
  for (Index k = 0; k < samples; ++k) {
    const Scalar theta = pi * (static_cast<Scalar>(k) + Scalar(0.5)) / p;
    values.push_back(f(std::cos(theta)));
  }
  Coeffs3<Scalar> out = Coeffs3<Scalar>::Zero(3, max_degree + 1);
  for (Index j = 0; j <= max_degree; ++j) {
    Vector3<Scalar> acc = Vector3<Scalar>::Zero();
    for (Index k = 0; k < samples; ++k) {
      const Scalar theta = pi * static_cast<Scalar>(j) *
                           (static_cast<Scalar>(k) + Scalar(0.5)) / p;
      acc += std::cos(theta) * values[static_cast<std::size_t>(k)];
    }
    out.col(j) = (j == 0 ? Scalar(1) : Scalar(2)) / p * acc;
  }
  return ChebSeries3<Scalar>(std::move(out));
}

}  // namespace rodfiter
