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

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <variant>

#include "rodfiter/chebyshev.hpp"
#include "rodfiter/errors.hpp"

// Angular velocity fit over one update interval.
//
// N samples are taken at t_k = k t_N / N, k = 1..N, mapped to
// tau_k = 2 t_k / t_N - 1. Rate samples are matched pointwise at tau_k;
// increment samples are matched as integrals over [tau_{k-1}, tau_k].

namespace rodfiter {

enum class SampleKind { Rate, Increment };

template <typename Scalar>
using Samples3 = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

/// Gyro samples for one update interval. Rate samples are rad/s, increment
/// samples rad; column k - 1 holds the sample ending at t_k.
template <typename Scalar>
struct GyroBatch {
  SampleKind kind = SampleKind::Increment;
  Samples3<Scalar> samples;
  Scalar duration = Scalar(0);  // t_N, seconds

  Index size() const { return samples.cols(); }

  void validate() const {
    if (samples.cols() < 1) throw std::invalid_argument("GyroBatch: N must be >= 1");
    if (!(duration > Scalar(0))) {
      throw std::invalid_argument("GyroBatch: duration must be positive");
    }
  }
};

struct FitConfig {
  Index degree = 7;  // n, 0 <= n <= N - 1
};

/// Mapped instants tau_0..tau_N of a uniform grid with N samples.
template <typename Scalar>
VectorX<Scalar> sample_nodes(Index samples) {
  VectorX<Scalar> tau(samples + 1);
  for (Index k = 0; k <= samples; ++k) {
    tau(k) = Scalar(2) * static_cast<Scalar>(k) / static_cast<Scalar>(samples) -
             Scalar(1);
  }
  tau(0) = Scalar(-1);
  tau(samples) = Scalar(1);
  return tau;
}

/// A_omega[k][i] = F_i(tau_k) for the given sample instants.
template <typename Derived>
MatrixX<typename Derived::Scalar> build_rate_matrix(
    const Eigen::MatrixBase<Derived>& tau, Index degree) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> a(tau.size(), degree + 1);
  for (Index k = 0; k < tau.size(); ++k) {
    for (Index i = 0; i <= degree; ++i) a(k, i) = eval_basis(i, tau(k));
  }
  return a;
}

/// A_theta[k][i] = integral of F_i over [tau_k, tau_{k+1}], from the
/// N + 1 boundary instants tau_0..tau_N.
template <typename Derived>
MatrixX<typename Derived::Scalar> build_increment_matrix(
    const Eigen::MatrixBase<Derived>& tau, Index degree) {
  using Scalar = typename Derived::Scalar;
  const Index rows = tau.size() - 1;
  MatrixX<Scalar> a(rows, degree + 1);
  for (Index i = 0; i <= degree; ++i) {
    const BasisIntegral<Scalar> g = integrate_basis<Scalar>(i);
    Scalar lower = g(tau(0));
    for (Index k = 0; k < rows; ++k) {
      const Scalar upper = g(tau(k + 1));
      a(k, i) = upper - lower;
      lower = upper;
    }
  }
  return a;
}

/// Factorized fit design for a fixed (kind, N, n). Depends only on the tau
/// grid, so one instance serves every update interval.
template <typename Scalar>
class AngularVelocityFit {
 public:
  AngularVelocityFit(SampleKind kind, Index samples, FitConfig config)
      : kind_(kind), samples_(samples), degree_(config.degree) {
    if (samples < 1) throw std::invalid_argument("fit: N must be >= 1");
    if (degree_ < 0 || degree_ > samples - 1) {
      throw std::invalid_argument("fit: degree must satisfy 0 <= n <= N - 1");
    }
    const VectorX<Scalar> tau = sample_nodes<Scalar>(samples);
    design_ = kind == SampleKind::Rate
                  ? build_rate_matrix(tau.tail(samples), degree_)
                  : build_increment_matrix(tau, degree_);
    factorize();
  }

  /// Uses an arbitrary design matrix, e.g. one built on a custom tau grid.
  AngularVelocityFit(SampleKind kind, MatrixX<Scalar> design)
      : kind_(kind),
        samples_(design.rows()),
        degree_(design.cols() - 1),
        design_(std::move(design)) {
    if (degree_ < 0 || degree_ > samples_ - 1) {
      throw std::invalid_argument("fit: design must have rows >= cols >= 1");
    }
    factorize();
  }

  SampleKind kind() const { return kind_; }
  Index samples() const { return samples_; }
  Index degree() const { return degree_; }
  const MatrixX<Scalar>& design() const { return design_; }

  /// Coefficients c_0..c_n in rad/s. Exact solve for n = N - 1, least
  /// squares otherwise.
  ChebSeries3<Scalar> fit(const GyroBatch<Scalar>& batch) const {
    batch.validate();
    if (batch.kind != kind_ || batch.size() != samples_) {
      throw std::invalid_argument("fit: batch does not match the fit design");
    }
    MatrixX<Scalar> rhs = batch.samples.transpose();
    if (kind_ == SampleKind::Increment) rhs *= Scalar(2) / batch.duration;
    MatrixX<Scalar> solution;
    if (square()) {
      solution = std::get<Eigen::PartialPivLU<MatrixX<Scalar>>>(solver_).solve(rhs);
    } else {
      solution = std::get<Eigen::ColPivHouseholderQR<MatrixX<Scalar>>>(solver_).solve(rhs);
    }
    return ChebSeries3<Scalar>(Coeffs3<Scalar>(solution.transpose()));
  }

 private:
  bool square() const { return samples_ == degree_ + 1; }

  void factorize() {
    // Reciprocal condition below this is treated as rank deficiency.
    const Scalar threshold =
        Scalar(64) * std::numeric_limits<Scalar>::epsilon();
    if (square()) {
      Eigen::PartialPivLU<MatrixX<Scalar>> lu(design_);
      if (!(lu.rcond() > threshold)) {
        throw SingularSystemError("fit: design matrix is singular");
      }
      solver_ = std::move(lu);
    } else {
      Eigen::ColPivHouseholderQR<MatrixX<Scalar>> qr(design_);
      qr.setThreshold(threshold);
      if (qr.rank() < design_.cols()) {
        throw SingularSystemError("fit: design matrix is rank deficient");
      }
      solver_ = std::move(qr);
    }
  }

  SampleKind kind_;
  Index samples_;
  Index degree_;
  MatrixX<Scalar> design_;
  std::variant<Eigen::PartialPivLU<MatrixX<Scalar>>,
               Eigen::ColPivHouseholderQR<MatrixX<Scalar>>>
      solver_;
};

template <typename Scalar>
ChebSeries3<Scalar> fit_angular_velocity(const GyroBatch<Scalar>& batch,
                                         FitConfig config) {
  batch.validate();
  return AngularVelocityFit<Scalar>(batch.kind, batch.size(), config).fit(batch);
}

}  // namespace rodfiter
