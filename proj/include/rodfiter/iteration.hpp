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

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rodfiter/chebyshev.hpp"
#include "rodfiter/errors.hpp"

// Coefficient-space Picard iteration of the Rodrigues vector
//
//   g_{l+1}(t) = int_0^t (I + 1/2 [g_l x] + 1/4 g_l g_l^T) omega dt,  g_0 = 0,
//
// with omega and g_l held as Chebyshev series on the mapped interval. Every
// product is expanded with F_j F_k = (F_{j+k} + F_{|j-k|}) / 2 and the
// resulting integrand is integrated term by term through a
// BasisIntegralTable, so g_{l+1} is again a finite Chebyshev series of
// degree 2 m_l + n + 1. Truncated mode keeps degrees 0..n_T after each step.

namespace rodfiter {

template <typename Scalar>
struct IterConfig {
  /// n_T. Empty selects the exact (non-truncated) iteration.
  std::optional<Index> truncation_degree;
  int max_iters = 7;
  /// Stop once the max coefficient change drops below this.
  std::optional<Scalar> stop_tol;
  Scalar duration = Scalar(0);  // t_N, seconds
  /// Record every untruncated iterate in ReconstructionResult::history.
  bool keep_history = false;

  static IterConfig exact(Scalar duration, int iters = 7) {
    IterConfig c;
    c.duration = duration;
    c.max_iters = iters;
    return c;
  }

  static IterConfig truncated(Scalar duration, Index degree, int iters = 7) {
    IterConfig c = exact(duration, iters);
    c.truncation_degree = degree;
    return c;
  }

  bool is_truncated() const { return truncation_degree.has_value(); }

  void validate() const {
    if (max_iters < 1) throw std::invalid_argument("IterConfig: max_iters must be >= 1");
    if (!(duration > Scalar(0))) {
      throw std::invalid_argument("IterConfig: duration must be positive");
    }
    if (truncation_degree && *truncation_degree < 0) {
      throw std::invalid_argument("IterConfig: truncation degree must be >= 0");
    }
  }
};

template <typename Scalar>
struct IterationRecord {
  Index full_degree = 0;  // degree of the untruncated iterate
  Index degree = 0;       // degree retained
  Scalar neglected = Scalar(0);  // |b_{l, n_T + 1}|, zero in exact mode
  Scalar max_delta = Scalar(0);  // max |coefficient change| vs previous iterate
};

template <typename Scalar>
struct ReconstructionResult {
  ChebSeries3<Scalar> final;
  std::vector<IterationRecord<Scalar>> iterations;
  std::vector<ChebSeries3<Scalar>> history;
  std::uint64_t term_count = 0;
  Scalar convergence_margin = Scalar(0);  // t_N sup|omega| / 2
  Scalar duration = Scalar(0);
  bool stopped_early = false;

  bool converged() const {
    return convergence_margin < Scalar(1) && final.all_finite();
  }

  Scalar last_neglected() const {
    return iterations.empty() ? Scalar(0) : iterations.back().neglected;
  }
};

/// Weighted terms of one Picard step on an iterate of the given degree:
/// (n + 1) [1 + (m + 1) + (m + 1)^2] for the identity, cross and outer
/// product sums.
inline std::uint64_t step_term_count(Index omega_degree, Index iterate_degree) {
  const auto n1 = static_cast<std::uint64_t>(omega_degree + 1);
  const auto m1 = static_cast<std::uint64_t>(iterate_degree + 1);
  return n1 * (1 + m1 + m1 * m1);
}

struct TermCount {
  Index degree = 0;                   // m_l after l iterations (capped at n_T)
  std::uint64_t iteration_terms = 0;  // cost of iterating on that iterate
  std::uint64_t total_terms = 0;      // cost of producing g_1..g_l
};

/// Analytic cost model. Exact mode has m_l = (2^l - 1)(n + 1).
inline TermCount weighted_term_count(Index omega_degree,
                                     std::optional<Index> truncation_degree,
                                     int iters) {
  TermCount out;
  Index m = 0;
  for (int l = 0; l < iters; ++l) {
    out.total_terms += step_term_count(omega_degree, m);
    m = 2 * m + omega_degree + 1;
    if (truncation_degree) m = std::min(m, *truncation_degree);
  }
  out.degree = m;
  out.iteration_terms = step_term_count(omega_degree, m);
  return out;
}

namespace detail {

/// Dense Chebyshev coefficients of (I + 1/2 g x + 1/4 g g^T) omega.
template <typename Scalar>
Coeffs3<Scalar> picard_integrand(const ChebSeries3<Scalar>& g,
                                 const ChebSeries3<Scalar>& omega) {
  const Index m = g.degree();
  const Index n = omega.degree();
  const auto& b = g.coeffs();
  const auto& c = omega.coeffs();
  Coeffs3<Scalar> out = Coeffs3<Scalar>::Zero(3, 2 * m + n + 1);
  out.leftCols(n + 1) = c;

  const Scalar quarter(0.25);
  for (Index i = 0; i <= m; ++i) {
    const Vector3<Scalar> bi = b.col(i);
    if (bi.isZero(Scalar(0))) continue;
    for (Index j = 0; j <= n; ++j) {
      const Vector3<Scalar> v = quarter * bi.cross(Vector3<Scalar>(c.col(j)));
      out.col(i + j) += v;
      out.col(i > j ? i - j : j - i) += v;
    }
  }

  // b_i b_j^T c_k = b_i (b_j . c_k); the degree set depends on (i, j) only
  // through i + j and |i - j|, so (i, j) and (j, i) share one pass.
  const MatrixX<Scalar> dots = b.transpose() * c;
  const Scalar sixteenth(1.0 / 16.0);
  for (Index i = 0; i <= m; ++i) {
    for (Index j = i; j <= m; ++j) {
      const Index sum = i + j;
      const Index diff = j - i;
      for (Index k = 0; k <= n; ++k) {
        Vector3<Scalar> v = dots(j, k) * b.col(i);
        if (j != i) v += dots(i, k) * b.col(j);
        v *= sixteenth;
        out.col(sum + k) += v;
        out.col(sum > k ? sum - k : k - sum) += v;
        out.col(diff + k) += v;
        out.col(diff > k ? diff - k : k - diff) += v;
      }
    }
  }
  return out;
}

}  // namespace detail

/// One Picard step. Returns the full series of degree 2m + n + 1, or its
/// head of degree truncate_to.
template <typename Scalar>
ChebSeries3<Scalar> picard_step(const ChebSeries3<Scalar>& g,
                                const ChebSeries3<Scalar>& omega,
                                Scalar duration,
                                const BasisIntegralTable<Scalar>& table,
                                std::optional<Index> truncate_to = std::nullopt) {
  const Coeffs3<Scalar> integrand = detail::picard_integrand(g, omega);
  ChebSeries3<Scalar> full(
      Coeffs3<Scalar>(Scalar(0.5) * duration * table.integrate(integrand)));
  if (truncate_to) return full.truncated(*truncate_to);
  return full;
}

template <typename Scalar>
ChebSeries3<Scalar> picard_step(const ChebSeries3<Scalar>& g,
                                const ChebSeries3<Scalar>& omega,
                                Scalar duration,
                                std::optional<Index> truncate_to = std::nullopt) {
  const BasisIntegralTable<Scalar> table(2 * g.degree() + omega.degree());
  return picard_step(g, omega, duration, table, truncate_to);
}

/// Grid points used for the sup|omega| estimate in the convergence check.
inline constexpr int kSupGridPoints = 128;

template <typename Scalar>
ReconstructionResult<Scalar> reconstruct(const ChebSeries3<Scalar>& omega,
                                         const IterConfig<Scalar>& config) {
  config.validate();
  if (!omega.all_finite()) throw NonFiniteError("reconstruct: non-finite omega");

  const Scalar product = config.duration * sup_norm_on_grid(omega, kSupGridPoints);
  if (!(product < Scalar(2))) {
    throw ConvergenceConditionViolated(static_cast<double>(product));
  }

  const Index n = omega.degree();
  // Widest integrand: the last step in exact mode, or a step on an n_T iterate.
  Index widest_iterate = 0;
  for (Index m = 0, l = 0; l < config.max_iters; ++l) {
    widest_iterate = std::max(widest_iterate, m);
    m = 2 * m + n + 1;
    if (config.truncation_degree) m = std::min(m, *config.truncation_degree);
  }
  const BasisIntegralTable<Scalar> table(2 * widest_iterate + n + 2);

  ReconstructionResult<Scalar> result;
  result.convergence_margin = product / Scalar(2);
  result.duration = config.duration;
  result.iterations.reserve(static_cast<std::size_t>(config.max_iters));

  ChebSeries3<Scalar> g;
  for (int l = 0; l < config.max_iters; ++l) {
    result.term_count += step_term_count(n, g.degree());
    ChebSeries3<Scalar> full = picard_step(g, omega, config.duration, table);
    if (!full.all_finite()) {
      throw NonFiniteError("reconstruct: non-finite coefficient at iteration " +
                           std::to_string(l + 1));
    }

    IterationRecord<Scalar> record;
    record.full_degree = full.degree();
    ChebSeries3<Scalar> next = full;
    if (config.truncation_degree) {
      const Index nt = *config.truncation_degree;
      record.neglected = full.coefficient_or_zero(nt + 1).norm();
      if (full.degree() > nt) next = full.truncated(nt);
    }
    record.degree = next.degree();
    record.max_delta = max_coefficient_delta(next, g);
    result.iterations.push_back(record);
    if (config.keep_history) result.history.push_back(std::move(full));

    g = std::move(next);
    if (config.stop_tol && record.max_delta < *config.stop_tol) {
      result.stopped_early = true;
      break;
    }
  }
  result.final = std::move(g);
  return result;
}

template <typename Scalar>
struct TruncationBound {
  Scalar velocity_term = Scalar(0);        // t_N sup|d omega| / (1 - t_N sup|omega| / 2)
  Scalar velocity_term_approx = Scalar(0); // t_N sup|d omega|
  Scalar truncation_term = Scalar(0);      // |b_{l+1, n_T + 1}|

  Scalar tight() const { return velocity_term + truncation_term; }
  Scalar approximate() const { return velocity_term_approx + truncation_term; }
};

/// Error bound on sup|delta g| of a reconstruction for an angular velocity
/// error bounded by delta_omega_sup (rad/s).
template <typename Scalar>
TruncationBound<Scalar> truncation_bound(const ReconstructionResult<Scalar>& result,
                                         Scalar delta_omega_sup) {
  TruncationBound<Scalar> out;
  out.velocity_term_approx = result.duration * delta_omega_sup;
  out.velocity_term =
      out.velocity_term_approx / (Scalar(1) - result.convergence_margin);
  out.truncation_term = result.last_neglected();
  return out;
}

}  // namespace rodfiter
