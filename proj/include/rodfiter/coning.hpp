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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rodfiter/attitude.hpp"
#include "rodfiter/chebyshev.hpp"
#include "rodfiter/fitting.hpp"

// Analytic coning motion: the body axis sweeps a cone of half angle alpha at
// rate Omega. Angular velocity, attitude and increments are closed form, so
// gyro samples synthesized here are exact to machine precision.

namespace rodfiter {

template <typename Scalar>
struct ConingParams {
  Scalar half_angle = Scalar(10) * std::numbers::pi_v<Scalar> / Scalar(180);  // alpha
  Scalar frequency = Scalar(0.74) * std::numbers::pi_v<Scalar>;               // Omega

  void validate() const {
    if (!(half_angle > Scalar(0) && half_angle < std::numbers::pi_v<Scalar> / Scalar(2))) {
      throw std::invalid_argument("ConingParams: alpha must be in (0, pi/2)");
    }
    if (!(frequency > Scalar(0))) {
      throw std::invalid_argument("ConingParams: Omega must be positive");
    }
  }
};

template <typename Scalar>
struct ErrorModel {
  Vector3<Scalar> bias = Vector3<Scalar>::Zero();  // rad/s
};

/// Body angular velocity, rad/s.
template <typename Scalar>
Vector3<Scalar> omega_true(const ConingParams<Scalar>& p, Scalar t) {
  const Scalar s = std::sin(p.half_angle / Scalar(2));
  const Scalar sa = std::sin(p.half_angle);
  const Scalar phase = p.frequency * t;
  return p.frequency * Vector3<Scalar>(Scalar(-2) * s * s, -sa * std::sin(phase),
                                       sa * std::cos(phase));
}

/// Absolute Rodrigues vector 2 tan(alpha/2) [0, cos(Omega t), sin(Omega t)].
template <typename Scalar>
Vector3<Scalar> rodrigues_true(const ConingParams<Scalar>& p, Scalar t) {
  const Scalar k = Scalar(2) * std::tan(p.half_angle / Scalar(2));
  const Scalar phase = p.frequency * t;
  return k * Vector3<Scalar>(Scalar(0), std::cos(phase), std::sin(phase));
}

template <typename Scalar>
Quaternion<Scalar> attitude_true(const ConingParams<Scalar>& p, Scalar t) {
  return quat_from_rodrigues(rodrigues_true(p, t));
}

/// Incremental Rodrigues vector over [t_start, t]. Closed form for
/// t_start = 0, quaternion composition otherwise.
template <typename Scalar>
Vector3<Scalar> delta_rodrigues_true(const ConingParams<Scalar>& p, Scalar t,
                                     Scalar t_start = Scalar(0)) {
  if (t_start == Scalar(0)) {
    const Scalar th = std::tan(p.half_angle / Scalar(2));
    const Scalar phase = p.frequency * t;
    const Scalar c = std::cos(phase);
    const Scalar s = std::sin(phase);
    const Scalar denom = Scalar(1) + c * th * th;
    if (std::abs(denom) <= std::numeric_limits<Scalar>::epsilon()) {
      throw SingularRodriguesError("incremental coning rotation reaches pi");
    }
    return Scalar(2) * th / denom * Vector3<Scalar>(-s * th, c - Scalar(1), s);
  }
  const Quaternion<Scalar> dq =
      attitude_true(p, t_start).conjugate() * attitude_true(p, t);
  return rodrigues_from_quat(dq);
}

/// Closed-form integral of omega_true over [t_a, t_b], rad.
template <typename Scalar>
Vector3<Scalar> true_increment(const ConingParams<Scalar>& p, Scalar t_a, Scalar t_b) {
  const Scalar s = std::sin(p.half_angle / Scalar(2));
  const Scalar sa = std::sin(p.half_angle);
  const Scalar wa = p.frequency * t_a;
  const Scalar wb = p.frequency * t_b;
  return Vector3<Scalar>(Scalar(-2) * p.frequency * s * s * (t_b - t_a),
                         sa * (std::cos(wb) - std::cos(wa)),
                         sa * (std::sin(wb) - std::sin(wa)));
}

/// N gyro samples for [t_start, t_start + t_N] with the bias applied.
template <typename Scalar>
GyroBatch<Scalar> synthesize_batch(const ConingParams<Scalar>& p,
                                   const ErrorModel<Scalar>& errors, Scalar t_start,
                                   Scalar duration, Index samples, SampleKind kind) {
  if (samples < 1) throw std::invalid_argument("synthesize_batch: N must be >= 1");
  GyroBatch<Scalar> batch;
  batch.kind = kind;
  batch.duration = duration;
  batch.samples.resize(3, samples);
  const Scalar dt = duration / static_cast<Scalar>(samples);
  auto instant = [&](Index k) {
    return t_start + duration * static_cast<Scalar>(k) / static_cast<Scalar>(samples);
  };
  for (Index k = 1; k <= samples; ++k) {
    if (kind == SampleKind::Rate) {
      batch.samples.col(k - 1) = omega_true(p, instant(k)) + errors.bias;
    } else {
      batch.samples.col(k - 1) =
          true_increment(p, instant(k - 1), instant(k)) + errors.bias * dt;
    }
  }
  return batch;
}

/// Chebyshev coefficients of the true incremental Rodrigues vector over
/// [t_start, t_start + t_N], by cosine sampling.
template <typename Scalar>
ChebSeries3<Scalar> true_coeff_oracle(const ConingParams<Scalar>& p, Scalar t_start,
                                      Scalar duration, Index max_degree = 40,
                                      Index samples = 2048) {
  return coeffs_by_cosine_sampling<Scalar>(
      [&](Scalar tau) {
        const Scalar t = t_start + duration / Scalar(2) * (Scalar(1) + tau);
        return delta_rodrigues_true(p, t, t_start);
      },
      max_degree, samples);
}

}  // namespace rodfiter
