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

#include <Eigen/Geometry>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rodfiter/chebyshev.hpp"
#include "rodfiter/errors.hpp"

// Hamilton quaternions, scalar first in construction (Eigen convention).
// Body-frame increments compose on the right: q_global = q_prev * q_inc.

namespace rodfiter {

template <typename Scalar>
using Quaternion = Eigen::Quaternion<Scalar>;

/// Unit quaternion (2, g) / sqrt(4 + |g|^2) of a Rodrigues vector.
template <typename Scalar>
Quaternion<Scalar> quat_from_rodrigues(const Vector3<Scalar>& g) {
  const Scalar inv = Scalar(1) / std::sqrt(Scalar(4) + g.squaredNorm());
  return Quaternion<Scalar>(Scalar(2) * inv, g.x() * inv, g.y() * inv, g.z() * inv);
}

/// g = 2 vec(q) / scalar(q).
template <typename Scalar>
Vector3<Scalar> rodrigues_from_quat(const Quaternion<Scalar>& q) {
  if (std::abs(q.w()) <= Scalar(64) * std::numeric_limits<Scalar>::epsilon()) {
    throw SingularRodriguesError("rotation angle reaches pi");
  }
  return Scalar(2) * q.vec() / q.w();
}

/// Hamilton product, renormalized.
template <typename Scalar>
Quaternion<Scalar> quat_compose(const Quaternion<Scalar>& a,
                                const Quaternion<Scalar>& b) {
  return (a * b).normalized();
}

/// 2 |vec(conj(q_true) * q_est)| with the error quaternion taken in the
/// nonnegative-scalar hemisphere.
template <typename Scalar>
Scalar attitude_error(const Quaternion<Scalar>& q_true,
                      const Quaternion<Scalar>& q_est) {
  Quaternion<Scalar> e = q_true.conjugate() * q_est;
  if (e.w() < Scalar(0)) e.coeffs() = -e.coeffs();
  return Scalar(2) * e.vec().norm();
}

enum class TrackSource { Reconstructed, Truth, Baseline };

template <typename Scalar>
struct AttitudeTrack {
  TrackSource source = TrackSource::Reconstructed;
  std::vector<Scalar> timestamps;
  std::vector<Quaternion<Scalar>> attitudes;

  std::size_t size() const { return timestamps.size(); }

  void push_back(Scalar t, const Quaternion<Scalar>& q) {
    if (!timestamps.empty() && !(t > timestamps.back())) {
      throw std::invalid_argument("AttitudeTrack: timestamps must increase");
    }
    timestamps.push_back(t);
    attitudes.push_back(q);
  }
};

/// Chains per-interval incremental Rodrigues series into a global track.
///
/// Interval m covers [t_start + m t_N, t_start + (m + 1) t_N]; within it
/// samples_per_interval * multiplier equally spaced points are emitted
/// (interval end included). The first sample is q0 at t_start.
template <typename Scalar>
AttitudeTrack<Scalar> chain_intervals(const std::vector<ChebSeries3<Scalar>>& per_interval,
                                      Scalar duration, const Quaternion<Scalar>& q0,
                                      Index samples_per_interval, Index multiplier,
                                      Scalar t_start = Scalar(0)) {
  if (samples_per_interval < 1 || multiplier < 1) {
    throw std::invalid_argument("chain_intervals: counts must be >= 1");
  }
  const Index points = samples_per_interval * multiplier;
  AttitudeTrack<Scalar> track;
  track.source = TrackSource::Reconstructed;
  track.timestamps.reserve(per_interval.size() * static_cast<std::size_t>(points) + 1);
  track.attitudes.reserve(track.timestamps.capacity());
  track.push_back(t_start, q0.normalized());

  Quaternion<Scalar> q_start = q0.normalized();
  for (std::size_t m = 0; m < per_interval.size(); ++m) {
    const Scalar t0 = t_start + static_cast<Scalar>(m) * duration;
    Quaternion<Scalar> q_end = q_start;
    for (Index j = 1; j <= points; ++j) {
      const Scalar tau =
          j == points ? Scalar(1)
                      : Scalar(2) * static_cast<Scalar>(j) / static_cast<Scalar>(points) -
                            Scalar(1);
      const Quaternion<Scalar> q =
          quat_compose(q_start, quat_from_rodrigues(per_interval[m](tau)));
      track.push_back(t0 + duration * (tau + Scalar(1)) / Scalar(2), q);
      q_end = q;
    }
    q_start = q_end;
  }
  return track;
}

}  // namespace rodfiter
