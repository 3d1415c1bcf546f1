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

#include "rodfiter/attitude.hpp"

// Classical two-sample strapdown attitude update: two consecutive angular
// increments give the rotation vector
//
//   phi = dtheta_1 + dtheta_2 + 2/3 dtheta_1 x dtheta_2
//
// which is applied as a body-frame increment.

namespace rodfiter {

/// Exact exponential map (cos(|phi|/2), sin(|phi|/2) phi / |phi|).
template <typename Scalar>
Quaternion<Scalar> quat_from_rotation_vector(const Vector3<Scalar>& phi) {
  const Scalar angle = phi.norm();
  Scalar w;
  Scalar k;  // sin(angle / 2) / angle
  if (angle < Scalar(1e-8)) {
    const Scalar a2 = angle * angle;
    w = Scalar(1) - a2 / Scalar(8);
    k = Scalar(0.5) - a2 / Scalar(48);
  } else {
    w = std::cos(angle / Scalar(2));
    k = std::sin(angle / Scalar(2)) / angle;
  }
  return Quaternion<Scalar>(w, k * phi.x(), k * phi.y(), k * phi.z()).normalized();
}

template <typename Scalar>
struct TwoSampleState {
  Quaternion<Scalar> attitude = Quaternion<Scalar>::Identity();
  Scalar update_interval = Scalar(0);  // 2h, seconds
};

template <typename Scalar>
Vector3<Scalar> two_sample_rotation_vector(const Vector3<Scalar>& dtheta1,
                                           const Vector3<Scalar>& dtheta2) {
  return dtheta1 + dtheta2 + Scalar(2) / Scalar(3) * dtheta1.cross(dtheta2);
}

template <typename Scalar>
TwoSampleState<Scalar> two_sample_update(const TwoSampleState<Scalar>& state,
                                         const Vector3<Scalar>& dtheta1,
                                         const Vector3<Scalar>& dtheta2) {
  TwoSampleState<Scalar> next = state;
  next.attitude = quat_compose(
      state.attitude,
      quat_from_rotation_vector(two_sample_rotation_vector(dtheta1, dtheta2)));
  return next;
}

}  // namespace rodfiter
