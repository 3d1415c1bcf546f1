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

#include "rodfiter/attitude.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rodfiter/coning.hpp"
#include "rodfiter/iteration.hpp"

namespace rodfiter {
namespace {

using Quat = Quaternion<double>;

void expect_quat_near(const Quat& a, const Quat& b, double tol) {
  EXPECT_LE((a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff(), tol)
      << a.coeffs().transpose() << " vs " << b.coeffs().transpose();
}

TEST(QuatFromRodrigues, Examples) {
  expect_quat_near(quat_from_rodrigues(Eigen::Vector3d::Zero().eval()), Quat::Identity(), 0.0);
  const double h = std::sqrt(2.0) / 2;
  expect_quat_near(quat_from_rodrigues(Eigen::Vector3d(2, 0, 0)), Quat(h, h, 0, 0), 1e-15);
}

TEST(QuatFromRodrigues, ConingStartIsTenDegreesAboutY) {
  const Eigen::Vector3d g = rodrigues_true(ConingParams<double>{}, 0.0);
  const Eigen::AngleAxisd aa(quat_from_rodrigues(g));
  EXPECT_NEAR(aa.angle(), 10.0 * std::numbers::pi / 180.0, 1e-15);
  EXPECT_NEAR(aa.axis().y(), 1.0, 1e-15);
}

TEST(QuatFromRodrigues, RoundTrip) {
  std::mt19937 rng(67);
  std::uniform_real_distribution<double> u(-0.577, 0.577);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Vector3d g(u(rng), u(rng), u(rng));
    const Quat q = quat_from_rodrigues(g);
    EXPECT_NEAR(q.norm(), 1.0, 1e-15);
    EXPECT_LT((rodrigues_from_quat(q) - g).norm(), 1e-12);
  }
}

TEST(RodriguesFromQuat, HalfTurnIsSingular) {
  EXPECT_THROW(rodrigues_from_quat(Quat(0, 1, 0, 0)), SingularRodriguesError);
}

TEST(QuatCompose, Examples) {
  std::mt19937 rng(71);
  const Quat q = testing::random_rotation(rng);
  expect_quat_near(quat_compose(Quat::Identity(), q), q, 1e-15);
  expect_quat_near(quat_compose(q, q.conjugate()), Quat::Identity(), 1e-15);
  const double h = std::sqrt(2.0) / 2;
  expect_quat_near(quat_compose(Quat(h, h, 0, 0), Quat(h, h, 0, 0)), Quat(0, 1, 0, 0), 1e-15);
}

TEST(QuatCompose, StaysUnit) {
  std::mt19937 rng(73);
  Quat q = Quat::Identity();
  for (int k = 0; k < 10000; ++k) q = quat_compose(q, testing::random_rotation(rng));
  EXPECT_NEAR(q.norm(), 1.0, 1e-12);
}

TEST(AttitudeError, Examples) {
  std::mt19937 rng(79);
  const Quat q = testing::random_rotation(rng);
  EXPECT_EQ(attitude_error(q, q), 0.0);
  const double theta = 1e-4;
  const Quat rz(Eigen::AngleAxisd(theta, Eigen::Vector3d::UnitZ()));
  EXPECT_NEAR(attitude_error(Quat::Identity(), rz), 2 * std::sin(theta / 2), 1e-12);
  EXPECT_NEAR(attitude_error(Quat::Identity(), rz), 1.0e-4, 1e-12);
  const Quat neg(-q.w(), -q.x(), -q.y(), -q.z());
  EXPECT_NEAR(attitude_error(q, neg), 0.0, 1e-15);
}

TEST(AttitudeError, SymmetricAndLeftInvariant) {
  std::mt19937 rng(83);
  for (int trial = 0; trial < 200; ++trial) {
    const Quat a = testing::random_rotation(rng);
    const Quat b = testing::random_rotation(rng);
    const Quat c = testing::random_rotation(rng);
    EXPECT_NEAR(attitude_error(a, b), attitude_error(b, a), 1e-12);
    EXPECT_NEAR(attitude_error(quat_compose(c, a), quat_compose(c, b)), attitude_error(a, b),
                1e-12);
  }
}

TEST(AttitudeTrack, RejectsNonIncreasingTime) {
  AttitudeTrack<double> track;
  track.push_back(0.0, Quat::Identity());
  EXPECT_THROW(track.push_back(0.0, Quat::Identity()), std::invalid_argument);
}

TEST(ChainIntervals, ZeroRateIsConstant) {
  std::mt19937 rng(89);
  const Quat q0 = testing::random_rotation(rng);
  const auto track = chain_intervals<double>({ChebSeries3d::Zero(8)}, 0.08, q0, 8, 10);
  ASSERT_EQ(track.size(), 81u);
  EXPECT_NEAR(track.timestamps.back(), 0.08, 1e-17);
  for (const Quat& q : track.attitudes) expect_quat_near(q, q0, 1e-15);
}

TEST(ChainIntervals, SingleAxisTwoIntervals) {
  const double w = 0.1;
  const double t_n = 0.08;
  const ChebSeries3d omega = ChebSeries3d::Constant(Eigen::Vector3d(0, 0, w));
  const ChebSeries3d g = reconstruct(omega, IterConfig<double>::exact(t_n, 7)).final;
  const auto track = chain_intervals<double>({g, g}, t_n, Quat::Identity(), 8, 10);
  const Quat expected(Eigen::AngleAxisd(2 * w * t_n, Eigen::Vector3d::UnitZ()));
  EXPECT_LT(attitude_error(expected, track.attitudes.back()), 1e-12);
  for (std::size_t i = 0; i < track.size(); ++i) {
    const Quat qi(Eigen::AngleAxisd(w * track.timestamps[i], Eigen::Vector3d::UnitZ()));
    EXPECT_LT(attitude_error(qi, track.attitudes[i]), 1e-12);
  }
}

TEST(ChainIntervals, Associative) {
  std::mt19937 rng(97);
  std::vector<ChebSeries3d> series;
  for (int k = 0; k < 3; ++k) series.emplace_back(testing::random_coeffs(rng, 4, 0.05));
  const Quat q0 = testing::random_rotation(rng);
  const auto all = chain_intervals(series, 0.08, q0, 2, 1);
  const auto first = chain_intervals<double>({series[0]}, 0.08, q0, 2, 1);
  const auto rest = chain_intervals<double>({series[1], series[2]}, 0.08,
                                            first.attitudes.back(), 2, 1, 0.08);
  EXPECT_LT(attitude_error(all.attitudes.back(), rest.attitudes.back()), 1e-12);
  const auto head = chain_intervals<double>({series[0], series[1]}, 0.08, q0, 2, 1);
  const auto tail = chain_intervals<double>({series[2]}, 0.08, head.attitudes.back(), 2, 1, 0.16);
  EXPECT_LT(attitude_error(all.attitudes.back(), tail.attitudes.back()), 1e-12);
}

TEST(ChainIntervals, ConingTrackFollowsTruth) {
  const ConingParams<double> p;
  std::vector<ChebSeries3d> series;
  for (int m = 0; m < 25; ++m) {
    const GyroBatch<double> b = synthesize_batch(p, ErrorModel<double>{}, 0.08 * m, 0.08, 8,
                                                 SampleKind::Increment);
    series.push_back(
        reconstruct(fit_angular_velocity(b, FitConfig{7}),
                    IterConfig<double>::truncated(0.08, 8, 7)).final);
  }
  const auto track = chain_intervals(series, 0.08, attitude_true(p, 0.0), 8, 10);
  ASSERT_EQ(track.size(), 2001u);
  EXPECT_NEAR(track.timestamps.back(), 2.0, 1e-14);
  double worst = 0.0;
  for (std::size_t i = 0; i < track.size(); ++i) {
    worst = std::max(worst, attitude_error(attitude_true(p, track.timestamps[i]),
                                           track.attitudes[i]));
  }
  EXPECT_LT(worst, 1e-10);
}

}  // namespace
}  // namespace rodfiter
