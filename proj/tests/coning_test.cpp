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

#include "rodfiter/coning.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rodfiter/iteration.hpp"

namespace rodfiter {
namespace {

const ConingParams<double> kParams;

TEST(OmegaTrue, AtTimeZero) {
  // Values evaluated independently (Python, math module).
  const Eigen::Vector3d w = omega_true(kParams, 0.0);
  EXPECT_NEAR(w.x(), -0.035318610130992925, 1e-15);
  EXPECT_EQ(w.y(), 0.0);
  EXPECT_NEAR(w.z(), 0.40369356105808585, 1e-15);
}

TEST(OmegaTrue, ConstantMagnitude) {
  const double expected = 2 * kParams.frequency * std::sin(kParams.half_angle / 2);
  EXPECT_NEAR(expected, 0.4052356048786231, 1e-15);
  for (int k = 0; k < 200; ++k) {
    EXPECT_NEAR(omega_true(kParams, 0.013 * k).norm(), expected, 1e-15);
  }
}

TEST(OmegaTrue, ZeroHalfAngle) {
  ConingParams<double> p;
  p.half_angle = 0.0;
  EXPECT_EQ(omega_true(p, 0.3).norm(), 0.0);
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(RodriguesTrue, AtTimeZero) {
  const Eigen::Vector3d g = rodrigues_true(kParams, 0.0);
  EXPECT_EQ(g.x(), 0.0);
  EXPECT_NEAR(g.y(), 0.17497732705184801, 1e-15);
  EXPECT_NEAR(g.z(), 0.0, 1e-18);
}

TEST(RodriguesTrue, ConstantMagnitude) {
  const double mag = rodrigues_true(kParams, 0.0).norm();
  for (int k = 0; k < 1000; ++k) {
    EXPECT_NEAR(rodrigues_true(kParams, 0.002 * k).norm(), mag, 1e-14);
  }
}

TEST(RodriguesTrue, SatisfiesKinematics) {
  const double h = 1e-6;
  for (double t : {0.0, 0.31, 1.7}) {
    const Eigen::Vector3d g = rodrigues_true(kParams, t);
    const Eigen::Vector3d w = omega_true(kParams, t);
    const Eigen::Vector3d fd =
        (rodrigues_true(kParams, t + h) - rodrigues_true(kParams, t - h)) / (2 * h);
    const Eigen::Vector3d rhs = w + 0.5 * g.cross(w) + 0.25 * g * g.dot(w);
    EXPECT_LT((fd - rhs).norm(), 2e-6) << t;
  }
}

TEST(DeltaRodrigues, ZeroAtStart) {
  EXPECT_EQ(delta_rodrigues_true(kParams, 0.0, 0.0).norm(), 0.0);
  EXPECT_LT(delta_rodrigues_true(kParams, 0.7, 0.7).norm(), 1e-16);
}

TEST(DeltaRodrigues, MatchesQuaternionComposition) {
  for (double t : {0.01, 0.08, 0.5, 1.9}) {
    const Quaternion<double> dq =
        attitude_true(kParams, 0.0).conjugate() * attitude_true(kParams, t);
    const double err = attitude_error(dq, quat_from_rodrigues(delta_rodrigues_true(kParams, t)));
    EXPECT_LT(err, 1e-13) << t;
  }
}

TEST(DeltaRodrigues, SmallTimeMatchesIncrement) {
  const double t = 1e-4;
  const Eigen::Vector3d dg = delta_rodrigues_true(kParams, t);
  const Eigen::Vector3d dtheta = true_increment(kParams, 0.0, t);
  EXPECT_LT((dg - dtheta).norm() / dtheta.norm(), 1e-6);
}

TEST(DeltaRodrigues, ConsistentUnderComposition) {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    // q(a) * dq(a -> b) = q(b), and the closed form from 0 chains with it.
    const Quaternion<double> chained =
        quat_compose(quat_compose(attitude_true(kParams, 0.0),
                                  quat_from_rodrigues(delta_rodrigues_true(kParams, a))),
                     quat_from_rodrigues(delta_rodrigues_true(kParams, b, a)));
    EXPECT_LT(attitude_error(attitude_true(kParams, b), chained), 1e-12);
  }
}

TEST(DeltaRodrigues, MatchesRungeKutta) {
  const Eigen::Vector3d rk = testing::integrate_rodrigues_rk4(
      [](double t) { return omega_true(kParams, t); }, 0.4, 0.48, 800);
  EXPECT_LT((delta_rodrigues_true(kParams, 0.48, 0.4) - rk).norm(), 1e-14);
}

TEST(TrueIncrement, Examples) {
  EXPECT_EQ(true_increment(kParams, 0.3, 0.3).norm(), 0.0);
  const double period = 2 * std::numbers::pi / kParams.frequency;
  const Eigen::Vector3d full = true_increment(kParams, 0.0, period);
  const double s = std::sin(kParams.half_angle / 2);
  EXPECT_NEAR(full.x(), -2 * kParams.frequency * s * s * period, 1e-15);
  EXPECT_NEAR(full.y(), 0.0, 1e-15);
  EXPECT_NEAR(full.z(), 0.0, 1e-15);
}

TEST(TrueIncrement, MatchesQuadrature) {
  const Eigen::Vector3d inc = true_increment(kParams, 0.013, 0.047);
  for (int a = 0; a < 3; ++a) {
    const double oracle = testing::quadrature(
        [a](double t) { return omega_true(kParams, t)(a); }, 0.013, 0.047);
    EXPECT_NEAR(inc(a), oracle, 1e-13);
  }
}

TEST(SynthesizeBatch, IncrementsTelescope) {
  for (double t0 : {0.0, 0.08, 1.04}) {
    const GyroBatch<double> b =
        synthesize_batch(kParams, ErrorModel<double>{}, t0, 0.08, 8, SampleKind::Increment);
    EXPECT_EQ(b.size(), 8);
    EXPECT_EQ(b.duration, 0.08);
    const Eigen::Vector3d whole = true_increment(kParams, t0, t0 + 0.08);
    EXPECT_LT((b.samples.rowwise().sum() - whole).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(SynthesizeBatch, RateBias) {
  ErrorModel<double> errors;
  errors.bias = Eigen::Vector3d(1e-6, 0, 0);
  const GyroBatch<double> clean =
      synthesize_batch(kParams, ErrorModel<double>{}, 0.0, 0.08, 8, SampleKind::Rate);
  const GyroBatch<double> biased = synthesize_batch(kParams, errors, 0.0, 0.08, 8, SampleKind::Rate);
  for (Index k = 0; k < 8; ++k) {
    EXPECT_NEAR(biased.samples(0, k) - clean.samples(0, k), 1e-6, 1e-17);
    EXPECT_EQ(biased.samples(1, k), clean.samples(1, k));
    EXPECT_EQ(biased.samples(2, k), clean.samples(2, k));
    EXPECT_EQ(clean.samples.col(k), omega_true(kParams, 0.01 * (k + 1)));
  }
  EXPECT_THROW(synthesize_batch(kParams, errors, 0.0, 0.08, 0, SampleKind::Rate),
               std::invalid_argument);
}

TEST(SynthesizeBatch, FitErrorShowsRungeShape) {
  const GyroBatch<double> b =
      synthesize_batch(kParams, ErrorModel<double>{}, 0.0, 0.08, 8, SampleKind::Increment);
  const ChebSeries3d fit = fit_angular_velocity(b, FitConfig{7});
  // Error on a 1000 Hz grid: the worst point lies in the outer samples.
  double worst = 0.0;
  double worst_tau = 0.0;
  double middle = 0.0;
  for (int k = 0; k <= 80; ++k) {
    const double tau = -1.0 + 2.0 * k / 80;
    const double e = (fit(tau) - omega_true(kParams, 0.04 * (1 + tau))).norm();
    if (e > worst) {
      worst = e;
      worst_tau = tau;
    }
    if (std::abs(tau) <= 0.5) middle = std::max(middle, e);
  }
  EXPECT_GT(std::abs(worst_tau), 0.75);
  EXPECT_GT(worst, 2 * middle);
  EXPECT_LT(worst * 0.08, 1e-13);
}

TEST(CoefficientOracle, SelfConvergence) {
  const ChebSeries3d coarse = true_coeff_oracle(kParams, 0.0, 0.08, 40, 512);
  const ChebSeries3d fine = true_coeff_oracle(kParams, 0.0, 0.08, 40, 4096);
  EXPECT_LT(max_coefficient_delta(coarse, fine), 1e-13);
}

TEST(CoefficientOracle, HeadMatchesTruncatedIteration) {
  const GyroBatch<double> b =
      synthesize_batch(kParams, ErrorModel<double>{}, 0.0, 0.08, 8, SampleKind::Increment);
  const ChebSeries3d omega = fit_angular_velocity(b, FitConfig{7});
  const ChebSeries3d g =
      reconstruct(omega, IterConfig<double>::truncated(0.08, 8, 7)).final;
  const ChebSeries3d oracle = true_coeff_oracle(kParams, 0.0, 0.08);
  EXPECT_LT(max_coefficient_delta(g, oracle.truncated(8)), 1e-12);
}

TEST(CoefficientOracle, MachineFloorPlateau) {
  const ChebSeries3d oracle = true_coeff_oracle(kParams, 0.0, 0.08);
  const Eigen::VectorXd mag = oracle.coeffs().colwise().norm();
  EXPECT_GT(mag(1), 1e-3);
  for (Index j = 30; j <= 40; ++j) EXPECT_LT(mag(j), 1e-15) << j;
}

TEST(ConingParams, ConvergenceMargin) {
  const double product = 0.08 * 2 * kParams.frequency * std::sin(kParams.half_angle / 2);
  EXPECT_NEAR(product, 0.03242, 1e-5);
  EXPECT_LT(product, 2.0);
}

}  // namespace
}  // namespace rodfiter
