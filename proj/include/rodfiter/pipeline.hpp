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

#include <string>
#include <vector>

#include "rodfiter/attitude.hpp"
#include "rodfiter/coning.hpp"
#include "rodfiter/fitting.hpp"
#include "rodfiter/iteration.hpp"

// Multi-interval driver: splits an angular increment log into update
// intervals, reconstructs each one and chains the results into a global
// attitude track. Double precision only.

namespace rodfiter {

enum class Mode { Exact, Truncated, Baseline };

Mode parse_mode(const std::string& name);
std::string to_string(Mode mode);

/// Run parameters; the defaults are the standard coning benchmark.
struct RunSpec {
  double alpha_deg = 10.0;
  double omega_pi = 0.74;  // Omega in multiples of pi rad/s
  double rate_hz = 100.0;
  double duration_s = 2.0;
  Index samples = 8;        // N
  Index fit_degree = 7;     // n
  Index truncation = 8;     // n_T
  int iters = 7;
  Index upsample = 10;
  Eigen::Vector3d bias = Eigen::Vector3d::Zero();  // rad/s
  Mode mode = Mode::Truncated;

  ConingParams<double> coning() const;
  double sample_dt() const { return 1.0 / rate_hz; }
  double interval() const { return static_cast<double>(samples) / rate_hz; }
  Index total_samples() const;
  IterConfig<double> iter_config() const;
  void validate() const;
};

/// Angular increments, column k ending at t_end[k].
struct IncrementLog {
  std::vector<double> t_end;
  Samples3<double> increments;

  Index size() const { return increments.cols(); }
  double start_time(double sample_dt) const;
};

IncrementLog simulate_increments(const RunSpec& spec);

/// Consecutive N-sample increment batches. Throws InputFormatError when the
/// log length is not a multiple of N.
std::vector<GyroBatch<double>> split_into_batches(const IncrementLog& log, Index samples,
                                                  double sample_dt);

struct IntervalReport {
  double t_start = 0.0;
  ChebSeries3d omega;
  ReconstructionResult<double> result;
  TruncationBound<double> bound;
};

struct PipelineOutput {
  AttitudeTrack<double> track;
  std::vector<IntervalReport> intervals;
};

/// Fit + Picard reconstruction of every interval (spec.mode Exact or
/// Truncated). delta_omega_sup feeds the per-interval error bound. Throws
/// ConvergenceConditionViolated tagged with the interval index.
PipelineOutput run_rodfiter(const IncrementLog& log, const RunSpec& spec,
                            const Quaternion<double>& q0, bool keep_history = false);

/// Two-sample baseline; one attitude per pair of increments.
AttitudeTrack<double> run_two_sample(const IncrementLog& log, double sample_dt,
                                     const Quaternion<double>& q0);

/// attitude_error against the analytic coning attitude at every track sample.
std::vector<double> errors_against_truth(const AttitudeTrack<double>& track,
                                         const ConingParams<double>& params);

/// Accumulated error bound at each track timestamp of a run_rodfiter output.
std::vector<double> cumulative_bounds(const PipelineOutput& output, double interval);

/// Mean wall-clock seconds of one full run of `mode` over `log`.
double time_mode(const IncrementLog& log, const RunSpec& spec, Mode mode, int runs);

}  // namespace rodfiter
