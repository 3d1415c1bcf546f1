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

#include "rodfiter/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rodfiter/baseline.hpp"
#include "rodfiter/errors.hpp"

namespace rodfiter {

Mode parse_mode(const std::string& name) {
  if (name == "exact") return Mode::Exact;
  if (name == "truncated") return Mode::Truncated;
  if (name == "baseline") return Mode::Baseline;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Exact:
      return "exact";
    case Mode::Truncated:
      return "truncated";
    case Mode::Baseline:
      return "baseline";
  }
  return "unknown";
}

ConingParams<double> RunSpec::coning() const {
  ConingParams<double> p;
  p.half_angle = alpha_deg * std::numbers::pi / 180.0;
  p.frequency = omega_pi * std::numbers::pi;
  return p;
}

Index RunSpec::total_samples() const {
  return static_cast<Index>(std::llround(duration_s * rate_hz));
}

IterConfig<double> RunSpec::iter_config() const {
  if (mode == Mode::Exact) return IterConfig<double>::exact(interval(), iters);
  return IterConfig<double>::truncated(interval(), truncation, iters);
}

void RunSpec::validate() const {
  coning().validate();
  if (!(rate_hz > 0.0)) throw std::invalid_argument("rate must be positive");
  if (!(duration_s > 0.0)) throw std::invalid_argument("duration must be positive");
  if (samples < 1) throw std::invalid_argument("N must be >= 1");
  if (fit_degree < 0 || fit_degree > samples - 1) {
    throw std::invalid_argument("fit degree must satisfy 0 <= n <= N - 1");
  }
  if (truncation < 0) throw std::invalid_argument("truncation degree must be >= 0");
  if (iters < 1) throw std::invalid_argument("iterations must be >= 1");
  if (upsample < 1) throw std::invalid_argument("upsample must be >= 1");
}

double IncrementLog::start_time(double sample_dt) const {
  return t_end.empty() ? 0.0 : t_end.front() - sample_dt;
}

IncrementLog simulate_increments(const RunSpec& spec) {
  spec.validate();
  const ConingParams<double> params = spec.coning();
  const Index count = spec.total_samples();
  const double dt = spec.sample_dt();
  IncrementLog log;
  log.t_end.resize(static_cast<std::size_t>(count));
  log.increments.resize(3, count);
  for (Index k = 0; k < count; ++k) {
    const double t0 = static_cast<double>(k) * dt;
    const double t1 = static_cast<double>(k + 1) * dt;
    log.t_end[static_cast<std::size_t>(k)] = t1;
    log.increments.col(k) = true_increment(params, t0, t1) + spec.bias * dt;
  }
  return log;
}

std::vector<GyroBatch<double>> split_into_batches(const IncrementLog& log, Index samples,
                                                  double sample_dt) {
  if (samples < 1 || log.size() % samples != 0) {
    throw InputFormatError("increment count " + std::to_string(log.size()) +
                           " is not a multiple of N = " + std::to_string(samples));
  }
  std::vector<GyroBatch<double>> batches;
  batches.reserve(static_cast<std::size_t>(log.size() / samples));
  for (Index start = 0; start < log.size(); start += samples) {
    GyroBatch<double> batch;
    batch.kind = SampleKind::Increment;
    batch.duration = static_cast<double>(samples) * sample_dt;
    batch.samples = log.increments.middleCols(start, samples);
    batches.push_back(std::move(batch));
  }
  return batches;
}

PipelineOutput run_rodfiter(const IncrementLog& log, const RunSpec& spec,
                            const Quaternion<double>& q0, bool keep_history) {
  if (spec.mode == Mode::Baseline) {
    throw std::invalid_argument("run_rodfiter: baseline mode has no reconstruction");
  }
  const double dt = spec.sample_dt();
  const std::vector<GyroBatch<double>> batches = split_into_batches(log, spec.samples, dt);
  const AngularVelocityFit<double> fitter(SampleKind::Increment, spec.samples,
                                          FitConfig{spec.fit_degree});
  IterConfig<double> config = spec.iter_config();
  config.keep_history = keep_history;
  const double t0 = log.start_time(dt);
  const double bias_sup = spec.bias.norm();

  PipelineOutput out;
  out.intervals.reserve(batches.size());
  std::vector<ChebSeries3d> series;
  series.reserve(batches.size());
  for (std::size_t m = 0; m < batches.size(); ++m) {
    IntervalReport report;
    report.t_start = t0 + static_cast<double>(m) * config.duration;
    report.omega = fitter.fit(batches[m]);
    try {
      report.result = reconstruct(report.omega, config);
    } catch (const ConvergenceConditionViolated& e) {
      throw ConvergenceConditionViolated(e.product(), m);
    }
    report.bound = truncation_bound(report.result, bias_sup);
    series.push_back(report.result.final);
    out.intervals.push_back(std::move(report));
  }
  out.track = chain_intervals(series, config.duration, q0, spec.samples, spec.upsample, t0);
  return out;
}

AttitudeTrack<double> run_two_sample(const IncrementLog& log, double sample_dt,
                                     const Quaternion<double>& q0) {
  if (log.size() % 2 != 0) {
    throw InputFormatError("two-sample update needs an even number of increments");
  }
  AttitudeTrack<double> track;
  track.source = TrackSource::Baseline;
  track.timestamps.reserve(static_cast<std::size_t>(log.size() / 2 + 1));
  track.attitudes.reserve(track.timestamps.capacity());
  TwoSampleState<double> state;
  state.attitude = q0.normalized();
  state.update_interval = 2.0 * sample_dt;
  track.push_back(log.start_time(sample_dt), state.attitude);
  for (Index k = 0; k + 1 < log.size(); k += 2) {
    state = two_sample_update(state, Vector3<double>(log.increments.col(k)),
                              Vector3<double>(log.increments.col(k + 1)));
    track.push_back(log.t_end[static_cast<std::size_t>(k + 1)], state.attitude);
  }
  return track;
}

std::vector<double> errors_against_truth(const AttitudeTrack<double>& track,
                                         const ConingParams<double>& params) {
  std::vector<double> errors;
  errors.reserve(track.size());
  for (std::size_t i = 0; i < track.size(); ++i) {
    errors.push_back(
        attitude_error(attitude_true(params, track.timestamps[i]), track.attitudes[i]));
  }
  return errors;
}

std::vector<double> cumulative_bounds(const PipelineOutput& output, double interval) {
  std::vector<double> bounds;
  bounds.reserve(output.track.size());
  if (output.intervals.empty()) return bounds;
  const double t0 = output.intervals.front().t_start;
  double completed = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < output.track.size(); ++i) {
    const double t = output.track.timestamps[i];
    if (i == 0) {
      bounds.push_back(0.0);
      continue;
    }
    // Sample i lies in interval m while t <= end of m (ends belong to m).
    while (m + 1 < output.intervals.size() &&
           t > t0 + static_cast<double>(m + 1) * interval * (1.0 + 1e-12)) {
      completed += output.intervals[m].bound.approximate();
      ++m;
    }
    bounds.push_back(completed + output.intervals[m].bound.approximate());
  }
  return bounds;
}

double time_mode(const IncrementLog& log, const RunSpec& spec, Mode mode, int runs) {
  RunSpec run = spec;
  run.mode = mode;
  const Quaternion<double> q0 = attitude_true(spec.coning(), log.start_time(spec.sample_dt()));
  double sink = 0.0;
  const auto begin = std::chrono::steady_clock::now();
  for (int r = 0; r < runs; ++r) {
    if (mode == Mode::Baseline) {
      sink += run_two_sample(log, spec.sample_dt(), q0).attitudes.back().w();
    } else {
      sink += run_rodfiter(log, run, q0).track.attitudes.back().w();
    }
  }
  const auto end = std::chrono::steady_clock::now();
  if (!std::isfinite(sink)) throw NonFiniteError("benchmark produced non-finite output");
  return std::chrono::duration<double>(end - begin).count() / static_cast<double>(runs);
}

}  // namespace rodfiter
