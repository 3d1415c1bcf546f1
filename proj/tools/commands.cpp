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

#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <ostream>

#include "rodfiter/csv.hpp"
#include "rodfiter/errors.hpp"

namespace rodfiter::cli {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  return file;
}

void write_coefficients(const std::string& path, const IntervalReport& first) {
  std::ofstream file = open_output(path);
  // iteration 0 holds the fitted angular velocity (rad/s); 1.. the iterates.
  file << "iteration,degree,x,y,z\n";
  auto rows = [&](int iteration, const ChebSeries3d& s) {
    for (Index i = 0; i <= s.degree(); ++i) {
      file << iteration << ',' << i;
      for (Index a = 0; a < 3; ++a) file << ',' << format_double(s.coeffs()(a, i));
      file << '\n';
    }
  };
  rows(0, first.omega);
  for (std::size_t l = 0; l < first.result.history.size(); ++l) {
    rows(static_cast<int>(l + 1), first.result.history[l]);
  }
}

}  // namespace

void cmd_simulate(const RunSpec& spec, const std::string& out_path) {
  write_increments(out_path, simulate_increments(spec));
}

ReconstructSummary cmd_reconstruct(const RunSpec& spec, const std::string& in_path,
                                   const std::string& out_path, std::ostream& log,
                                   const std::string& coeffs_path) {
  spec.validate();
  const IncrementLog input = read_increments(in_path);
  const ConingParams<double> params = spec.coning();
  const double t0 = input.start_time(spec.sample_dt());
  const Quaternion<double> q0 = attitude_true(params, t0);

  AttitudeTrack<double> track;
  std::vector<double> bounds;
  PipelineOutput output;
  if (spec.mode == Mode::Baseline) {
    track = run_two_sample(input, spec.sample_dt(), q0);
    bounds.assign(track.size(), std::numeric_limits<double>::quiet_NaN());
  } else {
    output = run_rodfiter(input, spec, q0, !coeffs_path.empty());
    track = output.track;
    bounds = cumulative_bounds(output, spec.interval());
  }
  const std::vector<double> errors = errors_against_truth(track, params);

  std::ofstream file = open_output(out_path);
  file << "t,eps_att,bound\n";
  ReconstructSummary summary;
  summary.rows = track.size();
  double total = 0.0;
  for (std::size_t i = 0; i < track.size(); ++i) {
    file << format_double(track.timestamps[i]) << ',' << format_double(errors[i]) << ','
         << format_double(bounds[i]) << '\n';
    summary.max_error = std::max(summary.max_error, errors[i]);
    total += errors[i];
  }
  summary.mean_error = track.size() ? total / static_cast<double>(track.size()) : 0.0;

  log << "mode=" << to_string(spec.mode) << " rows=" << summary.rows
      << " max_eps_att=" << format_double(summary.max_error)
      << " mean_eps_att=" << format_double(summary.mean_error) << '\n';
  if (!output.intervals.empty()) {
    const IntervalReport& first = output.intervals.front();
    log << "intervals=" << output.intervals.size()
        << " convergence_margin=" << format_double(first.result.convergence_margin) << '\n';
    log << "first interval iterations (iteration,full_degree,degree,neglected,max_delta):\n";
    for (std::size_t l = 0; l < first.result.iterations.size(); ++l) {
      const auto& r = first.result.iterations[l];
      log << "  " << l + 1 << ',' << r.full_degree << ',' << r.degree << ','
          << format_double(r.neglected) << ',' << format_double(r.max_delta) << '\n';
    }
    if (!coeffs_path.empty()) write_coefficients(coeffs_path, first);
  }
  return summary;
}

std::vector<BenchRow> cmd_bench(const RunSpec& spec, int runs, const std::string& out_path,
                                std::ostream& log) {
  spec.validate();
  if (runs < 1) throw std::invalid_argument("bench: runs must be >= 1");
  const IncrementLog input = simulate_increments(spec);
  const std::size_t intervals = static_cast<std::size_t>(input.size() / spec.samples);

  std::vector<BenchRow> rows;
  for (Mode mode : {Mode::Exact, Mode::Truncated, Mode::Baseline}) {
    BenchRow row;
    row.mode = mode;
    row.runs = runs;
    row.mean_seconds = time_mode(input, spec, mode, runs);
    if (mode != Mode::Baseline) {
      std::optional<Index> nt;
      if (mode == Mode::Truncated) nt = spec.truncation;
      row.weighted_terms =
          weighted_term_count(spec.fit_degree, nt, spec.iters).total_terms * intervals;
    }
    rows.push_back(row);
  }

  std::ofstream file = open_output(out_path);
  file << "mode,mean_seconds,runs,weighted_terms\n";
  for (const BenchRow& r : rows) {
    file << to_string(r.mode) << ',' << format_double(r.mean_seconds) << ',' << r.runs << ','
         << r.weighted_terms << '\n';
  }

  char line[160];
  log << "computation time, " << spec.duration_s << " s of data at " << spec.rate_hz
      << " Hz, mean of " << runs << " runs\n";
  std::snprintf(line, sizeof line, "%-10s %14s %16s\n", "mode", "seconds", "weighted terms");
  log << line;
  for (const BenchRow& r : rows) {
    std::snprintf(line, sizeof line, "%-10s %14.6g %16llu\n", to_string(r.mode).c_str(),
                  r.mean_seconds, static_cast<unsigned long long>(r.weighted_terms));
    log << line;
  }
  std::snprintf(line, sizeof line, "exact/truncated time ratio: %.1f\n",
                rows[0].mean_seconds / rows[1].mean_seconds);
  log << line;
  return rows;
}

namespace {

void add_coning_options(CLI::App& cmd, RunSpec& spec) {
  cmd.add_option("--alpha-deg", spec.alpha_deg, "coning half angle, degrees")->capture_default_str();
  cmd.add_option("--omega-pi", spec.omega_pi, "coning frequency, multiples of pi rad/s")
      ->capture_default_str();
  cmd.add_option("--rate-hz", spec.rate_hz, "gyro sampling rate")->capture_default_str();
}

void add_bias_option(CLI::App& cmd, std::vector<double>& bias) {
  cmd.add_option("--bias", bias, "gyro bias x y z, rad/s")->expected(3);
}

void add_iteration_options(CLI::App& cmd, RunSpec& spec) {
  cmd.add_option("--n-samples", spec.samples, "samples per update interval (N)")
      ->capture_default_str();
  cmd.add_option("--fit-degree", spec.fit_degree, "fit degree (n)")->capture_default_str();
  cmd.add_option("--truncate", spec.truncation, "truncation degree (n_T)")->capture_default_str();
  cmd.add_option("--iters", spec.iters, "Picard iterations")->capture_default_str();
  cmd.add_option("--upsample", spec.upsample, "output points per gyro sample")
      ->capture_default_str();
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Attitude reconstruction by Chebyshev-coefficient Picard iteration"};
  app.require_subcommand(1);

  RunSpec spec;
  std::vector<double> bias;
  std::string out_path;
  std::string in_path;
  std::string coeffs_path;
  std::string mode = "truncated";
  int runs = 50;

  CLI::App* simulate = app.add_subcommand("simulate", "write coning gyro increments as CSV");
  add_coning_options(*simulate, spec);
  simulate->add_option("--duration-s", spec.duration_s, "data length, seconds")
      ->capture_default_str();
  add_bias_option(*simulate, bias);
  simulate->add_option("--out", out_path, "output CSV")->required();

  CLI::App* reconstruct = app.add_subcommand(
      "reconstruct", "reconstruct attitude from increments and compare with coning truth");
  add_coning_options(*reconstruct, spec);
  add_iteration_options(*reconstruct, spec);
  add_bias_option(*reconstruct, bias);
  reconstruct->add_option("--in", in_path, "increment CSV")->required();
  reconstruct->add_option("--out", out_path, "error CSV")->required();
  reconstruct->add_option("--mode", mode, "exact | truncated | baseline")
      ->check(CLI::IsMember({"exact", "truncated", "baseline"}))
      ->capture_default_str();
  reconstruct->add_option("--coeffs-out", coeffs_path,
                          "first-interval fit and iterate coefficients CSV");

  CLI::App* bench = app.add_subcommand("bench", "time exact, truncated and two-sample runs");
  add_coning_options(*bench, spec);
  add_iteration_options(*bench, spec);
  bench->add_option("--duration-s", spec.duration_s, "data length, seconds")
      ->capture_default_str();
  bench->add_option("--runs", runs, "runs to average")->capture_default_str();
  bench->add_option("--out", out_path, "timing CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!bias.empty()) spec.bias = Eigen::Vector3d(bias[0], bias[1], bias[2]);
    spec.mode = parse_mode(mode);
    if (*simulate) {
      cmd_simulate(spec, out_path);
    } else if (*reconstruct) {
      cmd_reconstruct(spec, in_path, out_path, std::cout, coeffs_path);
    } else if (*bench) {
      cmd_bench(spec, runs, out_path, std::cout);
    }
  } catch (const ConvergenceConditionViolated& e) {
    std::cerr << "error: " << e.what() << " (interval " << e.interval() << ")\n";
    return kConvergenceViolation;
  } catch (const InputFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputFormat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace rodfiter::cli
