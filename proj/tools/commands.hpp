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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rodfiter/pipeline.hpp"

namespace rodfiter::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConvergenceViolation = 2,
  kInputFormat = 3,
};

void cmd_simulate(const RunSpec& spec, const std::string& out_path);

struct ReconstructSummary {
  std::size_t rows = 0;
  double max_error = 0.0;
  double mean_error = 0.0;
};

/// Writes `t,eps_att,bound` rows to out_path and a text summary to `log`.
/// When coeffs_path is non-empty, also writes the first interval's fitted
/// angular velocity and per-iteration Rodrigues coefficients there.
ReconstructSummary cmd_reconstruct(const RunSpec& spec, const std::string& in_path,
                                   const std::string& out_path, std::ostream& log,
                                   const std::string& coeffs_path = "");

struct BenchRow {
  Mode mode = Mode::Truncated;
  double mean_seconds = 0.0;
  int runs = 0;
  std::uint64_t weighted_terms = 0;  // per 2-s workload, zero for the baseline
};

std::vector<BenchRow> cmd_bench(const RunSpec& spec, int runs, const std::string& out_path,
                                std::ostream& log);

/// Full command line entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace rodfiter::cli
