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

#include <iosfwd>
#include <string>

#include "rodfiter/pipeline.hpp"

namespace rodfiter {

/// "%.17g": round-trips every double exactly.
std::string format_double(double value);

/// Header `t_end,dtheta_x,dtheta_y,dtheta_z`, one row per increment.
void write_increments(std::ostream& out, const IncrementLog& log);
void write_increments(const std::string& path, const IncrementLog& log);

/// Throws InputFormatError on malformed content (message carries the line).
IncrementLog read_increments(std::istream& in);
IncrementLog read_increments(const std::string& path);

}  // namespace rodfiter
