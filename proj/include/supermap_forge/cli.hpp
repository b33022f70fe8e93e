// Copyright 2026 The supermap-forge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file cli.hpp
 * The supermap-forge command line: verify, realize, check, demo, gen.
 *
 * Exit codes: 0 success, 1 semantic failure (not deterministic, deviation
 * above tolerance, failed demo assertion), 2 input error (usage, I/O, parse,
 * mismatched algebras).
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smf::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kInputError = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 1e-8 unless SUPERMAP_FORGE_TOL holds a positive number.
double default_tolerance();

} // namespace smf::cli
