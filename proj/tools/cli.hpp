// Copyright 2025 The circpack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace circpack::cli {

/// Runs the circpack command line on `args` (without the program name).
/// Returns the process exit code. Output goes to `out`, diagnostics to
/// `err`, so tests can drive the commands in-process.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace circpack::cli
