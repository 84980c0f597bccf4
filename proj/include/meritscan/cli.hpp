// Copyright 2026 The meritscan Authors
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

#ifndef MERITSCAN_CLI_HPP
#define MERITSCAN_CLI_HPP

#include <string>
#include <vector>

namespace meritscan::cli {

// Entry point behind main(). Subcommands: ingest, clean, featurize,
// train, indices, report. Returns a process exit status.
int run(int argc, const char* const* argv);

// Same, for callers holding arguments as strings (args[0] = program name).
int run(const std::vector<std::string>& args);

}  // namespace meritscan::cli

#endif  // MERITSCAN_CLI_HPP
