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

#ifndef MERITSCAN_CONFIG_HPP
#define MERITSCAN_CONFIG_HPP

#include <filesystem>
#include <map>
#include <string>

namespace meritscan::cli {

// Flat `key=value` file; '#' starts a comment, blank lines are skipped.
// Keys mirror the long option names of the subcommand they configure.
// Command-line flags take precedence over file values.
std::map<std::string, std::string> load_config_file(const std::filesystem::path& file);

}  // namespace meritscan::cli

#endif  // MERITSCAN_CONFIG_HPP
