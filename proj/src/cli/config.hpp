// Copyright 2026 The spotseg Authors
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

// Key-value configuration shared by every subcommand.
//
//   # comment
//   gamma = 4.8
//   grid.rhos = 1600, 2100, 2600
//
// Precedence is command-line flag > config file > built-in default.

#ifndef SPOTSEG_CLI_CONFIG_HPP_
#define SPOTSEG_CLI_CONFIG_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "spotseg/optimizer.hpp"
#include "spotseg/pipeline.hpp"

namespace spotseg::cli
{

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Config
{
  PipelineParams pipeline{};
  /// Unset means default_grid().
  std::optional<GridSpec> grid;
  std::filesystem::path out_dir = "out";
  int workers = 1;

  /// Applies one key; throws ConfigError for unknown keys or bad values.
  void set(const std::string & key, const std::string & value);
  /// Reads `key = value` lines from a stream.
  void merge(std::istream & in, const std::string & origin = "config");
  void merge_file(const std::filesystem::path & path);
  void validate() const;
};

/// Reads a grid from a file with keys gammas / rhos / alphas (optionally
/// prefixed with `grid.`).
GridSpec load_grid_file(const std::filesystem::path & path);

InitScheme init_scheme_from_string(const std::string & name);
RemovalMode removal_mode_from_string(const std::string & name);
std::string to_string(RemovalMode mode);

}  // namespace spotseg::cli

#endif  // SPOTSEG_CLI_CONFIG_HPP_
