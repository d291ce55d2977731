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

#include "cli/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace spotseg::cli
{
namespace
{

std::string trim(const std::string & s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

double to_double(const std::string & key, const std::string & value)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
  }
  return v;
}

int to_int(const std::string & key, const std::string & value)
{
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
  }
  return v;
}

std::vector<std::string> split_list(const std::string & value)
{
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename Fn>
void for_each_entry(std::istream & in, const std::string & origin, Fn && fn)
{
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    fn(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void set_grid_axis(GridSpec & grid, const std::string & axis, const std::string & key, const std::string & value)
{
  const auto items = split_list(value);
  if (axis == "gammas") {
    grid.gammas.clear();
    for (const auto & s : items) grid.gammas.push_back(to_double(key, s));
  } else if (axis == "rhos") {
    grid.rhos.clear();
    for (const auto & s : items) grid.rhos.push_back(to_int(key, s));
  } else if (axis == "alphas") {
    grid.alphas.clear();
    for (const auto & s : items) grid.alphas.push_back(to_double(key, s));
  } else {
    throw ConfigError("unknown grid key '" + key + "'");
  }
}

}  // namespace

InitScheme init_scheme_from_string(const std::string & name)
{
  if (name == "checkerboard") return InitScheme::checkerboard;
  if (name == "centered-circle" || name == "circle") return InitScheme::centered_circle;
  throw ConfigError("unknown init scheme '" + name + "'");
}

RemovalMode removal_mode_from_string(const std::string & name)
{
  if (name == "large") return RemovalMode::large;
  if (name == "small") return RemovalMode::small;
  throw ConfigError("--remove must be 'large' or 'small', got '" + name + "'");
}

std::string to_string(RemovalMode mode) { return mode == RemovalMode::large ? "large" : "small"; }

void Config::set(const std::string & key, const std::string & value)
{
  PipelineParams & p = pipeline;
  if (key == "gamma") p.gamma = to_double(key, value);
  else if (key == "rho") p.iterations = to_int(key, value);
  else if (key == "alpha") p.alpha = to_double(key, value);
  else if (key == "c") p.preprocess.c = to_double(key, value);
  else if (key == "median_kernel") p.preprocess.median_kernel = to_int(key, value);
  else if (key == "mu") p.chanvese.mu = to_double(key, value);
  else if (key == "nu") p.chanvese.nu = to_double(key, value);
  else if (key == "lambda1") p.chanvese.lambda1 = to_double(key, value);
  else if (key == "lambda2") p.chanvese.lambda2 = to_double(key, value);
  else if (key == "dt") p.chanvese.dt = to_double(key, value);
  else if (key == "epsilon") p.chanvese.epsilon = to_double(key, value);
  else if (key == "init") p.init = init_scheme_from_string(value);
  else if (key == "remove") p.removal = removal_mode_from_string(value);
  else if (key == "connectivity") {
    const int c = to_int(key, value);
    if (c != 4 && c != 8) throw ConfigError("connectivity must be 4 or 8");
    p.connectivity = c == 4 ? Connectivity::four : Connectivity::eight;
  } else if (key == "out") out_dir = value;
  else if (key == "workers") workers = to_int(key, value);
  else if (key.rfind("grid.", 0) == 0) {
    if (!grid) grid = default_grid();
    set_grid_axis(*grid, key.substr(5), key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void Config::merge(std::istream & in, const std::string & origin)
{
  for_each_entry(in, origin, [this](const std::string & k, const std::string & v) { set(k, v); });
}

void Config::merge_file(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  merge(in, path.string());
}

void Config::validate() const
{
  if (workers < 1) throw ConfigError("workers must be >= 1");
  try {
    pipeline.validate();
    if (grid) grid->validate(true);
  } catch (const std::invalid_argument & e) {
    throw ConfigError(e.what());
  }
}

GridSpec load_grid_file(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grid file: " + path.string());
  GridSpec grid = default_grid();
  for_each_entry(in, path.string(), [&grid](const std::string & k, const std::string & v) {
    set_grid_axis(grid, k.rfind("grid.", 0) == 0 ? k.substr(5) : k, k, v);
  });
  try {
    grid.validate(true);
  } catch (const std::invalid_argument & e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return grid;
}

}  // namespace spotseg::cli
