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

#include "spotseg/manifest.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace spotseg
{
namespace
{

std::string trim(const std::string & s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_cells(const std::string & line)
{
  const char sep = line.find('\t') != std::string::npos ? '\t' : ',';
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    cells.push_back(trim(cell));
  }
  if (!line.empty() && line.back() == sep) cells.emplace_back();
  return cells;
}

std::filesystem::path resolve(const std::filesystem::path & base, const std::string & p)
{
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

DatasetManifest DatasetManifest::parse(std::istream & in, const std::filesystem::path & base_dir)
{
  DatasetManifest m;
  std::set<std::string> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = split_cells(t);
    if (cells[0] == "image_path") continue;
    if (cells.size() > 3 || cells[0].empty()) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": expected image_path[,gt_path[,id]]");
    }
    DatasetEntry e;
    e.image = resolve(base_dir, cells[0]);
    if (cells.size() > 1 && !cells[1].empty()) e.ground_truth = resolve(base_dir, cells[1]);
    e.id = cells.size() > 2 && !cells[2].empty() ? cells[2] : std::filesystem::path(cells[0]).stem().string();
    if (!ids.insert(e.id).second) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": duplicate id '" + e.id + "'");
    }
    m.entries.push_back(std::move(e));
  }
  return m;
}

DatasetManifest DatasetManifest::load(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ManifestError("cannot open manifest: " + path.string());
  }
  return parse(in, path.parent_path());
}

void DatasetManifest::require_ground_truth() const
{
  for (const auto & e : entries) {
    if (!e.ground_truth) {
      throw ManifestError("manifest entry '" + e.id + "' has no ground truth");
    }
  }
}

void DatasetManifest::write(std::ostream & out) const
{
  out << "image_path,gt_path,id\n";
  for (const auto & e : entries) {
    out << e.image.string() << ',' << (e.ground_truth ? e.ground_truth->string() : "") << ',' << e.id
        << '\n';
  }
}

}  // namespace spotseg
