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

#ifndef SPOTSEG_MANIFEST_HPP_
#define SPOTSEG_MANIFEST_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spotseg
{

class ManifestError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct DatasetEntry
{
  std::filesystem::path image;
  std::optional<std::filesystem::path> ground_truth;
  std::string id;
};

/// One entry per line: `image_path, gt_path, id` (comma or tab separated).
/// gt_path may be empty; id defaults to the image file stem. Blank lines and
/// lines starting with '#' are skipped, as is a header row whose first cell is
/// `image_path`. Relative paths resolve against `base_dir`.
struct DatasetManifest
{
  std::vector<DatasetEntry> entries;

  static DatasetManifest parse(std::istream & in, const std::filesystem::path & base_dir = {});
  static DatasetManifest load(const std::filesystem::path & path);

  /// Throws ManifestError naming the first entry without ground truth.
  void require_ground_truth() const;
  void write(std::ostream & out) const;
};

}  // namespace spotseg

#endif  // SPOTSEG_MANIFEST_HPP_
