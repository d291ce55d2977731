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

#ifndef SPOTSEG_CLI_COMMANDS_HPP_
#define SPOTSEG_CLI_COMMANDS_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cli/config.hpp"
#include "spotseg/manifest.hpp"
#include "spotseg/synth.hpp"

namespace spotseg::cli
{

enum ExitCode : int { kSuccess = 0, kInputError = 1, kNumericalFailure = 2 };

/// Runs a command body, mapping exceptions to exit codes and printing the
/// diagnostic to `err`.
int guarded(std::ostream & err, const std::function<int()> & body);

/// Segments every image; writes <out>/<id>.png, <out>/segment.log and, on
/// failures, <out>/failures.txt. Processing continues past failed inputs.
int cmd_segment(const DatasetManifest & inputs, const Config & config, std::ostream & err);

/// Writes <out>/scores.csv and <out>/optimization.json. An existing
/// scores.csv is reused for images whose table is complete.
int cmd_optimize(
  const DatasetManifest & manifest, const Config & config, std::ostream & err,
  const std::optional<std::filesystem::path> & grid_source = std::nullopt);

struct EvaluateOptions
{
  /// Use <seg_dir>/<id>.png instead of running the pipeline.
  std::optional<std::filesystem::path> seg_dir;
};

/// Writes <out>/metrics.csv, <out>/summary.json, <out>/masks/<id>.png and
/// <out>/overlays/<id>.png.
int cmd_evaluate(
  const DatasetManifest & manifest, const Config & config, std::ostream & err,
  const EvaluateOptions & options = {});

int cmd_compare(
  const std::filesystem::path & gt_path, const std::filesystem::path & seg_path,
  const std::filesystem::path & out_path, std::ostream & err);

struct SynthOptions
{
  SceneSpec scene{};
  int count = 1;
  /// Cycle ideal / normal / hard-exposed instead of using scene.lighting.
  bool mixed_lighting = false;
};

/// Writes <id>_image.png, <id>_mask.png, <id>.json and manifest.csv, one
/// scene per seed starting at scene.seed.
int cmd_synth(const SynthOptions & options, const std::filesystem::path & out_dir, std::ostream & err);

/// Reads the selected triple from an optimization.json into `config`.
void apply_optimization_json(const std::filesystem::path & path, Config & config);

}  // namespace spotseg::cli

#endif  // SPOTSEG_CLI_COMMANDS_HPP_
