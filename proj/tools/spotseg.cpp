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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace
{

using namespace spotseg;
using namespace spotseg::cli;

// Flags shared by the pipeline-running subcommands.
struct CommonFlags
{
  std::string config_path;
  std::string out;
  int workers = 0;
  std::optional<double> gamma;
  std::optional<int> rho;
  std::optional<double> alpha;
  std::string remove;
  std::string params_json;

  void attach(CLI::App * app, bool with_triple)
  {
    app->add_option("--config", config_path, "Key-value config file")->check(CLI::ExistingFile);
    app->add_option("--out", out, "Output directory");
    app->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    app->add_option("--remove", remove, "Area opening removes 'large' (default) or 'small' components")
      ->check(CLI::IsMember({"large", "small"}));
    if (with_triple) {
      app->add_option("--gamma", gamma, "Gamma correction exponent");
      app->add_option("--rho", rho, "Active contour iterations");
      app->add_option("--alpha", alpha, "Area opening fraction");
      app->add_option("--params", params_json, "optimization.json whose selected triple to use")
        ->check(CLI::ExistingFile);
    }
  }

  Config resolve() const
  {
    Config c;
    if (!config_path.empty()) c.merge_file(config_path);
    if (!params_json.empty()) apply_optimization_json(params_json, c);
    if (!out.empty()) c.out_dir = out;
    if (workers > 0) c.workers = workers;
    if (gamma) c.pipeline.gamma = *gamma;
    if (rho) c.pipeline.iterations = *rho;
    if (alpha) c.pipeline.alpha = *alpha;
    if (!remove.empty()) c.pipeline.removal = removal_mode_from_string(remove);
    return c;
  }
};

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"spotseg: automatic spot segmentation for lizard scale images"};
  app.require_subcommand(1);

  CommonFlags seg_flags;
  std::vector<std::string> seg_images;
  std::string seg_manifest;
  auto * seg = app.add_subcommand("segment", "Segment images into spot masks");
  seg_flags.attach(seg, true);
  seg->add_option("images", seg_images, "Input images (PNG or JPEG)");
  seg->add_option("--manifest", seg_manifest, "Dataset manifest (image_path,gt_path,id)");

  CommonFlags opt_flags;
  std::string opt_manifest, grid_file;
  auto * opt = app.add_subcommand("optimize", "Grid-search (gamma, rho, alpha) against ground truth");
  opt_flags.attach(opt, false);
  opt->add_option("--manifest", opt_manifest, "Training manifest")->required();
  opt->add_option("--grid-file", grid_file, "Grid override (gammas/rhos/alphas)")->check(CLI::ExistingFile);

  CommonFlags eval_flags;
  std::string eval_manifest, seg_dir;
  auto * eval = app.add_subcommand("evaluate", "Segment and score a validation set");
  eval_flags.attach(eval, true);
  eval->add_option("--manifest", eval_manifest, "Validation manifest")->required();
  eval->add_option("--seg-dir", seg_dir, "Score precomputed masks <dir>/<id>.png instead of segmenting");

  std::string cmp_gt, cmp_seg, cmp_out;
  auto * cmp = app.add_subcommand("compare", "Render a ground-truth vs segmentation overlay");
  cmp->add_option("gt", cmp_gt, "Ground-truth mask")->required();
  cmp->add_option("seg", cmp_seg, "Segmented mask")->required();
  cmp->add_option("--out", cmp_out, "Output PNG")->required();

  SynthOptions synth_opts;
  std::string synth_out = "synth", lighting = "normal";
  std::uint64_t seed = 1;
  auto * syn = app.add_subcommand("synth", "Generate synthetic scale images with ground truth");
  syn->add_option("--seed", seed, "First seed");
  syn->add_option("--out", synth_out, "Output directory");
  syn->add_option("--count", synth_opts.count, "Number of scenes (consecutive seeds)");
  syn->add_option("--width", synth_opts.scene.width);
  syn->add_option("--height", synth_opts.scene.height);
  syn->add_option("--spots", synth_opts.scene.n_spots);
  syn->add_option("--spot-intensity", synth_opts.scene.spot_intensity);
  syn->add_option("--background-intensity", synth_opts.scene.background_intensity);
  syn->add_option("--noise", synth_opts.scene.noise_sigma);
  syn->add_option("--lighting", lighting, "ideal | normal | hard-exposed | mixed");

  CLI11_PARSE(app, argc, argv);

  std::ostream & err = std::cerr;
  if (seg->parsed()) {
    return guarded(err, [&] {
      DatasetManifest inputs;
      if (!seg_manifest.empty()) inputs = DatasetManifest::load(seg_manifest);
      for (const auto & p : seg_images) {
        inputs.entries.push_back({p, std::nullopt, std::filesystem::path(p).stem().string()});
      }
      return cmd_segment(inputs, seg_flags.resolve(), err);
    });
  }
  if (opt->parsed()) {
    return guarded(err, [&] {
      Config config = opt_flags.resolve();
      std::optional<std::filesystem::path> source;
      if (!grid_file.empty()) {
        config.grid = load_grid_file(grid_file);
        source = grid_file;
      }
      return cmd_optimize(DatasetManifest::load(opt_manifest), config, err, source);
    });
  }
  if (eval->parsed()) {
    return guarded(err, [&] {
      EvaluateOptions options;
      if (!seg_dir.empty()) options.seg_dir = seg_dir;
      return cmd_evaluate(DatasetManifest::load(eval_manifest), eval_flags.resolve(), err, options);
    });
  }
  if (cmp->parsed()) {
    return guarded(err, [&] { return cmd_compare(cmp_gt, cmp_seg, cmp_out, err); });
  }
  if (syn->parsed()) {
    return guarded(err, [&] {
      synth_opts.scene.seed = seed;
      if (lighting == "mixed") {
        synth_opts.mixed_lighting = true;
      } else {
        synth_opts.scene.lighting = lighting_from_string(lighting);
      }
      return cmd_synth(synth_opts, synth_out, err);
    });
  }
  return kInputError;
}
