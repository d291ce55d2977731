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

#include "cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "spotseg/evaluation.hpp"
#include "spotseg/image_io.hpp"
#include "spotseg/optimizer.hpp"
#include "spotseg/parallel.hpp"
#include "spotseg/pipeline.hpp"
#include "spotseg/report.hpp"

namespace spotseg::cli
{
namespace fs = std::filesystem;

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string wall_clock_now()
{
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// Writes via a temporary file so readers never see a partial file.
void write_text(const fs::path & path, const std::string & text)
{
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ImageIoError("cannot write " + tmp.string());
    out << text;
    if (!out) throw ImageIoError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_json(const fs::path & path, const nlohmann::json & doc)
{
  write_text(path, doc.dump(2) + "\n");
}

nlohmann::json fixed_params_json(const PipelineParams & p)
{
  return {{"c", p.preprocess.c},
          {"median_kernel", p.preprocess.median_kernel},
          {"mu", p.chanvese.mu},
          {"nu", p.chanvese.nu},
          {"lambda1", p.chanvese.lambda1},
          {"lambda2", p.chanvese.lambda2},
          {"dt", p.chanvese.dt},
          {"epsilon", p.chanvese.epsilon},
          {"init", p.init == InitScheme::checkerboard ? "checkerboard" : "centered-circle"},
          {"remove", to_string(p.removal)},
          {"connectivity", static_cast<int>(p.connectivity)}};
}

struct ItemStatus
{
  int code = kSuccess;
  std::string message;
  double seconds = 0.0;
};

}  // namespace

int guarded(std::ostream & err, const std::function<int()> & body)
{
  try {
    return body();
  } catch (const NumericalFailure & e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int cmd_segment(const DatasetManifest & inputs, const Config & config, std::ostream & err)
{
  config.validate();
  if (inputs.entries.empty()) {
    err << "error: no input images\n";
    return kInputError;
  }
  fs::create_directories(config.out_dir);
  std::vector<ItemStatus> status(inputs.entries.size());
  parallel_for(inputs.entries.size(), config.workers, [&](std::size_t i) {
    const DatasetEntry & e = inputs.entries[i];
    const auto start = Clock::now();
    try {
      const RgbImage img = load_rgb(e.image);
      const BinaryMask mask = segment(img, config.pipeline);
      save_mask(mask, config.out_dir / (e.id + ".png"));
    } catch (const NumericalFailure & ex) {
      status[i] = {kNumericalFailure, ex.what(), 0.0};
    } catch (const std::exception & ex) {
      status[i] = {kInputError, ex.what(), 0.0};
    }
    status[i].seconds = seconds_since(start);
  });

  std::ostringstream log, failures;
  int code = kSuccess;
  for (std::size_t i = 0; i < status.size(); ++i) {
    const DatasetEntry & e = inputs.entries[i];
    const ItemStatus & s = status[i];
    log << e.id << ' ' << std::fixed << std::setprecision(3) << s.seconds << "s "
        << (s.code == kSuccess ? "ok" : "failed") << '\n';
    if (s.code != kSuccess) {
      err << "error: " << e.image.string() << ": " << s.message << '\n';
      failures << e.image.string() << '\t' << s.message << '\n';
      code = (code == kNumericalFailure || s.code == kNumericalFailure) ? kNumericalFailure : kInputError;
    }
  }
  write_text(config.out_dir / "segment.log", log.str());
  if (code != kSuccess) {
    write_text(config.out_dir / "failures.txt", failures.str());
  } else if (fs::exists(config.out_dir / "failures.txt")) {
    fs::remove(config.out_dir / "failures.txt");
  }
  return code;
}

int cmd_optimize(
  const DatasetManifest & manifest, const Config & config, std::ostream & err,
  const std::optional<fs::path> & grid_source)
{
  config.validate();
  if (manifest.entries.empty()) {
    err << "error: manifest has no entries\n";
    return kInputError;
  }
  manifest.require_ground_truth();
  const GridSpec grid = config.grid.value_or(default_grid());
  fs::create_directories(config.out_dir);
  const fs::path scores_path = config.out_dir / "scores.csv";

  ScoreCache cache;
  if (fs::exists(scores_path)) {
    std::ifstream in(scores_path);
    cache = read_score_table(in);
  }

  std::ostringstream log;
  log << "start " << wall_clock_now() << '\n';
  std::ostringstream rows;
  auto tick = Clock::now();
  const OptimizationResult result = optimize_dataset(
    manifest, grid, config.pipeline, config.workers, &cache, [&](const ImageOptimum & image) {
      write_score_rows(rows, image);
      write_text(scores_path, std::string(kScoreTableHeader) + "\n" + rows.str());
      log << image.image_id << ' ' << std::fixed << std::setprecision(3) << seconds_since(tick)
          << "s best_objective=" << format_number(image.best_score)
          << (cache.count(image.image_id) ? " (reused)" : "") << '\n';
      tick = Clock::now();
    });
  log << "end " << wall_clock_now() << '\n';

  nlohmann::json doc = to_json(result);
  doc["provenance"] = {
    {"grid_source", grid_source ? grid_source->string()
                    : config.grid ? std::string("config")
                                  : std::string("default: evenly spaced over the search box (assumed values)")},
    {"fixed_params", fixed_params_json(config.pipeline)},
    {"score_table", "scores.csv"},
    {"timestamps", "optimize.log"},
  };
  write_json(config.out_dir / "optimization.json", doc);
  write_text(config.out_dir / "optimize.log", log.str());
  return kSuccess;
}

int cmd_evaluate(
  const DatasetManifest & manifest, const Config & config, std::ostream & err,
  const EvaluateOptions & options)
{
  config.validate();
  if (manifest.entries.empty()) {
    err << "error: manifest has no entries\n";
    return kInputError;
  }
  manifest.require_ground_truth();
  fs::create_directories(config.out_dir / "masks");
  fs::create_directories(config.out_dir / "overlays");

  std::vector<ConfusionMatrix> cms(manifest.entries.size());
  std::vector<double> seconds(manifest.entries.size());
  parallel_for(manifest.entries.size(), config.workers, [&](std::size_t i) {
    const DatasetEntry & e = manifest.entries[i];
    const auto start = Clock::now();
    const BinaryMask gt = load_mask(*e.ground_truth);
    BinaryMask seg;
    if (options.seg_dir) {
      seg = load_mask(*options.seg_dir / (e.id + ".png"));
    } else {
      seg = segment(load_rgb(e.image), config.pipeline);
    }
    if (gt.rows() != seg.rows() || gt.cols() != seg.cols()) {
      throw std::invalid_argument("'" + e.id + "': segmentation and ground truth sizes differ");
    }
    save_mask(seg, config.out_dir / "masks" / (e.id + ".png"));
    save_rgb(overlay(gt, seg), config.out_dir / "overlays" / (e.id + ".png"));
    cms[i] = confusion(gt, seg);
    seconds[i] = seconds_since(start);
  });

  std::ostringstream csv, log;
  csv << kMetricsHeader << '\n';
  nlohmann::json excluded_ids = nlohmann::json::array();
  for (std::size_t i = 0; i < cms.size(); ++i) {
    const std::string & id = manifest.entries[i].id;
    csv << metrics_row(id, cms[i]) << '\n';
    if (!cms[i].fully_defined()) excluded_ids.push_back(id);
    log << id << ' ' << std::fixed << std::setprecision(3) << seconds[i] << "s\n";
  }
  write_text(config.out_dir / "metrics.csv", csv.str());

  const SummaryStats stats = aggregate(cms);
  nlohmann::json doc = to_json(stats);
  doc["excluded_ids"] = excluded_ids;
  doc["params"] = {{"gamma", config.pipeline.gamma},
                   {"rho", config.pipeline.iterations},
                   {"alpha", config.pipeline.alpha},
                   {"fixed", fixed_params_json(config.pipeline)}};
  doc["segmentation_source"] = options.seg_dir ? "precomputed" : "pipeline";
  write_json(config.out_dir / "summary.json", doc);
  write_text(config.out_dir / "evaluate.log", log.str());
  return kSuccess;
}

int cmd_compare(const fs::path & gt_path, const fs::path & seg_path, const fs::path & out_path, std::ostream &)
{
  const BinaryMask gt = load_mask(gt_path);
  const BinaryMask seg = load_mask(seg_path);
  require_same_shape(gt, seg, "compare");
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  save_rgb(overlay(gt, seg), out_path);
  return kSuccess;
}

int cmd_synth(const SynthOptions & options, const fs::path & out_dir, std::ostream & err)
{
  if (options.count < 1) {
    err << "error: count must be >= 1\n";
    return kInputError;
  }
  fs::create_directories(out_dir);
  static constexpr Lighting kCycle[] = {Lighting::ideal, Lighting::normal, Lighting::hard_exposed};
  DatasetManifest manifest;
  for (int i = 0; i < options.count; ++i) {
    SceneSpec spec = options.scene;
    spec.seed = options.scene.seed + static_cast<std::uint64_t>(i);
    if (options.mixed_lighting) spec.lighting = kCycle[i % 3];
    const Scene scene = generate(spec);
    const std::string id = "scene_" + std::to_string(spec.seed);
    save_rgb(scene.image, out_dir / (id + "_image.png"));
    save_mask(scene.mask, out_dir / (id + "_mask.png"));
    nlohmann::json doc = to_json(spec);
    doc["spots_placed"] = scene.spots.size();
    doc["saturated_fraction"] = scene.saturated_fraction;
    write_json(out_dir / (id + ".json"), doc);
    manifest.entries.push_back({id + "_image.png", fs::path(id + "_mask.png"), id});
  }
  std::ostringstream out;
  manifest.write(out);
  write_text(out_dir / "manifest.csv", out.str());
  return kSuccess;
}

void apply_optimization_json(const fs::path & path, Config & config)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open parameters file: " + path.string());
  const nlohmann::json doc = nlohmann::json::parse(in);
  const nlohmann::json & sel = doc.contains("selected") ? doc.at("selected") : doc;
  config.pipeline.gamma = sel.at("gamma").get<double>();
  config.pipeline.iterations = sel.at("rho").get<int>();
  config.pipeline.alpha = sel.at("alpha").get<double>();
}

}  // namespace spotseg::cli
