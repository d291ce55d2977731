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

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

#include "cli/commands.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "spotseg/image_io.hpp"
#include "spotseg/optimizer.hpp"

using namespace spotseg;
using namespace spotseg::cli;
namespace fs = std::filesystem;

namespace
{

// Writes `n` small synthetic scenes into dir and returns their manifest.
DatasetManifest small_set(const fs::path & dir, int n, int size = 48)
{
  SynthOptions o;
  o.scene.width = o.scene.height = size;
  o.scene.n_spots = 3;
  o.scene.seed = 50;
  o.count = n;
  o.mixed_lighting = true;
  std::ostringstream err;
  REQUIRE(cmd_synth(o, dir, err) == kSuccess);
  return DatasetManifest::load(dir / "manifest.csv");
}

GridSpec box_grid()
{
  GridSpec g;
  g.gammas = {3.6, 6.0};
  g.rhos = {1600, 2600};
  g.alphas = {0.0025, 0.05};
  return g;
}

int count_lines(const fs::path & p)
{
  std::ifstream in(p);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) n += !line.empty();
  return n;
}

int run(const std::string & args)
{
  const int status = std::system((std::string(SPOTSEG_BIN) + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json read_json(const fs::path & p) { return nlohmann::json::parse(oracle::slurp(p)); }

}  // namespace

TEST_CASE("segment writes one mask per input")
{
  const auto dir = oracle::scratch_dir("cli_segment");
  const DatasetManifest set = small_set(dir / "data", 5);
  Config c;
  c.pipeline.iterations = 300;
  c.out_dir = dir / "w1";
  std::ostringstream err;
  REQUIRE(cmd_segment(set, c, err) == kSuccess);
  const BinaryMask m = load_mask(dir / "w1" / (set.entries[0].id + ".png"));
  CHECK(m.rows() == 48);
  CHECK(m.cols() == 48);

  c.workers = 4;
  c.out_dir = dir / "w4";
  REQUIRE(cmd_segment(set, c, err) == kSuccess);
  CHECK(oracle::snapshot(dir / "w1") == oracle::snapshot(dir / "w4"));
}

TEST_CASE("segment reports missing inputs and keeps going")
{
  const auto dir = oracle::scratch_dir("cli_missing");
  DatasetManifest set = small_set(dir / "data", 1);
  set.entries.push_back({dir / "nope.png", std::nullopt, "nope"});
  Config c;
  c.pipeline.iterations = 50;
  c.out_dir = dir / "out";
  std::ostringstream err;
  CHECK(cmd_segment(set, c, err) == kInputError);
  CHECK(err.str().find("nope.png") != std::string::npos);
  CHECK(fs::exists(dir / "out" / (set.entries[0].id + ".png")));
  CHECK(oracle::slurp(dir / "out" / "failures.txt").find("nope.png") != std::string::npos);

  CHECK(run("segment " + (dir / "nope.png").string() + " --out " + (dir / "bin").string()) == 1);
}

TEST_CASE("optimize writes the score table and selection")
{
  const auto dir = oracle::scratch_dir("cli_optimize");
  const DatasetManifest set = small_set(dir / "data", 2);
  Config c;
  c.grid = box_grid();
  c.out_dir = dir / "fresh";
  std::ostringstream err;
  REQUIRE(cmd_optimize(set, c, err) == kSuccess);
  CHECK(count_lines(dir / "fresh" / "scores.csv") == 1 + 16);
  const auto doc = read_json(dir / "fresh" / "optimization.json");
  const auto sel = doc.at("selected");
  const GridSpec g = box_grid();
  CHECK(std::count(g.gammas.begin(), g.gammas.end(), sel.at("gamma").get<double>()) == 1);
  CHECK(std::count(g.rhos.begin(), g.rhos.end(), sel.at("rho").get<int>()) == 1);
  CHECK(std::count(g.alphas.begin(), g.alphas.end(), sel.at("alpha").get<double>()) == 1);
  CHECK(doc.at("per_image").size() == 2);

  SUBCASE("resumed run matches the fresh run")
  {
    fs::create_directories(dir / "resumed");
    // keep the header, all of image 1 and half of image 2
    std::ifstream in(dir / "fresh" / "scores.csv");
    std::ofstream out(dir / "resumed" / "scores.csv");
    std::string line;
    for (int i = 0; i < 1 + 8 + 4 && std::getline(in, line); ++i) out << line << '\n';
    out.close();
    c.out_dir = dir / "resumed";
    REQUIRE(cmd_optimize(set, c, err) == kSuccess);
    CHECK(oracle::slurp(dir / "resumed" / "optimization.json") ==
          oracle::slurp(dir / "fresh" / "optimization.json"));
    CHECK(oracle::slurp(dir / "resumed" / "scores.csv") == oracle::slurp(dir / "fresh" / "scores.csv"));
  }
  SUBCASE("empty manifest fails")
  {
    CHECK(guarded(err, [&] { return cmd_optimize(DatasetManifest{}, c, err); }) != kSuccess);
    std::ofstream(dir / "empty.csv") << "image_path,gt_path,id\n";
    CHECK(run("optimize --manifest " + (dir / "empty.csv").string() + " --out " + (dir / "e").string()) == 1);
  }
}

TEST_CASE("evaluate with precomputed masks")
{
  const auto dir = oracle::scratch_dir("cli_evaluate");
  const DatasetManifest set = small_set(dir / "data", 10);
  fs::create_directories(dir / "seg");
  for (const auto & e : set.entries) fs::copy_file(*e.ground_truth, dir / "seg" / (e.id + ".png"));
  Config c;
  c.out_dir = dir / "out";
  std::ostringstream err;
  REQUIRE(cmd_evaluate(set, c, err, {dir / "seg"}) == kSuccess);
  const auto doc = read_json(dir / "out" / "summary.json");
  CHECK(doc.at("metrics").at("performance").at("mean").get<double>() == 100.0);
  for (const char * key : {"x11", "x22", "precision", "recall", "fmeasure"}) {
    for (const char * stat : {"mean", "median", "std"}) CHECK(doc.at("metrics").at(key).contains(stat));
  }
  CHECK(count_lines(dir / "out" / "metrics.csv") == 11);
  CHECK(fs::exists(dir / "out" / "overlays" / (set.entries[3].id + ".png")));
}

TEST_CASE("evaluate the four-pixel pair")
{
  const auto dir = oracle::scratch_dir("cli_px4");
  BinaryMask gt(1, 4), seg(1, 4);
  gt << true, true, false, false;
  seg << true, false, false, false;
  save_mask(gt, dir / "gt.png");
  fs::create_directories(dir / "seg");
  save_mask(seg, dir / "seg" / "px4.png");
  save_rgb(RgbImage(4, 1), dir / "img.png");
  DatasetManifest m;
  m.entries.push_back({dir / "img.png", dir / "gt.png", "px4"});
  Config c;
  c.out_dir = dir / "out";
  std::ostringstream err;
  REQUIRE(cmd_evaluate(m, c, err, {dir / "seg"}) == kSuccess);
  std::ifstream in(dir / "out" / "metrics.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(row == "px4,2,1,0,1,100,50,0,50,1,0.5,0.6666666666666666,75");
}

TEST_CASE("compare renders the overlay")
{
  const auto dir = oracle::scratch_dir("cli_compare");
  BinaryMask gt(1, 4), seg(1, 4);
  gt << true, true, false, false;
  seg << true, false, false, false;
  save_mask(gt, dir / "gt.png");
  save_mask(seg, dir / "seg.png");
  save_mask(BinaryMask::Zero(1, 4), dir / "none.png");
  std::ostringstream err;

  REQUIRE(cmd_compare(dir / "gt.png", dir / "seg.png", dir / "o" / "px4.png", err) == kSuccess);
  const RgbImage px4 = load_rgb(dir / "o" / "px4.png");
  const std::vector<std::uint8_t> expect{255, 255, 0, 255, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(px4.data == expect);

  REQUIRE(cmd_compare(dir / "gt.png", dir / "gt.png", dir / "same.png", err) == kSuccess);
  const RgbImage same = load_rgb(dir / "same.png");
  for (int c = 0; c < 4; ++c) {
    const bool red = same.at(0, c, 0) == 255 && same.at(0, c, 1) == 0;
    const bool green = same.at(0, c, 0) == 0 && same.at(0, c, 1) == 255;
    CHECK_FALSE(red);
    CHECK_FALSE(green);
  }

  REQUIRE(cmd_compare(dir / "gt.png", dir / "none.png", dir / "none_o.png", err) == kSuccess);
  const RgbImage none = load_rgb(dir / "none_o.png");
  CHECK(none.at(0, 0, 0) == 255);
  CHECK(none.at(0, 1, 0) == 255);
  CHECK(none.at(0, 1, 1) == 0);

  CHECK(run("compare " + (dir / "gt.png").string() + " " + (dir / "missing.png").string() + " --out " +
            (dir / "x.png").string()) == 1);
}

TEST_CASE("command-line flags override the config file")
{
  const auto dir = oracle::scratch_dir("cli_flags");
  const DatasetManifest set = small_set(dir / "data", 1, 32);
  std::ofstream(dir / "c.conf") << "gamma = 5.0\nrho = 40\nalpha = 0.02\n";
  const std::string base = "evaluate --manifest " + (dir / "data" / "manifest.csv").string() + " --config " +
                           (dir / "c.conf").string();
  REQUIRE(run(base + " --out " + (dir / "a").string()) == 0);
  auto params = read_json(dir / "a" / "summary.json").at("params");
  CHECK(params.at("gamma") == 5.0);
  CHECK(params.at("rho") == 40);

  REQUIRE(run(base + " --gamma 4 --out " + (dir / "b").string()) == 0);
  params = read_json(dir / "b" / "summary.json").at("params");
  CHECK(params.at("gamma") == 4.0);
  CHECK(params.at("rho") == 40);
  CHECK(params.at("alpha") == 0.02);

  CHECK(run(base + " --remove medium --out " + (dir / "c").string()) != 0);
  CHECK(run("frobnicate") != 0);
}
