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

#include "spotseg/report.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace spotseg
{
namespace
{

double parse_double(const std::string & cell, int line_no)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw std::runtime_error("score table line " + std::to_string(line_no) + ": bad number '" + cell + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double value)
{
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string format_number(const std::optional<double> & value)
{
  return value ? format_number(*value) : std::string();
}

void write_score_rows(std::ostream & out, const ImageOptimum & image)
{
  for (const auto & row : image.table) {
    out << image.image_id << ',' << format_number(row.triple.gamma) << ',' << row.triple.rho << ','
        << format_number(row.triple.alpha) << ',' << format_number(row.x11) << ','
        << format_number(row.x22) << ',' << format_number(row.objective) << '\n';
  }
}

ScoreCache read_score_table(std::istream & in)
{
  ScoreCache cache;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == kScoreTableHeader) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) {
      throw std::runtime_error("score table line " + std::to_string(line_no) + ": expected 7 fields");
    }
    ScoreRow row;
    row.triple.gamma = parse_double(cells[1], line_no);
    row.triple.rho = static_cast<int>(parse_double(cells[2], line_no));
    row.triple.alpha = parse_double(cells[3], line_no);
    row.x11 = parse_double(cells[4], line_no);
    row.x22 = parse_double(cells[5], line_no);
    row.objective = parse_double(cells[6], line_no);
    cache[cells[0]].push_back(row);
  }
  return cache;
}

std::string metrics_row(const std::string & image_id, const ConfusionMatrix & cm)
{
  const Metrics m = classical_metrics(cm);
  std::ostringstream out;
  out << image_id << ',' << cm.tn << ',' << cm.fn << ',' << cm.fp << ',' << cm.tp << ','
      << format_number(cm.x11) << ',' << format_number(cm.x12) << ',' << format_number(cm.x21) << ','
      << format_number(cm.x22) << ',' << format_number(m.precision) << ',' << format_number(m.recall)
      << ',' << format_number(m.fmeasure) << ','
      << (cm.fully_defined() ? format_number(performance(cm)) : std::string());
  return out.str();
}

nlohmann::json to_json(const Triple & t)
{
  return {{"gamma", t.gamma}, {"rho", t.rho}, {"alpha", t.alpha}};
}

nlohmann::json to_json(const GridSpec & grid)
{
  return {{"gammas", grid.gammas}, {"rhos", grid.rhos}, {"alphas", grid.alphas}};
}

nlohmann::json to_json(const OptimizationResult & result)
{
  nlohmann::json per_image = nlohmann::json::array();
  for (const auto & p : result.per_image) {
    per_image.push_back({{"image_id", p.image_id}, {"best", to_json(p.best)}, {"best_objective", p.best_score}});
  }
  return {
    {"selected", to_json(result.selected)},
    {"selection_method", result.selection_method},
    {"combinations_per_image", result.grid.size()},
    {"grid", to_json(result.grid)},
    {"per_image", per_image},
  };
}

nlohmann::json to_json(const SummaryStats & stats)
{
  nlohmann::json metrics = nlohmann::json::object();
  for (std::size_t k = 0; k < stats.metrics.size(); ++k) {
    const Statistic & s = stats.metrics[k];
    metrics[std::string(kSummaryMetrics[k])] = {
      {"mean", s.mean}, {"median", s.median}, {"std", s.stddev}, {"min", s.min}, {"max", s.max}};
  }
  return {{"samples", stats.samples},
          {"excluded", stats.excluded},
          {"std_convention", "population"},
          {"metrics", metrics}};
}

nlohmann::json to_json(const SceneSpec & spec)
{
  return {{"seed", spec.seed},
          {"width", spec.width},
          {"height", spec.height},
          {"n_spots", spec.n_spots},
          {"spot_intensity", spec.spot_intensity},
          {"background_intensity", spec.background_intensity},
          {"lighting", to_string(spec.lighting)},
          {"noise_sigma", spec.noise_sigma},
          {"rng", "lcg64 a=6364136223846793005 c=1442695040888963407 m=2^64"}};
}

}  // namespace spotseg
