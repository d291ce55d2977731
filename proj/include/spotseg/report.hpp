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

// CSV and JSON renderings of scores, metrics and scene descriptions.

#ifndef SPOTSEG_REPORT_HPP_
#define SPOTSEG_REPORT_HPP_

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "spotseg/evaluation.hpp"
#include "spotseg/optimizer.hpp"
#include "spotseg/synth.hpp"

namespace spotseg
{

/// Shortest decimal form that parses back to the same double.
std::string format_number(double value);
std::string format_number(const std::optional<double> & value);  // empty when unset

inline constexpr const char * kScoreTableHeader = "image_id,gamma,rho,alpha,x11,x22,objective";
inline constexpr const char * kMetricsHeader =
  "image_id,tn,fn,fp,tp,x11,x12,x21,x22,precision,recall,fmeasure,performance";

void write_score_rows(std::ostream & out, const ImageOptimum & image);
/// Parses a score table; rows are grouped by image id in file order.
ScoreCache read_score_table(std::istream & in);

std::string metrics_row(const std::string & image_id, const ConfusionMatrix & cm);

nlohmann::json to_json(const Triple & t);
nlohmann::json to_json(const GridSpec & grid);
nlohmann::json to_json(const OptimizationResult & result);
nlohmann::json to_json(const SummaryStats & stats);
nlohmann::json to_json(const SceneSpec & spec);

}  // namespace spotseg

#endif  // SPOTSEG_REPORT_HPP_
