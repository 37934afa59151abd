// Copyright 2026 The Lookahead Authors
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

#ifndef LOOKAHEAD_IO_HPP
#define LOOKAHEAD_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "lookahead/config.hpp"
#include "lookahead/evaluation.hpp"
#include "lookahead/models.hpp"
#include "lookahead/training.hpp"
#include "lookahead/uncertainty.hpp"

// JSON documents:
//   PredictiveModel  {"kind", "theta", "theta_sq"?, "bias"}
//   PropensityModel  {"weights", "bias"}
//   IntervalModel    {"kind", "tau", "z", and "noise_var" + "submodels" or
//                     "lower_model" + "upper_model"}
//   TrainedBundle    {"predictive", "interval", "propensity", "trace"}
//   TrainConfig      field names as in the struct; "mutable_columns" lists
//                    column names, "mask" the resolved booleans

namespace nlohmann {

template <>
struct adl_serializer<lookahead::PredictiveModel> {
  static void to_json(json& j, const lookahead::PredictiveModel& f);
  static lookahead::PredictiveModel from_json(const json& j);
};

template <>
struct adl_serializer<lookahead::PropensityModel> {
  static void to_json(json& j, const lookahead::PropensityModel& h);
  static lookahead::PropensityModel from_json(const json& j);
};

template <>
struct adl_serializer<lookahead::IntervalModel> {
  static void to_json(json& j, const lookahead::IntervalModel& g);
  static lookahead::IntervalModel from_json(const json& j);
};

template <>
struct adl_serializer<lookahead::TrainedBundle> {
  static void to_json(json& j, const lookahead::TrainedBundle& b);
  static lookahead::TrainedBundle from_json(const json& j);
};

}  // namespace nlohmann

namespace lookahead {

using Json = nlohmann::json;

void to_json(Json& j, const RoundTrace& t);
void from_json(const Json& j, RoundTrace& t);

void to_json(Json& j, const TrainConfig& c);
/// Fields absent from `j` keep their defaults; unknown fields are rejected.
void from_json(const Json& j, TrainConfig& c);

void to_json(Json& j, const EvalReport& r);
void from_json(const Json& j, EvalReport& r);

void to_json(Json& j, const FrontierPoint& p);

/// Parses a config document, throwing Error with the offending field.
TrainConfig parse_config(const Json& j);

Json read_json(const std::filesystem::path& path);

/// Writes `j` pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

/// round,train_mse,penalty,active_count
void write_trace_csv(const std::filesystem::path& path, const std::vector<RoundTrace>& trace);

/// lambda,rmse,improvement_rate,improvement_magnitude; failed points leave
/// the metric cells empty.
void write_frontier_csv(const std::filesystem::path& path, const std::vector<FrontierPoint>& points);

/// model,rmse,improvement_rate,improvement_magnitude,n_test
void write_reports_csv(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, EvalReport>>& rows);

}  // namespace lookahead

#endif
