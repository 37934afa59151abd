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

#ifndef LOOKAHEAD_CLI_HPP
#define LOOKAHEAD_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lookahead/config.hpp"
#include "lookahead/dataset.hpp"
#include "lookahead/io.hpp"
#include "lookahead/models.hpp"

namespace lookahead::cli {

struct DataSource {
  enum class Kind { kSynthetic, kCsv };
  Kind kind = Kind::kSynthetic;
  Eigen::Index synthetic_rows = 25;
  std::string path;
  std::string target;
  std::vector<std::string> mutable_columns;
};

/// Everything needed to reproduce a run. Written as manifest.json next to the
/// outputs and accepted back through --manifest.
struct RunManifest {
  std::string command;
  TrainConfig config;
  DataSource data;
  SplitSpec split;
  std::vector<double> lambda_grid;
  std::string output_dir = ".";
};

Json manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const Json& j);

/// Train/test data, ground truth and mask resolved from a manifest.
///
/// Synthetic data is generated from config.seed and scored with the analytic
/// curve. CSV data is split, standardized on the train part, and scored with
/// a quadratic fit to the whole (standardized) file.
struct PreparedData {
  Dataset train;
  Dataset test;
  Oracle oracle;
  FeatureMask mask;
  std::vector<std::string> warnings;
};

PreparedData prepare_data(const RunManifest& manifest);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_synth(const RunManifest& manifest, std::ostream& out);
int cmd_train(const RunManifest& manifest, std::ostream& out);
int cmd_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err);

}  // namespace lookahead::cli

#endif
