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

#ifndef LOOKAHEAD_EVALUATION_HPP
#define LOOKAHEAD_EVALUATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "lookahead/config.hpp"
#include "lookahead/dataset.hpp"
#include "lookahead/models.hpp"

namespace lookahead {

/// Accuracy and decision quality on held-out data.
struct EvalReport {
  double rmse = 0.0;
  /// fraction of rows with y' > y (ties do not count)
  double improvement_rate = 0.0;
  /// mean of y' - y
  double improvement_magnitude = 0.0;
  Eigen::Index n_test = 0;

  bool operator==(const EvalReport&) const = default;
};

/// What y' = oracle(x') is compared against.
enum class Baseline {
  kObservedLabel,  // the test label y
  kOracleAtOrigin,  // oracle(x), i.e. a noiseless comparison
};

EvalReport evaluate(const PredictiveModel& f, const Oracle& oracle, const Dataset& test, double eta,
                    const FeatureMask& mask, Baseline baseline = Baseline::kObservedLabel);

struct FrontierPoint {
  double lambda = 0.0;
  EvalReport report;
  /// lookahead penalty on the training data after the final round
  double final_penalty = 0.0;
  /// set when training at this lambda failed; report is then meaningless
  std::optional<std::string> error;
};

/// Trains one model per lambda (identical data, seed and remaining settings)
/// and evaluates each on `test`. The result is sorted by lambda. A failure
/// throws, naming the lambda, unless `keep_going` is set, in which case it is
/// recorded on the point and the sweep continues.
std::vector<FrontierPoint> frontier_sweep(const Dataset& train, const Dataset& test, const TrainConfig& config,
                                          std::vector<double> lambda_grid, const Oracle& oracle,
                                          bool keep_going = false);

/// Spearman rank correlation (average ranks for ties). Returns 0 when either
/// side is constant.
double spearman_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace lookahead

#endif
