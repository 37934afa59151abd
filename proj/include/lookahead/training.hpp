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

#ifndef LOOKAHEAD_TRAINING_HPP
#define LOOKAHEAD_TRAINING_HPP

#include <string>
#include <vector>

#include "lookahead/config.hpp"
#include "lookahead/dataset.hpp"
#include "lookahead/decision.hpp"
#include "lookahead/error.hpp"
#include "lookahead/models.hpp"
#include "lookahead/uncertainty.hpp"

namespace lookahead {

// Both terms of the objectives below are means over the rows, so lambda does
// not depend on the dataset size.

/// mean_i max{0, y_i - lower(g, x'_i)} with x'_i the decision induced by f.
double lookahead_penalty(const PredictiveModel& f, const IntervalModel& g, const Dataset& data, double eta,
                         const FeatureMask& mask);

/// mean squared error + lambda * lookahead_penalty.
double lookahead_objective(const PredictiveModel& f, const IntervalModel& g, const Dataset& data, double lambda,
                           double eta, const FeatureMask& mask);

/// Gradient of lookahead_objective() with respect to f's parameters, with g
/// held fixed. The hinge subgradient at its kink is 0.
Vector grad_lookahead(const PredictiveModel& f, const IntervalModel& g, const Dataset& data, double lambda, double eta,
                      const FeatureMask& mask);

/// Everything one pass over the data yields, gradient included.
struct LookaheadTerms {
  double mse = 0.0;
  double penalty = 0.0;
  double objective = 0.0;
  Eigen::Index active_count = 0;
  Vector gradient;
};

LookaheadTerms lookahead_terms(const PredictiveModel& f, const IntervalModel& g, const Dataset& data, double lambda,
                               double eta, const FeatureMask& mask);

/// Coupled baseline: mean squared error + lambda * mean_i max{0, y_i - f(x'_i)},
/// where the model's own prediction at x' stands in for the outcome.
double naive_objective(const PredictiveModel& f, const Dataset& data, double lambda, double eta,
                       const FeatureMask& mask);

Vector grad_naive(const PredictiveModel& f, const Dataset& data, double lambda, double eta, const FeatureMask& mask);

/// Gradient descent on naive_objective() from zero parameters.
PredictiveModel train_naive(const Dataset& data, double lambda, double eta, const FeatureMask& mask, ModelKind kind,
                            const GdOptions& gd);

/// Diagnostics recorded at the end of each round.
struct RoundTrace {
  int round = 0;
  double train_mse = 0.0;
  double penalty = 0.0;
  Eigen::Index active_count = 0;

  bool operator==(const RoundTrace&) const = default;
};

struct TrainedBundle {
  PredictiveModel predictive;
  IntervalModel interval;
  PropensityModel propensity;
  std::vector<RoundTrace> trace;
};

/// Raised when a loss turns non-finite inside train_lookahead().
class TrainingError : public Error {
 public:
  TrainingError(int round, std::string stage, const std::string& detail)
      : Error("round " + std::to_string(round) + ", stage '" + stage + "': " + detail),
        round_(round),
        stage_(std::move(stage)) {}

  int round() const { return round_; }
  const std::string& stage() const { return stage_; }

 private:
  int round_;
  std::string stage_;
};

/// The alternating procedure. f is first fit without the penalty; then each
/// round decides S' from the current f, fits the propensity model on
/// (S, S'), fits the interval model with weights e^{h(x)}, and takes
/// `epochs_per_round` gradient steps on the lookahead objective with the
/// interval model fixed. Decisions are recomputed at every step.
TrainedBundle train_lookahead(const Dataset& data, const TrainConfig& config);

}  // namespace lookahead

#endif
