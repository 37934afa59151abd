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

#ifndef LOOKAHEAD_DECISION_HPP
#define LOOKAHEAD_DECISION_HPP

#include <filesystem>

#include "lookahead/dataset.hpp"
#include "lookahead/models.hpp"

namespace lookahead {

/// Points after users act on a model, and how far each one moved.
struct DecisionOutcome {
  Matrix decided;
  Matrix displacement;
};

/// One masked gradient step on the model's prediction: x' = x + eta * mask * grad f(x).
Vector decide_point(const PredictiveModel& f, const Eigen::Ref<const Vector>& x, double eta, const FeatureMask& mask);

/// decide_point() applied to every row.
DecisionOutcome decide(const PredictiveModel& f, const Matrix& features, double eta, const FeatureMask& mask);

inline DecisionOutcome decide(const PredictiveModel& f, const Dataset& data, double eta, const FeatureMask& mask) {
  return decide(f, data.features(), eta, mask);
}

/// Jacobian of decide_point() with respect to f's parameters: eta * diag(mask) * dgrad_dparams.
Matrix ddecided_dparams(const PredictiveModel& f, const Eigen::Ref<const Vector>& x, double eta,
                        const FeatureMask& mask);

/// Writes decided rows as CSV with the dataset's feature names as header.
void write_decisions_csv(const std::filesystem::path& path, const DecisionOutcome& outcome,
                         const std::vector<std::string>& feature_names);

}  // namespace lookahead

#endif
