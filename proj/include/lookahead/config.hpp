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

#ifndef LOOKAHEAD_CONFIG_HPP
#define LOOKAHEAD_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lookahead/dataset.hpp"
#include "lookahead/models.hpp"
#include "lookahead/uncertainty.hpp"

namespace lookahead {

/// Every scalar of the alternating training loop.
///
/// Defaults reproduce the synthetic quadratic-curve setup (lambda 4, tau 0.95,
/// 10 bootstrap replicates, 5 rounds). Plain gradient descent on the lookahead
/// objective is stable only for learning_rate below roughly
/// 2 / (lambda eta^2 |curvature of the lower bound|), hence the small step and
/// long schedule for f.
struct TrainConfig {
  double lambda = 4.0;
  double eta = 1.25;
  double tau = 0.95;
  int rounds = 5;
  int n_bootstrap = 10;
  double learning_rate = 0.001;
  int epochs_init = 40000;
  int epochs_per_round = 4000;
  std::uint64_t seed = 0;
  UncertaintyKind uncertainty_kind = UncertaintyKind::kVanillaBootstrap;

  /// Mutable coordinates. An empty mask means "all mutable" and is expanded
  /// to the data dimension by resolved_mask().
  FeatureMask mask;
  /// Column names behind `mask`, kept for manifests of CSV runs.
  std::vector<std::string> mutable_columns;

  ModelKind model_kind = ModelKind::kQuadratic;
  ModelKind interval_model_kind = ModelKind::kQuadratic;
  double uncertainty_learning_rate = 0.1;
  int uncertainty_epochs = 1000;
  double propensity_learning_rate = 0.1;
  int propensity_epochs = 1000;
  EssFormula ess = EssFormula::kMeanOverVariance;

  /// Throws Error naming the first invalid field.
  void validate() const;

  FeatureMask resolved_mask(Eigen::Index d) const;

  /// Wine-style setup: linear f, g and h; residual bootstrap with k = 20;
  /// T = 10 rounds; learning rate 0.1.
  static TrainConfig wine_preset(double eta);

  /// Diabetes-style setup: quantile intervals at tau 0.8, T = 10, learning
  /// rate 0.05, eta 5.
  static TrainConfig diabetes_preset(ModelKind kind);
};

}  // namespace lookahead

#endif
