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

#include "lookahead/config.hpp"

#include <cmath>

#include "lookahead/error.hpp"

namespace lookahead {

void TrainConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error("lambda must be finite and >= 0");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw Error("eta must be finite and >= 0");
  if (!(tau > 0.0 && tau < 1.0)) throw Error("tau must lie in (0, 1)");
  if (rounds < 1) throw Error("rounds must be positive");
  if (n_bootstrap < 1) throw Error("n_bootstrap must be positive");
  if (uncertainty_kind != UncertaintyKind::kQuantile && n_bootstrap < 2) {
    throw Error("bootstrap intervals need n_bootstrap >= 2");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw Error("learning_rate must be positive");
  if (epochs_init < 1) throw Error("epochs_init must be positive");
  if (epochs_per_round < 1) throw Error("epochs_per_round must be positive");
  if (uncertainty_epochs < 1) throw Error("uncertainty_epochs must be positive");
  if (propensity_epochs < 0) throw Error("propensity_epochs must be >= 0");
  if (!(uncertainty_learning_rate > 0.0)) throw Error("uncertainty_learning_rate must be positive");
  if (!(propensity_learning_rate > 0.0)) throw Error("propensity_learning_rate must be positive");
}

FeatureMask TrainConfig::resolved_mask(Eigen::Index d) const {
  if (mask.size() == 0) return FeatureMask::all_mutable(d);
  mask.check(d);
  return mask;
}

TrainConfig TrainConfig::wine_preset(double eta) {
  TrainConfig c;
  c.eta = eta;
  c.tau = 0.95;
  c.n_bootstrap = 20;
  c.rounds = 10;
  c.learning_rate = 0.1;
  c.epochs_init = 1000;
  c.epochs_per_round = 100;
  c.uncertainty_learning_rate = 0.1;
  c.uncertainty_epochs = 500;
  c.propensity_learning_rate = 0.1;
  c.propensity_epochs = 500;
  c.uncertainty_kind = UncertaintyKind::kResidualBootstrap;
  c.model_kind = ModelKind::kLinear;
  c.interval_model_kind = ModelKind::kLinear;
  return c;
}

TrainConfig TrainConfig::diabetes_preset(ModelKind kind) {
  TrainConfig c;
  c.eta = 5.0;
  c.tau = 0.8;
  c.rounds = 10;
  c.learning_rate = 0.05;
  c.epochs_init = 1000;
  c.epochs_per_round = 100;
  c.uncertainty_learning_rate = 0.05;
  c.uncertainty_epochs = 500;
  c.propensity_learning_rate = 0.05;
  c.propensity_epochs = 500;
  c.uncertainty_kind = UncertaintyKind::kQuantile;
  c.model_kind = kind;
  c.interval_model_kind = kind;
  return c;
}

}  // namespace lookahead
