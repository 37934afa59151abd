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

#include "lookahead/training.hpp"

#include <cmath>
#include <optional>

#include "lookahead/rng.hpp"

namespace lookahead {

LookaheadTerms lookahead_terms(const PredictiveModel& f, const IntervalModel& g, const Dataset& data, double lambda,
                               double eta, const FeatureMask& mask) {
  mask.check(data.dim());
  if (g.dim() != data.dim()) throw DimensionError("interval model dimension does not match data");
  const auto mse = squared_loss(f, data);
  const auto m = static_cast<double>(data.rows());

  LookaheadTerms out;
  out.mse = mse.loss;
  Vector penalty_grad = Vector::Zero(f.n_params());
  double hinge_sum = 0.0;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const Vector x = data.features().row(i).transpose();
    const Vector decided = decide_point(f, x, eta, mask);
    const double slack = data.outcomes()(i) - g.lower(decided);
    if (slack <= 0.0) continue;
    hinge_sum += slack;
    ++out.active_count;
    // d lower(x'(p)) / dp = (dx'/dp)^T grad_x lower(x')
    penalty_grad -= ddecided_dparams(f, x, eta, mask).transpose() * g.dlower_dx(decided);
  }
  out.penalty = hinge_sum / m;
  out.objective = out.mse + lambda * out.penalty;
  out.gradient = mse.gradient + lambda * (penalty_grad / m);
  return out;
}

double lookahead_penalty(const PredictiveModel& f, const IntervalModel& g, const Dataset& data, double eta,
                         const FeatureMask& mask) {
  return lookahead_terms(f, g, data, 0.0, eta, mask).penalty;
}

double lookahead_objective(const PredictiveModel& f, const IntervalModel& g, const Dataset& data, double lambda,
                           double eta, const FeatureMask& mask) {
  return lookahead_terms(f, g, data, lambda, eta, mask).objective;
}

Vector grad_lookahead(const PredictiveModel& f, const IntervalModel& g, const Dataset& data, double lambda, double eta,
                      const FeatureMask& mask) {
  return lookahead_terms(f, g, data, lambda, eta, mask).gradient;
}

namespace {

struct NaiveTerms {
  double objective = 0.0;
  Vector gradient;
};

NaiveTerms naive_terms(const PredictiveModel& f, const Dataset& data, double lambda, double eta,
                       const FeatureMask& mask) {
  mask.check(data.dim());
  const auto mse = squared_loss(f, data);
  const auto m = static_cast<double>(data.rows());
  Vector penalty_grad = Vector::Zero(f.n_params());
  double hinge_sum = 0.0;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const Vector x = data.features().row(i).transpose();
    const Vector decided = decide_point(f, x, eta, mask);
    const double slack = data.outcomes()(i) - f.predict(decided);
    if (slack <= 0.0) continue;
    hinge_sum += slack;
    // f depends on its parameters both directly and through x'.
    penalty_grad -= f.dpredict_dparams(decided) + ddecided_dparams(f, x, eta, mask).transpose() * f.grad_x(decided);
  }
  return {mse.loss + lambda * hinge_sum / m, mse.gradient + lambda * (penalty_grad / m)};
}

}  // namespace

double naive_objective(const PredictiveModel& f, const Dataset& data, double lambda, double eta,
                       const FeatureMask& mask) {
  return naive_terms(f, data, lambda, eta, mask).objective;
}

Vector grad_naive(const PredictiveModel& f, const Dataset& data, double lambda, double eta, const FeatureMask& mask) {
  return naive_terms(f, data, lambda, eta, mask).gradient;
}

PredictiveModel train_naive(const Dataset& data, double lambda, double eta, const FeatureMask& mask, ModelKind kind,
                            const GdOptions& gd) {
  auto f = PredictiveModel::zeros(kind, data.dim());
  Vector params = f.params();
  for (int epoch = 0; epoch < gd.epochs; ++epoch) {
    const auto terms = naive_terms(f, data, lambda, eta, mask);
    if (!std::isfinite(terms.objective) || !terms.gradient.allFinite()) throw DivergenceError("naive fit", epoch);
    params -= gd.learning_rate * terms.gradient;
    if (!params.allFinite()) throw DivergenceError("naive fit", epoch);
    f = PredictiveModel::from_params(kind, data.dim(), params);
  }
  return f;
}

TrainedBundle train_lookahead(const Dataset& data, const TrainConfig& config) {
  config.validate();
  const FeatureMask mask = config.resolved_mask(data.dim());

  std::optional<PredictiveModel> f;
  try {
    f = fit_predictive(data, config.model_kind, {config.learning_rate, config.epochs_init});
  } catch (const DivergenceError& e) {
    throw TrainingError(0, "predictive_init", e.what());
  }

  std::optional<PropensityModel> h;
  std::optional<IntervalModel> g;
  std::vector<RoundTrace> trace;
  for (int round = 1; round <= config.rounds; ++round) {
    const DecisionOutcome decided = decide(*f, data, config.eta, mask);
    if (!decided.decided.allFinite()) throw TrainingError(round, "decision", "decided points are not finite");

    try {
      h = fit_propensity(data.features(), decided.decided, {config.propensity_learning_rate, config.propensity_epochs});
    } catch (const DivergenceError& e) {
      throw TrainingError(round, "propensity", e.what());
    }
    const Vector weights = h->weights_for(data.features());

    UncertaintyOptions options;
    options.model_kind = config.interval_model_kind;
    options.gd = {config.uncertainty_learning_rate, config.uncertainty_epochs};
    options.seed = mix64(config.seed) ^ static_cast<std::uint64_t>(round);
    options.ess = config.ess;
    try {
      g = fit_interval(config.uncertainty_kind, data, weights, config.n_bootstrap, config.tau, options);
    } catch (const DivergenceError& e) {
      throw TrainingError(round, "uncertainty", e.what());
    }

    Vector params = f->params();
    for (int epoch = 0; epoch < config.epochs_per_round; ++epoch) {
      const auto terms = lookahead_terms(*f, *g, data, config.lambda, config.eta, mask);
      if (!std::isfinite(terms.objective) || !terms.gradient.allFinite()) {
        throw TrainingError(round, "predictive", "lookahead objective not finite at epoch " + std::to_string(epoch));
      }
      params -= config.learning_rate * terms.gradient;
      if (!params.allFinite()) {
        throw TrainingError(round, "predictive", "parameters not finite at epoch " + std::to_string(epoch));
      }
      f = PredictiveModel::from_params(f->kind(), f->dim(), params);
    }

    const auto final_terms = lookahead_terms(*f, *g, data, config.lambda, config.eta, mask);
    if (!std::isfinite(final_terms.objective)) {
      throw TrainingError(round, "predictive", "lookahead objective not finite after update");
    }
    trace.push_back({round, final_terms.mse, final_terms.penalty, final_terms.active_count});
  }
  return {*f, *g, *h, std::move(trace)};
}

}  // namespace lookahead
