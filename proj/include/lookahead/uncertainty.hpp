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

#ifndef LOOKAHEAD_UNCERTAINTY_HPP
#define LOOKAHEAD_UNCERTAINTY_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "lookahead/dataset.hpp"
#include "lookahead/models.hpp"

namespace lookahead {

enum class UncertaintyKind { kVanillaBootstrap, kResidualBootstrap, kQuantile };

std::string_view to_string(UncertaintyKind kind);

/// Accepts "vanilla", "residual", "quantile" and the long forms
/// "vanilla_bootstrap", "residual_bootstrap".
UncertaintyKind uncertainty_kind_from_string(std::string_view name);

/// kMeanOverVariance: mean(w) / var(w), population variance.
/// kKish: (sum w)^2 / sum w^2.
enum class EssFormula { kMeanOverVariance, kKish };

/// Effective sample size of importance weights, capped at the number of
/// weights. A (near) zero variance returns the full count.
double effective_sample_size(const Vector& weights, EssFormula formula = EssFormula::kMeanOverVariance);

/// Standard-normal quantile at (1 + tau) / 2, the half-width multiplier of a
/// symmetric two-sided interval with coverage tau.
double two_sided_z(double tau);

/// Tilted absolute loss max{(level - 1)(y - yhat), level (y - yhat)}.
double pinball_loss(double y, double yhat, double level);

struct Interval {
  double lower;
  double upper;
};

/// Interval predictor g_tau. Evaluation is differentiable in the query point
/// so the predictive model can be trained through it with g held fixed.
///
/// Bootstrap kinds combine k submodels as mu(x) -/+ z sigma(x) where
///   mu(x)      = mean_i g_i(x)
///   sigma(x)^2 = mean_i (g_i(x) - mu(x))^2 + noise_var
/// noise_var is the weighted residual variance on the training data, which
/// turns the ensemble spread into a prediction interval for y rather than a
/// confidence interval for the mean.
///
/// The quantile kind returns its two models' outputs, ordered.
class IntervalModel {
 public:
  static IntervalModel bootstrap(UncertaintyKind kind, std::vector<PredictiveModel> submodels, double tau,
                                 double noise_var = 0.0);
  static IntervalModel quantile(PredictiveModel lower, PredictiveModel upper, double tau);

  UncertaintyKind kind() const { return kind_; }
  double tau() const { return tau_; }
  double z() const { return z_; }
  double noise_var() const { return noise_var_; }
  const std::vector<PredictiveModel>& submodels() const { return submodels_; }
  const std::vector<PredictiveModel>& quantile_models() const { return quantile_models_; }
  Eigen::Index dim() const;

  Interval predict_interval(const Eigen::Ref<const Vector>& x) const;
  double lower(const Eigen::Ref<const Vector>& x) const { return predict_interval(x).lower; }

  /// Analytic gradient of the lower bound with respect to x.
  Vector dlower_dx(const Eigen::Ref<const Vector>& x) const;

  /// Ensemble mean and spread (bootstrap kinds only).
  double mean(const Eigen::Ref<const Vector>& x) const;
  double sigma(const Eigen::Ref<const Vector>& x) const;

  bool operator==(const IntervalModel&) const = default;

 private:
  IntervalModel() = default;
  bool is_bootstrap() const { return kind_ != UncertaintyKind::kQuantile; }

  UncertaintyKind kind_ = UncertaintyKind::kVanillaBootstrap;
  double tau_ = 0.0;
  double z_ = 0.0;
  double noise_var_ = 0.0;
  std::vector<PredictiveModel> submodels_;
  // [lower, upper] for the quantile kind.
  std::vector<PredictiveModel> quantile_models_;
};

/// Settings shared by the three interval fitters.
struct UncertaintyOptions {
  ModelKind model_kind = ModelKind::kQuadratic;
  GdOptions gd{0.1, 500};
  std::uint64_t seed = 0;
  EssFormula ess = EssFormula::kMeanOverVariance;
};

/// k submodels, each fit on ceil(ess(w)) rows drawn with replacement with
/// probability proportional to w.
IntervalModel fit_vanilla_bootstrap(const Dataset& data, const Vector& weights, int k, double tau,
                                    const UncertaintyOptions& options);

/// A weighted base fit, then k weighted refits on the original rows with
/// labels base(x_j) + r*, r* drawn from the base residuals in proportion to w.
IntervalModel fit_residual_bootstrap(const Dataset& data, const Vector& weights, int k, double tau,
                                     const UncertaintyOptions& options);

/// Weighted pinball regression at a single quantile level.
PredictiveModel fit_pinball(const Dataset& data, const Vector& weights, double level, ModelKind kind,
                            const GdOptions& gd);

/// Lower model at level (1 - tau) / 2, upper at (1 + tau) / 2.
IntervalModel fit_quantile(const Dataset& data, const Vector& weights, double tau, const UncertaintyOptions& options);

/// Dispatches on `kind`.
IntervalModel fit_interval(UncertaintyKind kind, const Dataset& data, const Vector& weights, int k, double tau,
                           const UncertaintyOptions& options);

}  // namespace lookahead

#endif
