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

#ifndef LOOKAHEAD_MODELS_HPP
#define LOOKAHEAD_MODELS_HPP

#include <optional>
#include <string_view>

#include "lookahead/dataset.hpp"

namespace lookahead {

enum class ModelKind { kLinear, kQuadratic };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

/// Full-batch gradient descent settings.
struct GdOptions {
  double learning_rate = 0.1;
  int epochs = 1000;
};

/// Regressor that is linear in its parameters:
///
///   linear:     f(x) = theta . x + bias
///   quadratic:  f(x) = theta . x + theta_sq . (x * x) + bias
///
/// The flattened parameter vector is ordered [theta, theta_sq, bias], with
/// theta_sq present only for the quadratic kind.
class PredictiveModel {
 public:
  PredictiveModel(ModelKind kind, Vector theta, Vector theta_sq, double bias);

  static PredictiveModel zeros(ModelKind kind, Eigen::Index d);
  static PredictiveModel from_params(ModelKind kind, Eigen::Index d, const Vector& params);

  ModelKind kind() const { return kind_; }
  Eigen::Index dim() const { return theta_.size(); }
  Eigen::Index n_params() const { return kind_ == ModelKind::kQuadratic ? 2 * dim() + 1 : dim() + 1; }

  const Vector& theta() const { return theta_; }
  const Vector& theta_sq() const { return theta_sq_; }
  double bias() const { return bias_; }

  Vector params() const;

  double predict(const Eigen::Ref<const Vector>& x) const;

  /// Predictions for every row of `x`.
  Vector predict_rows(const Matrix& x) const;

  /// Input gradient: theta (+ 2 theta_sq * x).
  Vector grad_x(const Eigen::Ref<const Vector>& x) const;

  /// Gradient of predict() with respect to the parameters, i.e. the feature map.
  Vector dpredict_dparams(const Eigen::Ref<const Vector>& x) const;

  /// Jacobian of grad_x() with respect to the parameters (d x n_params).
  Matrix dgrad_dparams(const Eigen::Ref<const Vector>& x) const;

  bool operator==(const PredictiveModel&) const = default;

 private:
  void check_dim(Eigen::Index d) const;

  ModelKind kind_;
  Vector theta_;
  Vector theta_sq_;
  double bias_;
};

/// Squared-error loss Sum w_i (f(x_i) - y_i)^2 / Sum w_i and its parameter
/// gradient. Empty weights mean unit weights.
struct LossAndGradient {
  double loss = 0.0;
  Vector gradient;
};

LossAndGradient squared_loss(const PredictiveModel& f, const Dataset& data, const Vector& weights = {});

/// Fits f by full-batch gradient descent on the (weighted) mean squared
/// error, starting from `init` or from all-zero parameters.
PredictiveModel fit_predictive(const Dataset& data, ModelKind kind, const GdOptions& options,
                               const Vector& weights = {}, const std::optional<PredictiveModel>& init = {});

/// Closed-form (weighted) least squares, used where an exact fit is wanted.
PredictiveModel fit_least_squares(const Dataset& data, ModelKind kind);

/// Logistic discriminator between original points (label 0) and decided
/// points (label 1). Its logit h(x) yields importance weights e^{h(x)}.
class PropensityModel {
 public:
  PropensityModel(Vector weights, double bias);

  static PropensityModel zeros(Eigen::Index d) { return PropensityModel(Vector::Zero(d), 0.0); }

  const Vector& weights() const { return weights_; }
  double bias() const { return bias_; }
  Eigen::Index dim() const { return weights_.size(); }

  double logit(const Eigen::Ref<const Vector>& x) const;

  /// exp(h(x)) with the logit clamped to [-ln 1000, ln 1000].
  double weight_of(const Eigen::Ref<const Vector>& x) const;

  /// weight_of() for every row.
  Vector weights_for(const Matrix& x) const;

  bool operator==(const PropensityModel&) const = default;

 private:
  Vector weights_;
  double bias_;
};

inline constexpr double kPropensityL2 = 1e-3;
inline constexpr double kMinImportanceWeight = 1e-3;
inline constexpr double kMaxImportanceWeight = 1e3;

/// Minimizes the mean logistic loss of separating `originals` from `decided`
/// plus an L2 penalty on the weights.
PropensityModel fit_propensity(const Matrix& originals, const Matrix& decided, const GdOptions& options,
                               double l2 = kPropensityL2);

/// Ground truth used only to score decisions, never to train.
class Oracle {
 public:
  explicit Oracle(PredictiveModel model) : model_(std::move(model)) {}

  /// -0.8 x^2 + 0.5 x + 0.1, the synthetic experiment's generating curve.
  static Oracle synthetic();

  double operator()(const Eigen::Ref<const Vector>& x) const { return model_.predict(x); }
  const PredictiveModel& model() const { return model_; }

 private:
  PredictiveModel model_;
};

/// Quadratic least-squares fit on all available data, frozen as ground truth.
Oracle fit_oracle(const Dataset& full_data);

}  // namespace lookahead

#endif
