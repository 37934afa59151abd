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

#include "lookahead/uncertainty.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <string>

#include "lookahead/error.hpp"
#include "lookahead/rng.hpp"

namespace lookahead {

std::string_view to_string(UncertaintyKind kind) {
  switch (kind) {
    case UncertaintyKind::kVanillaBootstrap:
      return "vanilla_bootstrap";
    case UncertaintyKind::kResidualBootstrap:
      return "residual_bootstrap";
    case UncertaintyKind::kQuantile:
      return "quantile";
  }
  return "unknown";
}

UncertaintyKind uncertainty_kind_from_string(std::string_view name) {
  if (name == "vanilla" || name == "vanilla_bootstrap") return UncertaintyKind::kVanillaBootstrap;
  if (name == "residual" || name == "residual_bootstrap") return UncertaintyKind::kResidualBootstrap;
  if (name == "quantile") return UncertaintyKind::kQuantile;
  throw Error("unknown uncertainty kind '" + std::string(name) + "'");
}

double effective_sample_size(const Vector& weights, EssFormula formula) {
  if (weights.size() == 0) throw DimensionError("effective sample size of an empty weight vector");
  const auto m = static_cast<double>(weights.size());
  double ess = m;
  if (formula == EssFormula::kKish) {
    const double sq = weights.squaredNorm();
    if (sq > 0.0) ess = weights.sum() * weights.sum() / sq;
  } else {
    const double mean = weights.mean();
    const double var = (weights.array() - mean).square().mean();
    if (var >= 1e-12) ess = mean / var;
  }
  return std::min(ess, m);
}

double two_sided_z(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw Error("tau must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 * (1.0 + tau));
}

double pinball_loss(double y, double yhat, double level) {
  const double r = y - yhat;
  return std::max((level - 1.0) * r, level * r);
}

IntervalModel IntervalModel::bootstrap(UncertaintyKind kind, std::vector<PredictiveModel> submodels, double tau,
                                       double noise_var) {
  if (kind == UncertaintyKind::kQuantile) throw Error("bootstrap interval needs a bootstrap kind");
  if (submodels.size() < 2) throw Error("bootstrap interval needs at least two submodels");
  if (!(noise_var >= 0.0)) throw Error("noise variance must be >= 0");
  for (const auto& s : submodels) {
    if (s.dim() != submodels.front().dim()) throw DimensionError("bootstrap submodels differ in dimension");
  }
  IntervalModel g;
  g.kind_ = kind;
  g.tau_ = tau;
  g.z_ = two_sided_z(tau);
  g.noise_var_ = noise_var;
  g.submodels_ = std::move(submodels);
  return g;
}

IntervalModel IntervalModel::quantile(PredictiveModel lower, PredictiveModel upper, double tau) {
  if (lower.dim() != upper.dim()) throw DimensionError("quantile models differ in dimension");
  IntervalModel g;
  g.kind_ = UncertaintyKind::kQuantile;
  g.tau_ = tau;
  g.z_ = two_sided_z(tau);
  g.quantile_models_ = {std::move(lower), std::move(upper)};
  return g;
}

Eigen::Index IntervalModel::dim() const {
  return is_bootstrap() ? submodels_.front().dim() : quantile_models_.front().dim();
}

double IntervalModel::mean(const Eigen::Ref<const Vector>& x) const {
  if (!is_bootstrap()) throw Error("mean() is defined for bootstrap intervals only");
  double sum = 0.0;
  for (const auto& s : submodels_) sum += s.predict(x);
  return sum / static_cast<double>(submodels_.size());
}

double IntervalModel::sigma(const Eigen::Ref<const Vector>& x) const {
  const double mu = mean(x);
  double spread = 0.0;
  for (const auto& s : submodels_) spread += (s.predict(x) - mu) * (s.predict(x) - mu);
  return std::sqrt(spread / static_cast<double>(submodels_.size()) + noise_var_);
}

Interval IntervalModel::predict_interval(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dim()) throw DimensionError("interval query has the wrong dimension");
  if (is_bootstrap()) {
    const double mu = mean(x);
    const double half = z_ * sigma(x);
    return {mu - half, mu + half};
  }
  const double a = quantile_models_[0].predict(x);
  const double b = quantile_models_[1].predict(x);
  return {std::min(a, b), std::max(a, b)};
}

Vector IntervalModel::dlower_dx(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dim()) throw DimensionError("interval query has the wrong dimension");
  if (!is_bootstrap()) {
    const double a = quantile_models_[0].predict(x);
    const double b = quantile_models_[1].predict(x);
    return a <= b ? quantile_models_[0].grad_x(x) : quantile_models_[1].grad_x(x);
  }
  const auto k = static_cast<double>(submodels_.size());
  const double mu = mean(x);
  Vector grad_mu = Vector::Zero(x.size());
  for (const auto& s : submodels_) grad_mu += s.grad_x(x);
  grad_mu /= k;

  // d(sigma^2)/dx = (2/k) sum_i (g_i - mu)(grad g_i - grad mu); noise_var is constant in x.
  Vector grad_var = Vector::Zero(x.size());
  double spread = 0.0;
  for (const auto& s : submodels_) {
    const double dev = s.predict(x) - mu;
    spread += dev * dev;
    grad_var += (2.0 * dev) * (s.grad_x(x) - grad_mu);
  }
  grad_var /= k;
  const double sigma = std::sqrt(spread / k + noise_var_);
  if (sigma <= 0.0) return grad_mu;
  return grad_mu - z_ * grad_var / (2.0 * sigma);
}

namespace {

void check_fit_inputs(const Dataset& data, const Vector& weights, double tau) {
  if (weights.size() != data.rows()) throw DimensionError("one weight per row is required");
  if ((weights.array() <= 0.0).any() || !weights.allFinite()) throw Error("weights must be finite and positive");
  if (!(tau > 0.0 && tau < 1.0)) throw Error("tau must lie in (0, 1)");
}

/// Draws `n` indices in proportion to `weights`.
std::vector<Eigen::Index> weighted_draw(const Vector& weights, Eigen::Index n, Rng& rng) {
  std::vector<double> cumulative(static_cast<std::size_t>(weights.size()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    total += weights(i);
    cumulative[static_cast<std::size_t>(i)] = total;
  }
  std::vector<Eigen::Index> out(static_cast<std::size_t>(n));
  for (auto& index : out) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    index = std::min<Eigen::Index>(it - cumulative.begin(), weights.size() - 1);
  }
  return out;
}

double weighted_residual_variance(const Vector& residual, const Vector& weights) {
  return weights.dot(residual.cwiseAbs2()) / weights.sum();
}

}  // namespace

IntervalModel fit_vanilla_bootstrap(const Dataset& data, const Vector& weights, int k, double tau,
                                    const UncertaintyOptions& options) {
  check_fit_inputs(data, weights, tau);
  if (k < 2) throw Error("bootstrap needs k >= 2");
  const auto n = std::max<Eigen::Index>(2, static_cast<Eigen::Index>(std::ceil(effective_sample_size(weights, options.ess))));

  std::vector<PredictiveModel> submodels;
  submodels.reserve(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) {
    auto rng = Rng::substream(options.seed, Stream::kBootstrap, static_cast<std::uint64_t>(r));
    const Dataset resample = data.select(weighted_draw(weights, n, rng));
    submodels.push_back(fit_predictive(resample, options.model_kind, options.gd));
  }
  auto g = IntervalModel::bootstrap(UncertaintyKind::kVanillaBootstrap, std::move(submodels), tau);
  Vector residual(data.rows());
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    residual(i) = data.outcomes()(i) - g.mean(data.features().row(i).transpose());
  }
  return IntervalModel::bootstrap(UncertaintyKind::kVanillaBootstrap, g.submodels(), tau,
                                  weighted_residual_variance(residual, weights));
}

IntervalModel fit_residual_bootstrap(const Dataset& data, const Vector& weights, int k, double tau,
                                     const UncertaintyOptions& options) {
  check_fit_inputs(data, weights, tau);
  if (k < 2) throw Error("bootstrap needs k >= 2");
  const auto base = fit_predictive(data, options.model_kind, options.gd, weights);
  const Vector fitted = base.predict_rows(data.features());
  const Vector residual = data.outcomes() - fitted;

  std::vector<PredictiveModel> submodels;
  submodels.reserve(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) {
    auto rng = Rng::substream(options.seed, Stream::kResidual, static_cast<std::uint64_t>(r));
    const auto picks = weighted_draw(weights, data.rows(), rng);
    Vector pseudo(data.rows());
    for (Eigen::Index j = 0; j < data.rows(); ++j) pseudo(j) = fitted(j) + residual(picks[static_cast<std::size_t>(j)]);
    submodels.push_back(fit_predictive(data.with_outcomes(std::move(pseudo)), options.model_kind, options.gd, weights));
  }
  return IntervalModel::bootstrap(UncertaintyKind::kResidualBootstrap, std::move(submodels), tau,
                                  weighted_residual_variance(residual, weights));
}

PredictiveModel fit_pinball(const Dataset& data, const Vector& weights, double level, ModelKind kind,
                            const GdOptions& gd) {
  if (!(level > 0.0 && level < 1.0)) throw Error("quantile level must lie in (0, 1)");
  if (weights.size() != data.rows()) throw DimensionError("one weight per row is required");
  const double total = weights.sum();
  auto f = PredictiveModel::zeros(kind, data.dim());
  Vector params = f.params();
  for (int epoch = 0; epoch < gd.epochs; ++epoch) {
    Vector grad = Vector::Zero(f.n_params());
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      const Vector x = data.features().row(i).transpose();
      const double yhat = f.predict(x);
      const double y = data.outcomes()(i);
      // d/dyhat of the tilted loss; zero at the kink.
      const double slope = y > yhat ? -level : (y < yhat ? 1.0 - level : 0.0);
      grad += (weights(i) * slope) * f.dpredict_dparams(x);
    }
    params -= gd.learning_rate * grad / total;
    if (!params.allFinite()) throw DivergenceError("quantile fit", epoch);
    f = PredictiveModel::from_params(kind, data.dim(), params);
  }
  return f;
}

IntervalModel fit_quantile(const Dataset& data, const Vector& weights, double tau, const UncertaintyOptions& options) {
  check_fit_inputs(data, weights, tau);
  auto lower = fit_pinball(data, weights, 0.5 * (1.0 - tau), options.model_kind, options.gd);
  auto upper = fit_pinball(data, weights, 0.5 * (1.0 + tau), options.model_kind, options.gd);
  return IntervalModel::quantile(std::move(lower), std::move(upper), tau);
}

IntervalModel fit_interval(UncertaintyKind kind, const Dataset& data, const Vector& weights, int k, double tau,
                           const UncertaintyOptions& options) {
  switch (kind) {
    case UncertaintyKind::kVanillaBootstrap:
      return fit_vanilla_bootstrap(data, weights, k, tau, options);
    case UncertaintyKind::kResidualBootstrap:
      return fit_residual_bootstrap(data, weights, k, tau, options);
    case UncertaintyKind::kQuantile:
      return fit_quantile(data, weights, tau, options);
  }
  throw Error("unknown uncertainty kind");
}

}  // namespace lookahead
