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

#include "lookahead/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lookahead/error.hpp"

namespace lookahead {

std::string_view to_string(ModelKind kind) { return kind == ModelKind::kLinear ? "linear" : "quadratic"; }

ModelKind model_kind_from_string(std::string_view name) {
  if (name == "linear") return ModelKind::kLinear;
  if (name == "quadratic") return ModelKind::kQuadratic;
  throw Error("unknown model kind '" + std::string(name) + "'");
}

PredictiveModel::PredictiveModel(ModelKind kind, Vector theta, Vector theta_sq, double bias)
    : kind_(kind), theta_(std::move(theta)), theta_sq_(std::move(theta_sq)), bias_(bias) {
  if (kind_ == ModelKind::kQuadratic && theta_sq_.size() != theta_.size()) {
    throw DimensionError("quadratic model needs theta_sq of length " + std::to_string(theta_.size()));
  }
  if (kind_ == ModelKind::kLinear && theta_sq_.size() != 0) {
    throw DimensionError("linear model takes no theta_sq");
  }
  if (!theta_.allFinite() || !theta_sq_.allFinite() || !std::isfinite(bias_)) {
    throw Error("predictive model parameters must be finite");
  }
}

PredictiveModel PredictiveModel::zeros(ModelKind kind, Eigen::Index d) {
  return PredictiveModel(kind, Vector::Zero(d), kind == ModelKind::kQuadratic ? Vector::Zero(d) : Vector(), 0.0);
}

PredictiveModel PredictiveModel::from_params(ModelKind kind, Eigen::Index d, const Vector& params) {
  const Eigen::Index expected = kind == ModelKind::kQuadratic ? 2 * d + 1 : d + 1;
  if (params.size() != expected) throw DimensionError("parameter vector has the wrong length");
  if (kind == ModelKind::kQuadratic) {
    return PredictiveModel(kind, params.head(d), params.segment(d, d), params(2 * d));
  }
  return PredictiveModel(kind, params.head(d), Vector(), params(d));
}

Vector PredictiveModel::params() const {
  Vector p(n_params());
  p.head(dim()) = theta_;
  if (kind_ == ModelKind::kQuadratic) p.segment(dim(), dim()) = theta_sq_;
  p(n_params() - 1) = bias_;
  return p;
}

void PredictiveModel::check_dim(Eigen::Index d) const {
  if (d != dim()) {
    throw DimensionError("input has dimension " + std::to_string(d) + ", model expects " + std::to_string(dim()));
  }
}

double PredictiveModel::predict(const Eigen::Ref<const Vector>& x) const {
  check_dim(x.size());
  double value = theta_.dot(x) + bias_;
  if (kind_ == ModelKind::kQuadratic) value += theta_sq_.dot(x.cwiseAbs2());
  return value;
}

Vector PredictiveModel::predict_rows(const Matrix& x) const {
  check_dim(x.cols());
  Vector out = x * theta_;
  if (kind_ == ModelKind::kQuadratic) out += x.cwiseAbs2() * theta_sq_;
  return out.array() + bias_;
}

Vector PredictiveModel::grad_x(const Eigen::Ref<const Vector>& x) const {
  check_dim(x.size());
  if (kind_ == ModelKind::kLinear) return theta_;
  return theta_ + 2.0 * theta_sq_.cwiseProduct(x);
}

Vector PredictiveModel::dpredict_dparams(const Eigen::Ref<const Vector>& x) const {
  check_dim(x.size());
  Vector phi(n_params());
  phi.head(dim()) = x;
  if (kind_ == ModelKind::kQuadratic) phi.segment(dim(), dim()) = x.cwiseAbs2();
  phi(n_params() - 1) = 1.0;
  return phi;
}

Matrix PredictiveModel::dgrad_dparams(const Eigen::Ref<const Vector>& x) const {
  check_dim(x.size());
  Matrix jac = Matrix::Zero(dim(), n_params());
  jac.leftCols(dim()).diagonal().setOnes();
  if (kind_ == ModelKind::kQuadratic) jac.middleCols(dim(), dim()).diagonal() = 2.0 * x;
  return jac;
}

LossAndGradient squared_loss(const PredictiveModel& f, const Dataset& data, const Vector& weights) {
  const Matrix& x = data.features();
  const Vector residual = f.predict_rows(x) - data.outcomes();
  const bool weighted = weights.size() != 0;
  if (weighted && weights.size() != data.rows()) throw DimensionError("weight count does not match row count");
  const double total = weighted ? weights.sum() : static_cast<double>(data.rows());

  LossAndGradient out;
  out.gradient = Vector::Zero(f.n_params());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const double w = weighted ? weights(i) : 1.0;
    loss += w * residual(i) * residual(i);
    out.gradient += (2.0 * w * residual(i)) * f.dpredict_dparams(x.row(i).transpose());
  }
  out.loss = loss / total;
  out.gradient /= total;
  return out;
}

PredictiveModel fit_predictive(const Dataset& data, ModelKind kind, const GdOptions& options, const Vector& weights,
                               const std::optional<PredictiveModel>& init) {
  PredictiveModel f = init ? *init : PredictiveModel::zeros(kind, data.dim());
  if (f.dim() != data.dim()) throw DimensionError("initial model dimension does not match data");
  Vector params = f.params();
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const auto step = squared_loss(f, data, weights);
    if (!std::isfinite(step.loss) || !step.gradient.allFinite()) throw DivergenceError("predictive fit", epoch);
    params -= options.learning_rate * step.gradient;
    if (!params.allFinite()) throw DivergenceError("predictive fit", epoch);
    f = PredictiveModel::from_params(f.kind(), f.dim(), params);
  }
  return f;
}

PredictiveModel fit_least_squares(const Dataset& data, ModelKind kind) {
  const auto probe = PredictiveModel::zeros(kind, data.dim());
  Matrix design(data.rows(), probe.n_params());
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    design.row(i) = probe.dpredict_dparams(data.features().row(i).transpose()).transpose();
  }
  const Vector params = design.completeOrthogonalDecomposition().solve(data.outcomes());
  return PredictiveModel::from_params(kind, data.dim(), params);
}

PropensityModel::PropensityModel(Vector weights, double bias) : weights_(std::move(weights)), bias_(bias) {
  if (!weights_.allFinite() || !std::isfinite(bias_)) throw Error("propensity parameters must be finite");
}

double PropensityModel::logit(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dim()) throw DimensionError("propensity input has the wrong dimension");
  return weights_.dot(x) + bias_;
}

double PropensityModel::weight_of(const Eigen::Ref<const Vector>& x) const {
  const double limit = std::log(kMaxImportanceWeight);
  return std::exp(std::clamp(logit(x), -limit, limit));
}

Vector PropensityModel::weights_for(const Matrix& x) const {
  Vector w(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) w(i) = weight_of(x.row(i).transpose());
  return w;
}

namespace {

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

PropensityModel fit_propensity(const Matrix& originals, const Matrix& decided, const GdOptions& options, double l2) {
  if (originals.rows() == 0 || decided.rows() == 0) throw DimensionError("propensity fit needs both sets non-empty");
  if (originals.cols() != decided.cols()) throw DimensionError("original and decided points differ in dimension");
  const Eigen::Index d = originals.cols();
  const double n0 = static_cast<double>(originals.rows());
  const double n1 = static_cast<double>(decided.rows());

  Vector w = Vector::Zero(d);
  double b = 0.0;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    Vector grad_w = 2.0 * l2 * w;
    double grad_b = 0.0;
    double loss = l2 * w.squaredNorm();
    // label 0: log(1 + e^{h})
    for (Eigen::Index i = 0; i < originals.rows(); ++i) {
      const double h = originals.row(i).dot(w) + b;
      const double p = sigmoid(h) / n0;
      loss += softplus(h) / n0;
      grad_w += p * originals.row(i).transpose();
      grad_b += p;
    }
    // label 1: log(1 + e^{-h})
    for (Eigen::Index i = 0; i < decided.rows(); ++i) {
      const double h = decided.row(i).dot(w) + b;
      const double q = sigmoid(-h) / n1;
      loss += softplus(-h) / n1;
      grad_w -= q * decided.row(i).transpose();
      grad_b -= q;
    }
    if (!std::isfinite(loss)) throw DivergenceError("propensity fit", epoch);
    w -= options.learning_rate * grad_w;
    b -= options.learning_rate * grad_b;
  }
  return PropensityModel(std::move(w), b);
}

Oracle Oracle::synthetic() {
  return Oracle(PredictiveModel(ModelKind::kQuadratic, Vector::Constant(1, 0.5), Vector::Constant(1, -0.8), 0.1));
}

Oracle fit_oracle(const Dataset& full_data) { return Oracle(fit_least_squares(full_data, ModelKind::kQuadratic)); }

}  // namespace lookahead
