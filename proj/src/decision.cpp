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

#include "lookahead/decision.hpp"

#include <fstream>

#include "lookahead/error.hpp"
#include "lookahead/format.hpp"

namespace lookahead {

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw Error("decision step size eta must be finite and >= 0");
}

}  // namespace

Vector decide_point(const PredictiveModel& f, const Eigen::Ref<const Vector>& x, double eta, const FeatureMask& mask) {
  check_eta(eta);
  mask.check(x.size());
  const Vector grad = f.grad_x(x);
  Vector out = x;
  // Immutable coordinates are copied, not computed as x + 0, so they stay bitwise equal.
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (mask.is_mutable(j)) out(j) = x(j) + eta * grad(j);
  }
  return out;
}

DecisionOutcome decide(const PredictiveModel& f, const Matrix& features, double eta, const FeatureMask& mask) {
  check_eta(eta);
  mask.check(features.cols());
  DecisionOutcome out{features, Matrix::Zero(features.rows(), features.cols())};
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    const Vector x = features.row(i).transpose();
    const Vector grad = f.grad_x(x);
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      if (!mask.is_mutable(j)) continue;
      out.displacement(i, j) = eta * grad(j);
      out.decided(i, j) = x(j) + out.displacement(i, j);
    }
  }
  return out;
}

Matrix ddecided_dparams(const PredictiveModel& f, const Eigen::Ref<const Vector>& x, double eta,
                        const FeatureMask& mask) {
  check_eta(eta);
  mask.check(x.size());
  return eta * (mask.as_vector().asDiagonal() * f.dgrad_dparams(x));
}

void write_decisions_csv(const std::filesystem::path& path, const DecisionOutcome& outcome,
                         const std::vector<std::string>& feature_names) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  const Eigen::Index d = outcome.decided.cols();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (j > 0) out << ',';
    out << (feature_names.empty() ? "x" + std::to_string(j) : feature_names[static_cast<std::size_t>(j)]);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < outcome.decided.rows(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j > 0) out << ',';
      out << format_double(outcome.decided(i, j));
    }
    out << '\n';
  }
}

}  // namespace lookahead
