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

#include "lookahead/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lookahead/decision.hpp"
#include "lookahead/error.hpp"
#include "lookahead/format.hpp"
#include "lookahead/training.hpp"

namespace lookahead {

EvalReport evaluate(const PredictiveModel& f, const Oracle& oracle, const Dataset& test, double eta,
                    const FeatureMask& mask, Baseline baseline) {
  const DecisionOutcome decided = decide(f, test, eta, mask);
  const Vector predictions = f.predict_rows(test.features());

  double squared = 0.0;
  double gain = 0.0;
  Eigen::Index improved = 0;
  for (Eigen::Index i = 0; i < test.rows(); ++i) {
    const double y = test.outcomes()(i);
    squared += (predictions(i) - y) * (predictions(i) - y);
    const double reference =
        baseline == Baseline::kObservedLabel ? y : oracle(test.features().row(i).transpose());
    const double after = oracle(decided.decided.row(i).transpose());
    gain += after - reference;
    if (after > reference) ++improved;
  }
  const auto n = static_cast<double>(test.rows());
  return {std::sqrt(squared / n), static_cast<double>(improved) / n, gain / n, test.rows()};
}

std::vector<FrontierPoint> frontier_sweep(const Dataset& train, const Dataset& test, const TrainConfig& config,
                                          std::vector<double> lambda_grid, const Oracle& oracle, bool keep_going) {
  if (lambda_grid.empty()) throw Error("lambda grid is empty");
  std::sort(lambda_grid.begin(), lambda_grid.end());
  const FeatureMask mask = config.resolved_mask(train.dim());

  std::vector<FrontierPoint> points;
  points.reserve(lambda_grid.size());
  for (const double lambda : lambda_grid) {
    FrontierPoint point;
    point.lambda = lambda;
    TrainConfig run = config;
    run.lambda = lambda;
    try {
      const auto bundle = train_lookahead(train, run);
      point.report = evaluate(bundle.predictive, oracle, test, run.eta, mask);
      point.final_penalty = bundle.trace.back().penalty;
    } catch (const Error& e) {
      if (!keep_going) throw Error("lambda=" + format_double(lambda) + ": " + e.what());
      point.error = e.what();
    }
    points.push_back(std::move(point));
  }
  return points;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double average = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) out[order[t]] = average;
    i = j + 1;
  }
  return out;
}

}  // namespace

double spearman_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionError("spearman inputs differ in length");
  if (a.size() < 2) return 0.0;
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const auto n = static_cast<double>(a.size());
  const double mean = 0.5 * (n + 1.0);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

}  // namespace lookahead
