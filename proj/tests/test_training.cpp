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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "lookahead/decision.hpp"
#include "lookahead/training.hpp"
#include "test_support.hpp"

namespace lookahead {
namespace {

using testing::random_model;

PredictiveModel constant(double c, Eigen::Index d = 1) {
  return PredictiveModel(ModelKind::kLinear, Vector::Zero(d), Vector(), c);
}

IntervalModel constant_band(double lower, double upper, Eigen::Index d = 1) {
  return IntervalModel::quantile(constant(lower, d), constant(upper, d), 0.9);
}

Dataset two_points(double y) { return Dataset(Matrix::Zero(2, 1), Vector::Constant(2, y)); }

TrainConfig small_config() {
  TrainConfig c;
  c.rounds = 3;
  c.epochs_init = 300;
  c.epochs_per_round = 60;
  c.learning_rate = 0.01;
  c.n_bootstrap = 4;
  c.uncertainty_epochs = 200;
  c.propensity_epochs = 200;
  c.seed = 5;
  return c;
}

/// Smallest |y - lower(x')| over the rows, used to skip draws near a hinge kink.
double kink_distance(const PredictiveModel& f, const IntervalModel& g, const Dataset& data, double eta,
                     const FeatureMask& mask) {
  double closest = INFINITY;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const Vector decided = decide_point(f, data.features().row(i).transpose(), eta, mask);
    closest = std::min(closest, std::abs(data.outcomes()(i) - g.lower(decided)));
  }
  return closest;
}

double naive_kink_distance(const PredictiveModel& f, const Dataset& data, double eta, const FeatureMask& mask) {
  double closest = INFINITY;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const Vector decided = decide_point(f, data.features().row(i).transpose(), eta, mask);
    closest = std::min(closest, std::abs(data.outcomes()(i) - f.predict(decided)));
  }
  return closest;
}

TEST(Penalty, InactiveHingeIsZero) {
  const auto mask = FeatureMask::all_mutable(1);
  EXPECT_DOUBLE_EQ(lookahead_penalty(constant(0.0), constant_band(2.0, 3.0), two_points(1.0), 1.0, mask), 0.0);
}

TEST(Penalty, HingeArithmetic) {
  const auto mask = FeatureMask::all_mutable(1);
  EXPECT_DOUBLE_EQ(lookahead_penalty(constant(0.0), constant_band(0.25, 3.0), two_points(1.0), 1.0, mask), 0.75);
}

TEST(Penalty, IdentityDecisionInsideExactBand) {
  const auto data = generate_synthetic(20, 1, {-0.8, 0.5, 0.0});
  const auto truth = Oracle::synthetic().model();
  const auto g = IntervalModel::bootstrap(UncertaintyKind::kVanillaBootstrap, {truth, truth}, 0.9);
  EXPECT_NEAR(lookahead_penalty(truth, g, data, 0.0, FeatureMask::all_mutable(1)), 0.0, 1e-15);
}

TEST(Objective, DegenerateLambdaIsMse) {
  Rng rng = Rng::substream(1, Stream::kTest);
  const auto data = testing::random_dataset(rng, 15, 2);
  const auto f = random_model(rng, ModelKind::kQuadratic, 2);
  const auto g = constant_band(-5.0, 5.0, 2);
  const auto mask = FeatureMask::all_mutable(2);
  const auto mse = squared_loss(f, data);
  EXPECT_EQ(lookahead_objective(f, g, data, 0.0, 1.0, mask), mse.loss);
  EXPECT_EQ(grad_lookahead(f, g, data, 0.0, 1.0, mask), mse.gradient);
}

TEST(Objective, Arithmetic) {
  // Squared error 1 at both rows, slack 0.5 at both rows.
  const auto mask = FeatureMask::all_mutable(1);
  EXPECT_DOUBLE_EQ(lookahead_objective(constant(0.0), constant_band(0.5, 2.0), two_points(1.0), 4.0, 1.0, mask),
                   3.0);
}

TEST(Gradient, InactiveHingesGiveMseGradient) {
  Rng rng = Rng::substream(2, Stream::kTest);
  const auto data = testing::random_dataset(rng, 10, 1);
  const auto f = random_model(rng, ModelKind::kQuadratic, 1);
  const auto g = constant_band(100.0, 200.0);
  const auto terms = lookahead_terms(f, g, data, 4.0, 1.0, FeatureMask::all_mutable(1));
  EXPECT_EQ(terms.active_count, 0);
  EXPECT_EQ(terms.gradient, squared_loss(f, data).gradient);
}

TEST(Gradient, LookaheadMatchesFiniteDifferences) {
  Rng rng = Rng::substream(3, Stream::kTest);
  const FeatureMask mask({true, false});
  int checked = 0;
  for (int draw = 0; draw < 80; ++draw) {
    const auto kind = draw % 2 ? ModelKind::kLinear : ModelKind::kQuadratic;
    const auto data = testing::random_dataset(rng, 8, 2);
    const auto f = random_model(rng, kind, 2);
    std::vector<PredictiveModel> subs;
    for (int r = 0; r < 3; ++r) subs.push_back(random_model(rng, ModelKind::kQuadratic, 2, 0.3));
    const auto g = IntervalModel::bootstrap(UncertaintyKind::kVanillaBootstrap, subs, 0.9, 0.05);
    const double eta = 0.1 + rng.uniform();
    if (kink_distance(f, g, data, eta, mask) < 1e-3) continue;
    const Vector fd = testing::central_difference(
        [&](const Vector& p) {
          return lookahead_objective(PredictiveModel::from_params(kind, 2, p), g, data, 4.0, eta, mask);
        },
        f.params());
    EXPECT_LT(testing::relative_gap(grad_lookahead(f, g, data, 4.0, eta, mask), fd), 1e-4) << "draw " << draw;
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(Gradient, NaiveMatchesFiniteDifferences) {
  Rng rng = Rng::substream(4, Stream::kTest);
  const auto mask = FeatureMask::all_mutable(2);
  int checked = 0;
  for (int draw = 0; draw < 80; ++draw) {
    const auto kind = draw % 2 ? ModelKind::kLinear : ModelKind::kQuadratic;
    const auto data = testing::random_dataset(rng, 8, 2);
    const auto f = random_model(rng, kind, 2);
    const double eta = 0.1 + rng.uniform();
    if (naive_kink_distance(f, data, eta, mask) < 1e-3) continue;
    const Vector fd = testing::central_difference(
        [&](const Vector& p) { return naive_objective(PredictiveModel::from_params(kind, 2, p), data, 4.0, eta, mask); },
        f.params());
    EXPECT_LT(testing::relative_gap(grad_naive(f, data, 4.0, eta, mask), fd), 1e-4) << "draw " << draw;
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(Gradient, ImmutableCoordinatesContributeNothing) {
  // With every coordinate frozen, x' = x and the penalty is constant in the
  // parameters, so only the MSE gradient remains.
  Rng rng = Rng::substream(5, Stream::kTest);
  const auto data = testing::random_dataset(rng, 10, 2);
  const auto f = random_model(rng, ModelKind::kQuadratic, 2);
  const auto g = constant_band(-100.0, -99.0, 2);
  const auto terms = lookahead_terms(f, g, data, 4.0, 2.0, FeatureMask({false, false}));
  EXPECT_EQ(terms.active_count, 10);
  EXPECT_EQ(terms.gradient, squared_loss(f, data).gradient);
}

TEST(Descent, ObjectiveNonincreasingForSmallSteps) {
  const auto data = generate_synthetic(25, 2);
  const auto truth = Oracle::synthetic().model();
  std::vector<PredictiveModel> subs = {truth, PredictiveModel::from_params(ModelKind::kQuadratic, 1,
                                                                           truth.params().array() + 0.05)};
  const auto g = IntervalModel::bootstrap(UncertaintyKind::kVanillaBootstrap, subs, 0.95, 0.01);
  const auto mask = FeatureMask::all_mutable(1);
  auto f = fit_least_squares(data, ModelKind::kQuadratic);
  double previous = lookahead_objective(f, g, data, 4.0, 1.25, mask);
  for (int epoch = 0; epoch < 200; ++epoch) {
    const Vector p = f.params() - 1e-4 * grad_lookahead(f, g, data, 4.0, 1.25, mask);
    f = PredictiveModel::from_params(ModelKind::kQuadratic, 1, p);
    const double now = lookahead_objective(f, g, data, 4.0, 1.25, mask);
    EXPECT_LE(now, previous + 1e-12) << "epoch " << epoch;
    previous = now;
  }
}

TEST(TrainLookahead, ZeroLambdaMatchesPlainTraining) {
  auto config = small_config();
  config.lambda = 0.0;
  const auto data = generate_synthetic(25, 3);
  const auto bundle = train_lookahead(data, config);
  const auto plain = fit_predictive(data, config.model_kind,
                                    {config.learning_rate, config.epochs_init + config.rounds * config.epochs_per_round});
  EXPECT_LT((bundle.predictive.params() - plain.params()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(TrainLookahead, Deterministic) {
  const auto data = generate_synthetic(25, 4);
  const auto a = train_lookahead(data, small_config());
  const auto b = train_lookahead(data, small_config());
  EXPECT_EQ(a.predictive, b.predictive);
  EXPECT_EQ(a.interval, b.interval);
  EXPECT_EQ(a.propensity, b.propensity);
  EXPECT_EQ(a.trace, b.trace);
}

TEST(TrainLookahead, DefaultSyntheticConfigCompletes) {
  const auto [train, test] = split(generate_synthetic(25, 1), {0.75, 1});
  const auto bundle = train_lookahead(train, TrainConfig{});
  ASSERT_EQ(bundle.trace.size(), 5u);
  for (const auto& t : bundle.trace) {
    EXPECT_TRUE(std::isfinite(t.train_mse));
    EXPECT_TRUE(std::isfinite(t.penalty));
  }
  EXPECT_EQ(bundle.interval.submodels().size(), 10u);
}

TEST(TrainLookahead, PenaltyDropsAcrossRounds) {
  std::vector<double> first, last;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    TrainConfig config;
    config.seed = seed;
    const auto [train, test] = split(generate_synthetic(25, seed), {0.75, seed});
    const auto trace = train_lookahead(train, config).trace;
    first.push_back(trace.front().penalty);
    last.push_back(trace.back().penalty);
  }
  std::nth_element(first.begin(), first.begin() + 2, first.end());
  std::nth_element(last.begin(), last.begin() + 2, last.end());
  EXPECT_LE(last[2], first[2]);
}

TEST(TrainLookahead, DivergenceNamesRoundAndStage) {
  auto config = small_config();
  config.learning_rate = 100.0;
  try {
    train_lookahead(generate_synthetic(25, 1), config);
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_EQ(e.round(), 0);
    EXPECT_EQ(e.stage(), "predictive_init");
  }
}

TEST(TrainNaive, ZeroLambdaIsPlainTraining) {
  const auto data = generate_synthetic(25, 6);
  const auto naive = train_naive(data, 0.0, 1.25, FeatureMask::all_mutable(1), ModelKind::kQuadratic, {0.01, 500});
  const auto plain = fit_predictive(data, ModelKind::kQuadratic, {0.01, 500});
  EXPECT_LT((naive.params() - plain.params()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TrainNaive, OverstatesImprovementUnderLargeSteps) {
  const double eta = 3.5;
  const auto data = generate_synthetic(25, 2);
  const auto mask = FeatureMask::all_mutable(1);
  const auto f = train_naive(data, 4.0, eta, mask, ModelKind::kQuadratic, {0.001, 20000});
  const auto decided = decide(f, data, eta, mask).decided;
  const auto oracle = Oracle::synthetic();
  int predicted = 0, realized = 0;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const Vector x = decided.row(i).transpose();
    predicted += f.predict(x) > data.outcomes()(i);
    realized += oracle(x) > data.outcomes()(i);
  }
  EXPECT_LT(realized, predicted);
}

}  // namespace
}  // namespace lookahead
