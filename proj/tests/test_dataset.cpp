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

#include <numeric>
#include <set>

#include "lookahead/dataset.hpp"
#include "lookahead/error.hpp"
#include "test_support.hpp"

namespace lookahead {
namespace {

using testing::scratch_dir;
using testing::write_text;

TEST(Synthetic, ShapeAndDeterminism) {
  const auto a = generate_synthetic(25, 3);
  const auto b = generate_synthetic(25, 3);
  EXPECT_EQ(a.rows(), 25);
  EXPECT_EQ(a.dim(), 1);
  EXPECT_EQ(a.features(), b.features());
  EXPECT_EQ(a.outcomes(), b.outcomes());
  EXPECT_NE(generate_synthetic(25, 4).features(), a.features());
}

TEST(Synthetic, TruthAtOriginIsConstantTerm) { EXPECT_DOUBLE_EQ(synthetic_truth(0.0), 0.1); }

TEST(Synthetic, NoiselessLabelsFollowTruth) {
  const auto data = generate_synthetic(50, 1, {-0.8, 0.5, 0.0});
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const double x = data.features()(i, 0);
    EXPECT_DOUBLE_EQ(data.outcomes()(i), -0.8 * x * x + 0.5 * x + 0.1);
  }
}

TEST(Synthetic, FeatureMeanConverges) {
  const auto data = generate_synthetic(100000, 11);
  EXPECT_NEAR(data.features().col(0).mean(), -0.8, 0.01);
  const double var = (data.features().col(0).array() + 0.8).square().mean();
  EXPECT_NEAR(std::sqrt(var), 0.5, 0.01);
}

TEST(Dataset, RejectsBadShapes) {
  EXPECT_THROW(Dataset(Matrix::Zero(3, 1), Vector::Zero(2)), DimensionError);
  EXPECT_THROW(Dataset(Matrix::Zero(1, 1), Vector::Zero(1)), DimensionError);
  Matrix x = Matrix::Zero(2, 1);
  x(0, 0) = std::nan("");
  EXPECT_THROW(Dataset(x, Vector::Zero(2)), DataError);
}

TEST(Csv, ParsesColumnsAndMask) {
  const auto dir = scratch_dir("csv_basic");
  write_text(dir / "d.csv", "a,b,y\n1,2,3\n4,5,6\n7,8,9\n");
  const auto [data, mask] = load_csv(dir / "d.csv", "y", {"a"});
  EXPECT_EQ(data.rows(), 3);
  EXPECT_EQ(data.dim(), 2);
  EXPECT_EQ(mask.flags(), (std::vector<bool>{true, false}));
  EXPECT_EQ(data.feature_names(), (std::vector<std::string>{"a", "b"}));
  EXPECT_DOUBLE_EQ(data.features()(1, 1), 5.0);
  EXPECT_DOUBLE_EQ(data.outcomes()(2), 9.0);
}

TEST(Csv, TargetNeedNotBeLastAndHandlesCrlfQuotesBom) {
  const auto dir = scratch_dir("csv_dialect");
  write_text(dir / "d.csv", "\xEF\xBB\xBF\"y\",x\r\n1,2\r\n3,4\r\n");
  const auto [data, mask] = load_csv(dir / "d.csv", "y", {});
  EXPECT_EQ(data.dim(), 1);
  EXPECT_DOUBLE_EQ(data.outcomes()(1), 3.0);
  EXPECT_DOUBLE_EQ(data.features()(1, 0), 4.0);
}

TEST(Csv, NonNumericCellIsNamed) {
  const auto dir = scratch_dir("csv_bad_cell");
  write_text(dir / "d.csv", "a,y\n1,2\nabc,3\n");
  try {
    load_csv(dir / "d.csv", "y", {});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("abc"), std::string::npos) << what;
    EXPECT_NE(what.find("line 3"), std::string::npos) << what;
  }
}

TEST(Csv, MissingColumnsAreNamed) {
  const auto dir = scratch_dir("csv_missing");
  write_text(dir / "d.csv", "a,y\n1,2\n3,4\n");
  try {
    load_csv(dir / "d.csv", "quality", {});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("quality"), std::string::npos);
  }
  EXPECT_THROW(load_csv(dir / "d.csv", "y", {"nope"}), DataError);
  EXPECT_THROW(load_csv(dir / "absent.csv", "y", {}), DataError);
}

TEST(Split, SizesAndPartition) {
  const auto [train, test] = split_indices(100, {0.75, 9});
  EXPECT_EQ(train.size(), 75u);
  EXPECT_EQ(test.size(), 25u);
  std::set<Eigen::Index> all(train.begin(), train.end());
  all.insert(test.begin(), test.end());
  EXPECT_EQ(all.size(), 100u);
  EXPECT_EQ(*all.begin(), 0);
  EXPECT_EQ(*all.rbegin(), 99);
}

TEST(Split, DeterministicPerSeed) {
  EXPECT_EQ(split_indices(40, {0.75, 5}), split_indices(40, {0.75, 5}));
  EXPECT_NE(split_indices(40, {0.75, 5}), split_indices(40, {0.75, 6}));
}

TEST(Split, KeepsTwoRowsPerSide) {
  const auto [train, test] = split_indices(10, {0.99, 1});
  EXPECT_EQ(train.size(), 8u);
  EXPECT_EQ(test.size(), 2u);
  EXPECT_THROW(split_indices(3, {0.5, 1}), DimensionError);
  EXPECT_THROW(split_indices(10, {1.0, 1}), Error);
}

TEST(Split, SyntheticDefaultIs19And6) {
  const auto [train, test] = split(generate_synthetic(25, 1), {0.75, 1});
  EXPECT_EQ(train.rows(), 19);
  EXPECT_EQ(test.rows(), 6);
}

TEST(Subsample, KeepsMatchingRows) {
  const auto data = generate_synthetic(200, 2);
  const auto kept = subsample(data, [](const auto& x, double) { return x(0) < -0.8; });
  for (Eigen::Index i = 0; i < kept.rows(); ++i) EXPECT_LT(kept.features()(i, 0), -0.8);
  EXPECT_GT(kept.rows(), 50);
  EXPECT_LT(kept.rows(), 150);
}

TEST(Scaler, TwoPointZScore) {
  Matrix x(2, 1);
  x << 0.0, 2.0;
  const Scaler scaler(Dataset(x, Vector::LinSpaced(2, 0.0, 1.0)));
  const auto t = scaler.transform(Dataset(x, Vector::LinSpaced(2, 0.0, 1.0)));
  EXPECT_DOUBLE_EQ(t.features()(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(t.features()(1, 0), 1.0);
}

TEST(Scaler, OutcomesMinMax) {
  Matrix x(3, 1);
  x << 1.0, 2.0, 4.0;
  Vector y(3);
  y << 10.0, 20.0, 30.0;
  const Scaler scaler(Dataset(x, y));
  const Vector t = scaler.transform_outcomes(y);
  EXPECT_DOUBLE_EQ(t(0), 0.0);
  EXPECT_DOUBLE_EQ(t(1), 0.5);
  EXPECT_DOUBLE_EQ(t(2), 1.0);
}

TEST(Scaler, RoundTrip) {
  Rng rng = Rng::substream(4, Stream::kTest);
  const auto data = testing::random_dataset(rng, 30, 4);
  const Scaler scaler(data);
  const auto back = scaler.inverse(scaler.transform(data));
  EXPECT_LT((back.features() - data.features()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((back.outcomes() - data.outcomes()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Scaler, ConstantColumnPassesThroughWithWarning) {
  Matrix x(3, 2);
  x << 1.0, 5.0, 2.0, 5.0, 3.0, 5.0;
  const Dataset data(x, Vector::LinSpaced(3, 0.0, 1.0), {"a", "flat"});
  const Scaler scaler(data);
  ASSERT_EQ(scaler.warnings().size(), 1u);
  EXPECT_NE(scaler.warnings()[0].find("flat"), std::string::npos);
  EXPECT_TRUE(scaler.transform(data).features().allFinite());
}

TEST(Scaler, StandardizeUsesTrainStatistics) {
  const auto [train, test] = split(generate_synthetic(40, 3), {0.75, 3});
  const auto s = standardize(train, test);
  EXPECT_NEAR(s.train.features().col(0).mean(), 0.0, 1e-12);
  EXPECT_NEAR(s.train.outcomes().minCoeff(), 0.0, 1e-12);
  EXPECT_NEAR(s.train.outcomes().maxCoeff(), 1.0, 1e-12);
  EXPECT_EQ(s.test.rows(), test.rows());
}

}  // namespace
}  // namespace lookahead
