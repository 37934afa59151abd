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

#ifndef LOOKAHEAD_DATASET_HPP
#define LOOKAHEAD_DATASET_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace lookahead {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Covariates (one row per sample) and their outcomes.
///
/// Construction validates shape and finiteness, so every Dataset seen by the
/// rest of the library holds m >= 2 rows, d >= 1 columns and no NaN/Inf.
class Dataset {
 public:
  Dataset(Matrix features, Vector outcomes, std::vector<std::string> feature_names = {});

  const Matrix& features() const { return features_; }
  const Vector& outcomes() const { return outcomes_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  Eigen::Index rows() const { return features_.rows(); }
  Eigen::Index dim() const { return features_.cols(); }

  /// Subset of rows, in the given order.
  Dataset select(const std::vector<Eigen::Index>& rows) const;

  /// Same outcomes, replaced covariates (e.g. the decided points x').
  Dataset with_features(Matrix features) const;

  /// Same covariates, replaced outcomes.
  Dataset with_outcomes(Vector outcomes) const;

 private:
  Matrix features_;
  Vector outcomes_;
  std::vector<std::string> feature_names_;
};

/// Which coordinates a user may change when acting on a model.
class FeatureMask {
 public:
  FeatureMask() = default;
  explicit FeatureMask(std::vector<bool> flags) : flags_(std::move(flags)) {}

  static FeatureMask all_mutable(Eigen::Index d) { return FeatureMask(std::vector<bool>(d, true)); }

  Eigen::Index size() const { return static_cast<Eigen::Index>(flags_.size()); }
  bool is_mutable(Eigen::Index j) const { return flags_.at(static_cast<std::size_t>(j)); }
  const std::vector<bool>& flags() const { return flags_; }

  /// 1.0 on mutable coordinates, 0.0 elsewhere.
  Vector as_vector() const;

  /// Throws DimensionError unless the mask has exactly d entries.
  void check(Eigen::Index d) const;

 private:
  std::vector<bool> flags_;
};

struct SplitSpec {
  double train_fraction = 0.75;
  std::uint64_t seed = 0;
};

/// Parameters of the synthetic quadratic-curve experiment. The second
/// argument of each normal is a standard deviation.
struct SyntheticSpec {
  double x_mean = -0.8;
  double x_stddev = 0.5;
  double noise_stddev = 0.25;
};

/// Ground-truth curve of the synthetic experiment: -0.8 x^2 + 0.5 x + 0.1.
double synthetic_truth(double x);

/// m one-dimensional samples x ~ N(-0.8, 0.5), y = truth(x) + N(0, 0.25).
Dataset generate_synthetic(Eigen::Index m, std::uint64_t seed, const SyntheticSpec& spec = {});

/// Reads a comma-separated file with a header row. The target column becomes
/// the outcome vector; the mask is true exactly on `mutable_columns`.
std::pair<Dataset, FeatureMask> load_csv(const std::filesystem::path& path, const std::string& target_column,
                                         const std::vector<std::string>& mutable_columns);

/// Random disjoint train/test partition; sizes round to nearest with both
/// sides non-empty.
std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec);

/// Index form of `split`, for callers that need to know which rows went where.
std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> split_indices(Eigen::Index m, const SplitSpec& spec);

/// Rows for which `keep` returns true. Used to draw a biased "active set".
Dataset subsample(const Dataset& data, const std::function<bool(const Eigen::Ref<const Vector>&, double)>& keep);

/// Feature z-scoring and outcome min-max scaling fitted on one dataset.
class Scaler {
 public:
  /// Fits on `train`. Zero-variance feature columns (and a constant outcome)
  /// are passed through unscaled and listed in warnings().
  explicit Scaler(const Dataset& train);

  Dataset transform(const Dataset& data) const;
  Dataset inverse(const Dataset& data) const;

  Vector transform_outcomes(const Vector& y) const;
  Vector inverse_outcomes(const Vector& y) const;

  const Vector& feature_mean() const { return mean_; }
  const Vector& feature_scale() const { return scale_; }
  double outcome_min() const { return y_min_; }
  double outcome_range() const { return y_range_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Vector mean_;
  Vector scale_;
  double y_min_ = 0.0;
  double y_range_ = 1.0;
  std::vector<std::string> warnings_;
};

struct Standardized {
  Dataset train;
  Dataset test;
  Scaler scaler;
};

Standardized standardize(const Dataset& train, const Dataset& test);

}  // namespace lookahead

#endif
