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

#include "lookahead/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lookahead/error.hpp"
#include "lookahead/rng.hpp"

namespace lookahead {

Dataset::Dataset(Matrix features, Vector outcomes, std::vector<std::string> feature_names)
    : features_(std::move(features)), outcomes_(std::move(outcomes)), feature_names_(std::move(feature_names)) {
  if (features_.rows() != outcomes_.size()) {
    throw DimensionError("dataset has " + std::to_string(features_.rows()) + " feature rows but " +
                         std::to_string(outcomes_.size()) + " outcomes");
  }
  if (features_.cols() < 1) throw DimensionError("dataset needs at least one feature column");
  if (features_.rows() < 2) throw DimensionError("dataset needs at least two rows");
  if (!feature_names_.empty() && static_cast<Eigen::Index>(feature_names_.size()) != features_.cols()) {
    throw DimensionError("feature name count does not match column count");
  }
  if (!features_.allFinite() || !outcomes_.allFinite()) {
    for (Eigen::Index i = 0; i < features_.rows(); ++i) {
      for (Eigen::Index j = 0; j < features_.cols(); ++j) {
        if (!std::isfinite(features_(i, j))) {
          throw DataError("non-finite feature at row " + std::to_string(i) + ", column " + std::to_string(j));
        }
      }
      if (!std::isfinite(outcomes_(i))) throw DataError("non-finite outcome at row " + std::to_string(i));
    }
  }
}

Dataset Dataset::select(const std::vector<Eigen::Index>& rows) const {
  Matrix x(static_cast<Eigen::Index>(rows.size()), dim());
  Vector y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto i = rows[r];
    if (i < 0 || i >= this->rows()) throw DimensionError("row index out of range");
    x.row(static_cast<Eigen::Index>(r)) = features_.row(i);
    y(static_cast<Eigen::Index>(r)) = outcomes_(i);
  }
  return Dataset(std::move(x), std::move(y), feature_names_);
}

Dataset Dataset::with_features(Matrix features) const {
  if (features.cols() != dim()) throw DimensionError("replacement features change the dimension");
  return Dataset(std::move(features), outcomes_, feature_names_);
}

Dataset Dataset::with_outcomes(Vector outcomes) const { return Dataset(features_, std::move(outcomes), feature_names_); }

Vector FeatureMask::as_vector() const {
  Vector v(size());
  for (Eigen::Index j = 0; j < size(); ++j) v(j) = is_mutable(j) ? 1.0 : 0.0;
  return v;
}

void FeatureMask::check(Eigen::Index d) const {
  if (size() != d) {
    throw DimensionError("mask has " + std::to_string(size()) + " entries for dimension " + std::to_string(d));
  }
}

double synthetic_truth(double x) { return -0.8 * x * x + 0.5 * x + 0.1; }

Dataset generate_synthetic(Eigen::Index m, std::uint64_t seed, const SyntheticSpec& spec) {
  if (m < 2) throw DimensionError("synthetic data needs m >= 2");
  auto feature_rng = Rng::substream(seed, Stream::kFeatures);
  auto noise_rng = Rng::substream(seed, Stream::kNoise);
  Matrix x(m, 1);
  Vector y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    x(i, 0) = feature_rng.normal(spec.x_mean, spec.x_stddev);
    y(i) = synthetic_truth(x(i, 0)) + noise_rng.normal(0.0, spec.noise_stddev);
  }
  return Dataset(std::move(x), std::move(y), {"x"});
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

bool parse_double(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

std::pair<Dataset, FeatureMask> load_csv(const std::filesystem::path& path, const std::string& target_column,
                                         const std::vector<std::string>& mutable_columns) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_line(line);
  for (auto& h : header) h = trim(h);

  const auto target_it = std::find(header.begin(), header.end(), target_column);
  if (target_it == header.end()) throw DataError(path.string() + ": missing target column '" + target_column + "'");
  const auto target_index = static_cast<std::size_t>(target_it - header.begin());
  for (const auto& name : mutable_columns) {
    if (name == target_column || std::find(header.begin(), header.end(), name) == header.end()) {
      throw DataError(path.string() + ": missing feature column '" + name + "'");
    }
  }

  std::vector<std::string> names;
  std::vector<bool> flags;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == target_index) continue;
    names.push_back(header[c]);
    flags.push_back(std::find(mutable_columns.begin(), mutable_columns.end(), header[c]) != mutable_columns.end());
  }

  std::vector<std::vector<double>> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw DataError(path.string() + ": line " + std::to_string(line_number) + " has " +
                      std::to_string(cells.size()) + " cells, expected " + std::to_string(header.size()));
    }
    std::vector<double> values(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_double(trim(cells[c]), values[c])) {
        throw DataError(path.string() + ": non-numeric cell '" + trim(cells[c]) + "' at line " +
                        std::to_string(line_number) + ", column '" + header[c] + "'");
      }
    }
    rows.push_back(std::move(values));
  }

  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(names.size());
  Matrix x(m, d);
  Vector y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index j = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == target_index) {
        y(i) = rows[static_cast<std::size_t>(i)][c];
      } else {
        x(i, j++) = rows[static_cast<std::size_t>(i)][c];
      }
    }
  }
  return {Dataset(std::move(x), std::move(y), std::move(names)), FeatureMask(std::move(flags))};
}

std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> split_indices(Eigen::Index m, const SplitSpec& spec) {
  if (m < 4) throw DimensionError("split needs at least four rows");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw Error("train fraction must lie in (0, 1)");
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto rng = Rng::substream(spec.seed, Stream::kSplit);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }
  auto n_train = static_cast<Eigen::Index>(std::llround(spec.train_fraction * static_cast<double>(m)));
  // Every Dataset holds at least two rows, so both sides keep two.
  n_train = std::clamp<Eigen::Index>(n_train, 2, m - 2);
  std::vector<Eigen::Index> train(order.begin(), order.begin() + n_train);
  std::vector<Eigen::Index> test(order.begin() + n_train, order.end());
  return {std::move(train), std::move(test)};
}

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec) {
  const auto [train, test] = split_indices(data.rows(), spec);
  return {data.select(train), data.select(test)};
}

Dataset subsample(const Dataset& data, const std::function<bool(const Eigen::Ref<const Vector>&, double)>& keep) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const Vector x = data.features().row(i).transpose();
    if (keep(x, data.outcomes()(i))) rows.push_back(i);
  }
  return data.select(rows);
}

Scaler::Scaler(const Dataset& train) {
  const auto& x = train.features();
  const auto m = static_cast<double>(x.rows());
  mean_ = x.colwise().mean().transpose();
  scale_ = Vector::Ones(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double var = (x.col(j).array() - mean_(j)).square().sum() / m;
    if (var < 1e-24) {
      mean_(j) = 0.0;
      const std::string name = train.feature_names().empty() ? std::to_string(j) : train.feature_names()[j];
      warnings_.push_back("feature column '" + name + "' has zero variance; passed through unscaled");
    } else {
      scale_(j) = std::sqrt(var);
    }
  }
  y_min_ = train.outcomes().minCoeff();
  y_range_ = train.outcomes().maxCoeff() - y_min_;
  if (y_range_ <= 0.0) {
    y_min_ = 0.0;
    y_range_ = 1.0;
    warnings_.emplace_back("outcome is constant; passed through unscaled");
  }
}

Dataset Scaler::transform(const Dataset& data) const {
  Matrix x = (data.features().rowwise() - mean_.transpose()).array().rowwise() / scale_.transpose().array();
  return Dataset(std::move(x), transform_outcomes(data.outcomes()), data.feature_names());
}

Dataset Scaler::inverse(const Dataset& data) const {
  Matrix x = (data.features().array().rowwise() * scale_.transpose().array()).matrix().rowwise() + mean_.transpose();
  return Dataset(std::move(x), inverse_outcomes(data.outcomes()), data.feature_names());
}

Vector Scaler::transform_outcomes(const Vector& y) const { return (y.array() - y_min_) / y_range_; }

Vector Scaler::inverse_outcomes(const Vector& y) const { return y.array() * y_range_ + y_min_; }

Standardized standardize(const Dataset& train, const Dataset& test) {
  if (test.dim() != train.dim()) throw DimensionError("train and test dimensions differ");
  Scaler scaler(train);
  return {scaler.transform(train), scaler.transform(test), std::move(scaler)};
}

}  // namespace lookahead
