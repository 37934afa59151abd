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

// Reference computations shared by the tests. Nothing here calls into the
// library's own derivative or quantile code.

#ifndef LOOKAHEAD_TESTS_TEST_SUPPORT_HPP
#define LOOKAHEAD_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lookahead/dataset.hpp"
#include "lookahead/models.hpp"
#include "lookahead/rng.hpp"

namespace lookahead::testing {

/// Central difference of a scalar function of a vector.
inline Vector central_difference(const std::function<double(const Vector&)>& fn, const Vector& at, double h = 1e-6) {
  Vector g(at.size());
  for (Eigen::Index i = 0; i < at.size(); ++i) {
    Vector up = at, down = at;
    up(i) += h;
    down(i) -= h;
    g(i) = (fn(up) - fn(down)) / (2.0 * h);
  }
  return g;
}

/// Jacobian (rows = outputs) of a vector function by central differences.
inline Matrix central_jacobian(const std::function<Vector(const Vector&)>& fn, const Vector& at, double h = 1e-6) {
  const Eigen::Index n_out = fn(at).size();
  Matrix jac(n_out, at.size());
  for (Eigen::Index i = 0; i < at.size(); ++i) {
    Vector up = at, down = at;
    up(i) += h;
    down(i) -= h;
    jac.col(i) = (fn(up) - fn(down)) / (2.0 * h);
  }
  return jac;
}

/// Largest absolute entry difference, scaled by max(1, |reference|).
inline double relative_gap(const Matrix& got, const Matrix& want) {
  const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
  return (got - want).cwiseAbs().maxCoeff() / scale;
}

inline Vector random_vector(Rng& rng, Eigen::Index n, double scale = 1.0) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal(0.0, scale);
  return v;
}

inline PredictiveModel random_model(Rng& rng, ModelKind kind, Eigen::Index d, double scale = 0.5) {
  const Eigen::Index n = kind == ModelKind::kLinear ? d + 1 : 2 * d + 1;
  return PredictiveModel::from_params(kind, d, random_vector(rng, n, scale));
}

inline Dataset random_dataset(Rng& rng, Eigen::Index m, Eigen::Index d) {
  Matrix x(m, d);
  for (Eigen::Index i = 0; i < m; ++i) x.row(i) = random_vector(rng, d).transpose();
  return Dataset(x, random_vector(rng, m));
}

/// Standard normal upper quantile by bisection on erfc.
inline double normal_upper_quantile(double tail) {
  double lo = 0.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(mid / std::sqrt(2.0)) > tail) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Empirical level-quantile (order statistic ceil(level * n)) together with
/// its two neighbours in the sorted sample.
struct EmpiricalQuantile {
  double value;
  double below;
  double above;
};

inline EmpiricalQuantile empirical_quantile(std::vector<double> values, double level) {
  std::sort(values.begin(), values.end());
  const auto n = static_cast<long>(values.size());
  const long k = std::clamp(static_cast<long>(std::ceil(level * static_cast<double>(n))), 1L, n) - 1;
  const auto at = [&](long i) { return values[static_cast<std::size_t>(std::clamp(i, 0L, n - 1))]; };
  return {at(k), at(k - 1), at(k + 1)};
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Fresh directory under the build tree's temp area.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("lookahead_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace lookahead::testing

#endif
