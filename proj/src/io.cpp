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

#include "lookahead/io.hpp"

#include <fstream>
#include <set>

#include "lookahead/error.hpp"
#include "lookahead/format.hpp"

namespace {

nlohmann::json vector_json(const lookahead::Vector& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

lookahead::Vector vector_from(const nlohmann::json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const lookahead::Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

namespace nlohmann {

using lookahead::IntervalModel;
using lookahead::PredictiveModel;
using lookahead::PropensityModel;

void adl_serializer<PredictiveModel>::to_json(json& j, const PredictiveModel& f) {
  j = json::object();
  j["kind"] = std::string(lookahead::to_string(f.kind()));
  j["theta"] = vector_json(f.theta());
  if (f.kind() == lookahead::ModelKind::kQuadratic) j["theta_sq"] = vector_json(f.theta_sq());
  j["bias"] = f.bias();
}

PredictiveModel adl_serializer<PredictiveModel>::from_json(const json& j) {
  const auto kind = lookahead::model_kind_from_string(j.at("kind").get<std::string>());
  return PredictiveModel(kind, vector_from(j.at("theta")),
                         kind == lookahead::ModelKind::kQuadratic ? vector_from(j.at("theta_sq")) : lookahead::Vector(),
                         j.at("bias").get<double>());
}

void adl_serializer<PropensityModel>::to_json(json& j, const PropensityModel& h) {
  j = json{{"weights", vector_json(h.weights())}, {"bias", h.bias()}};
}

PropensityModel adl_serializer<PropensityModel>::from_json(const json& j) {
  return PropensityModel(vector_from(j.at("weights")), j.at("bias").get<double>());
}

void adl_serializer<IntervalModel>::to_json(json& j, const IntervalModel& g) {
  j = json::object();
  j["kind"] = std::string(lookahead::to_string(g.kind()));
  j["tau"] = g.tau();
  j["z"] = g.z();
  if (g.kind() == lookahead::UncertaintyKind::kQuantile) {
    j["lower_model"] = g.quantile_models()[0];
    j["upper_model"] = g.quantile_models()[1];
  } else {
    j["noise_var"] = g.noise_var();
    j["submodels"] = g.submodels();
  }
}

IntervalModel adl_serializer<IntervalModel>::from_json(const json& j) {
  const auto kind = lookahead::uncertainty_kind_from_string(j.at("kind").get<std::string>());
  const double tau = j.at("tau").get<double>();
  if (kind == lookahead::UncertaintyKind::kQuantile) {
    return IntervalModel::quantile(j.at("lower_model").get<PredictiveModel>(), j.at("upper_model").get<PredictiveModel>(),
                                   tau);
  }
  return IntervalModel::bootstrap(kind, j.at("submodels").get<std::vector<PredictiveModel>>(), tau,
                                  j.at("noise_var").get<double>());
}

void adl_serializer<lookahead::TrainedBundle>::to_json(json& j, const lookahead::TrainedBundle& b) {
  j = json{{"predictive", b.predictive}, {"interval", b.interval}, {"propensity", b.propensity}, {"trace", b.trace}};
}

lookahead::TrainedBundle adl_serializer<lookahead::TrainedBundle>::from_json(const json& j) {
  return {j.at("predictive").get<PredictiveModel>(), j.at("interval").get<IntervalModel>(),
          j.at("propensity").get<PropensityModel>(), j.at("trace").get<std::vector<lookahead::RoundTrace>>()};
}

}  // namespace nlohmann

namespace lookahead {

void to_json(Json& j, const RoundTrace& t) {
  j = Json{{"round", t.round}, {"train_mse", t.train_mse}, {"penalty", t.penalty}, {"active_count", t.active_count}};
}

void from_json(const Json& j, RoundTrace& t) {
  t.round = j.at("round").get<int>();
  t.train_mse = j.at("train_mse").get<double>();
  t.penalty = j.at("penalty").get<double>();
  t.active_count = j.at("active_count").get<Eigen::Index>();
}

void to_json(Json& j, const TrainConfig& c) {
  j = Json::object();
  j["lambda"] = c.lambda;
  j["eta"] = c.eta;
  j["tau"] = c.tau;
  j["rounds"] = c.rounds;
  j["n_bootstrap"] = c.n_bootstrap;
  j["learning_rate"] = c.learning_rate;
  j["epochs_init"] = c.epochs_init;
  j["epochs_per_round"] = c.epochs_per_round;
  j["seed"] = c.seed;
  j["uncertainty_kind"] = std::string(to_string(c.uncertainty_kind));
  j["mutable_columns"] = c.mutable_columns;
  j["mask"] = c.mask.flags();
  j["model_kind"] = std::string(to_string(c.model_kind));
  j["interval_model_kind"] = std::string(to_string(c.interval_model_kind));
  j["uncertainty_learning_rate"] = c.uncertainty_learning_rate;
  j["uncertainty_epochs"] = c.uncertainty_epochs;
  j["propensity_learning_rate"] = c.propensity_learning_rate;
  j["propensity_epochs"] = c.propensity_epochs;
  j["ess"] = c.ess == EssFormula::kKish ? "kish" : "mean_over_variance";
}

void from_json(const Json& j, TrainConfig& c) {
  static const std::set<std::string> known = {
      "lambda", "eta", "tau", "rounds", "n_bootstrap", "learning_rate", "epochs_init", "epochs_per_round", "seed",
      "uncertainty_kind", "mutable_columns", "mask", "model_kind", "interval_model_kind",
      "uncertainty_learning_rate", "uncertainty_epochs", "propensity_learning_rate", "propensity_epochs", "ess"};
  if (!j.is_object()) throw Error("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw Error("unknown config field '" + key + "'");
  }
  const auto read = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(field);
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("config field '") + key + "': " + e.what());
    }
  };
  read("lambda", c.lambda);
  read("eta", c.eta);
  read("tau", c.tau);
  read("rounds", c.rounds);
  read("n_bootstrap", c.n_bootstrap);
  read("learning_rate", c.learning_rate);
  read("epochs_init", c.epochs_init);
  read("epochs_per_round", c.epochs_per_round);
  read("seed", c.seed);
  read("mutable_columns", c.mutable_columns);
  read("uncertainty_learning_rate", c.uncertainty_learning_rate);
  read("uncertainty_epochs", c.uncertainty_epochs);
  read("propensity_learning_rate", c.propensity_learning_rate);
  read("propensity_epochs", c.propensity_epochs);
  std::string text;
  if (j.contains("uncertainty_kind")) {
    read("uncertainty_kind", text);
    c.uncertainty_kind = uncertainty_kind_from_string(text);
  }
  if (j.contains("model_kind")) {
    read("model_kind", text);
    c.model_kind = model_kind_from_string(text);
  }
  if (j.contains("interval_model_kind")) {
    read("interval_model_kind", text);
    c.interval_model_kind = model_kind_from_string(text);
  }
  if (j.contains("ess")) {
    read("ess", text);
    if (text == "kish") {
      c.ess = EssFormula::kKish;
    } else if (text == "mean_over_variance") {
      c.ess = EssFormula::kMeanOverVariance;
    } else {
      throw Error("config field 'ess': unknown formula '" + text + "'");
    }
  }
  if (j.contains("mask")) {
    std::vector<bool> flags;
    read("mask", flags);
    c.mask = FeatureMask(std::move(flags));
  }
}

TrainConfig parse_config(const Json& j) {
  TrainConfig c;
  from_json(j, c);
  c.validate();
  return c;
}

void to_json(Json& j, const EvalReport& r) {
  j = Json{{"rmse", r.rmse},
           {"improvement_rate", r.improvement_rate},
           {"improvement_magnitude", r.improvement_magnitude},
           {"n_test", r.n_test}};
}

void from_json(const Json& j, EvalReport& r) {
  r.rmse = j.at("rmse").get<double>();
  r.improvement_rate = j.at("improvement_rate").get<double>();
  r.improvement_magnitude = j.at("improvement_magnitude").get<double>();
  r.n_test = j.at("n_test").get<Eigen::Index>();
}

void to_json(Json& j, const FrontierPoint& p) {
  j = Json::object();
  j["lambda"] = p.lambda;
  if (p.error) {
    j["status"] = "failed";
    j["error"] = *p.error;
  } else {
    j["status"] = "ok";
    j["rmse"] = p.report.rmse;
    j["improvement_rate"] = p.report.improvement_rate;
    j["improvement_magnitude"] = p.report.improvement_magnitude;
    j["n_test"] = p.report.n_test;
    j["final_penalty"] = p.final_penalty;
  }
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<RoundTrace>& trace) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "round,train_mse,penalty,active_count\n";
  for (const auto& t : trace) {
    out << t.round << ',' << format_double(t.train_mse) << ',' << format_double(t.penalty) << ',' << t.active_count
        << '\n';
  }
}

void write_frontier_csv(const std::filesystem::path& path, const std::vector<FrontierPoint>& points) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "lambda,rmse,improvement_rate,improvement_magnitude\n";
  for (const auto& p : points) {
    out << format_double(p.lambda);
    if (p.error) {
      out << ",,,\n";
    } else {
      out << ',' << format_double(p.report.rmse) << ',' << format_double(p.report.improvement_rate) << ','
          << format_double(p.report.improvement_magnitude) << '\n';
    }
  }
}

void write_reports_csv(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, EvalReport>>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "model,rmse,improvement_rate,improvement_magnitude,n_test\n";
  for (const auto& [name, r] : rows) {
    out << name << ',' << format_double(r.rmse) << ',' << format_double(r.improvement_rate) << ','
        << format_double(r.improvement_magnitude) << ',' << r.n_test << '\n';
  }
}

}  // namespace lookahead
