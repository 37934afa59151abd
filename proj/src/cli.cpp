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

#include "lookahead/cli.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <optional>
#include <ostream>

#include "lookahead/decision.hpp"
#include "lookahead/error.hpp"
#include "lookahead/evaluation.hpp"
#include "lookahead/format.hpp"
#include "lookahead/training.hpp"

namespace lookahead::cli {

Json manifest_to_json(const RunManifest& manifest) {
  Json data = Json::object();
  if (manifest.data.kind == DataSource::Kind::kSynthetic) {
    data["kind"] = "synthetic";
    data["rows"] = manifest.data.synthetic_rows;
  } else {
    data["kind"] = "csv";
    data["path"] = manifest.data.path;
    data["target"] = manifest.data.target;
    data["mutable_columns"] = manifest.data.mutable_columns;
  }
  Json j = Json::object();
  j["command"] = manifest.command;
  j["config"] = manifest.config;
  j["data_source"] = std::move(data);
  j["split"] = Json{{"train_fraction", manifest.split.train_fraction}, {"seed", manifest.split.seed}};
  j["lambda_grid"] = manifest.lambda_grid;
  j["output_dir"] = manifest.output_dir;
  return j;
}

RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  try {
    m.command = j.value("command", std::string());
    if (j.contains("config")) from_json(j.at("config"), m.config);
    if (j.contains("data_source")) {
      const auto& data = j.at("data_source");
      const auto kind = data.at("kind").get<std::string>();
      if (kind == "synthetic") {
        m.data.kind = DataSource::Kind::kSynthetic;
        m.data.synthetic_rows = data.value("rows", Eigen::Index{25});
      } else if (kind == "csv") {
        m.data.kind = DataSource::Kind::kCsv;
        m.data.path = data.at("path").get<std::string>();
        m.data.target = data.at("target").get<std::string>();
        m.data.mutable_columns = data.value("mutable_columns", std::vector<std::string>{});
      } else {
        throw Error("unknown data_source kind '" + kind + "'");
      }
    }
    if (j.contains("split")) {
      m.split.train_fraction = j.at("split").value("train_fraction", 0.75);
      m.split.seed = j.at("split").value("seed", std::uint64_t{0});
    }
    m.lambda_grid = j.value("lambda_grid", std::vector<double>{});
    m.output_dir = j.value("output_dir", std::string("."));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

PreparedData prepare_data(const RunManifest& manifest) {
  const auto& config = manifest.config;
  if (manifest.data.kind == DataSource::Kind::kSynthetic) {
    const auto full = generate_synthetic(manifest.data.synthetic_rows, config.seed);
    auto [train, test] = split(full, manifest.split);
    return {std::move(train), std::move(test), Oracle::synthetic(), config.resolved_mask(full.dim()), {}};
  }

  auto [full, mask] = load_csv(manifest.data.path, manifest.data.target, manifest.data.mutable_columns);
  if (manifest.data.mutable_columns.empty()) mask = FeatureMask::all_mutable(full.dim());
  const auto [train_rows, test_rows] = split_indices(full.rows(), manifest.split);
  const Scaler scaler(full.select(train_rows));
  const Dataset scaled = scaler.transform(full);
  return {scaled.select(train_rows), scaled.select(test_rows), fit_oracle(scaled), std::move(mask),
          scaler.warnings()};
}

namespace {

namespace fs = std::filesystem;

void print_report(std::ostream& out, const std::string& name, const EvalReport& r) {
  out << std::left << std::setw(10) << name << std::right << std::fixed << std::setprecision(3) << "  rmse "
      << r.rmse << "  improvement rate " << r.improvement_rate << "  magnitude " << r.improvement_magnitude << '\n';
  out.unsetf(std::ios::floatfield);
}

fs::path output_dir(const RunManifest& manifest) {
  fs::path dir(manifest.output_dir);
  fs::create_directories(dir);
  return dir;
}

TrainConfig with_mask(const RunManifest& manifest, const PreparedData& data) {
  TrainConfig config = manifest.config;
  config.mask = data.mask;
  config.mutable_columns = manifest.data.mutable_columns;
  return config;
}

}  // namespace

int cmd_synth(const RunManifest& manifest, std::ostream& out) {
  const auto data = prepare_data(manifest);
  const auto dir = output_dir(manifest);
  const TrainConfig config = with_mask(manifest, data);

  TrainConfig baseline_config = config;
  baseline_config.lambda = 0.0;
  const auto baseline = train_lookahead(data.train, baseline_config);
  const auto lookahead = train_lookahead(data.train, config);
  const auto baseline_report = evaluate(baseline.predictive, data.oracle, data.test, config.eta, data.mask);
  const auto lookahead_report = evaluate(lookahead.predictive, data.oracle, data.test, config.eta, data.mask);

  std::vector<std::pair<std::string, EvalReport>> rows = {{"baseline", baseline_report},
                                                          {"lookahead", lookahead_report}};
  write_reports_csv(dir / "results.csv", rows);

  // Coupled baseline trained for the same number of steps as the others.
  const int naive_epochs = config.epochs_init + config.rounds * config.epochs_per_round;
  bool naive_ok = true;
  Json naive_json;
  try {
    const auto naive = train_naive(data.train, config.lambda, config.eta, data.mask, config.model_kind,
                                   {config.learning_rate, naive_epochs});
    const auto naive_report = evaluate(naive, data.oracle, data.test, config.eta, data.mask);
    rows.emplace_back("naive", naive_report);
    naive_json = naive_report;
  } catch (const Error& e) {
    naive_ok = false;
    naive_json = Json{{"status", "failed"}, {"error", e.what()}};
  }
  write_reports_csv(dir / "comparison.csv", rows);

  Json results = Json::object();
  results["eta"] = config.eta;
  results["baseline"] = baseline_report;
  results["lookahead"] = lookahead_report;
  results["naive"] = naive_json;
  results["lookahead_trace"] = lookahead.trace;
  write_json(dir / "results.json", results);
  write_json(dir / "manifest.json", manifest_to_json(manifest));

  out << "eta = " << config.eta << '\n';
  for (const auto& [name, report] : rows) print_report(out, name, report);
  return naive_ok ? kExitOk : kExitFailure;
}

int cmd_train(const RunManifest& manifest, std::ostream& out) {
  const auto data = prepare_data(manifest);
  const auto dir = output_dir(manifest);
  const TrainConfig config = with_mask(manifest, data);

  const auto bundle = train_lookahead(data.train, config);
  const auto report = evaluate(bundle.predictive, data.oracle, data.test, config.eta, data.mask);

  write_json(dir / "bundle.json", Json(bundle));
  write_trace_csv(dir / "trace.csv", bundle.trace);
  write_json(dir / "report.json", Json(report));
  write_reports_csv(dir / "report.csv", {{"lookahead", report}});
  write_decisions_csv(dir / "decisions.csv", decide(bundle.predictive, data.test, config.eta, data.mask),
                      data.test.feature_names());
  write_json(dir / "manifest.json", manifest_to_json(manifest));

  print_report(out, "lookahead", report);
  return kExitOk;
}

int cmd_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  if (manifest.lambda_grid.empty()) throw Error("lambda grid is empty");
  const auto data = prepare_data(manifest);
  const auto dir = output_dir(manifest);
  const TrainConfig config = with_mask(manifest, data);

  const auto points = frontier_sweep(data.train, data.test, config, manifest.lambda_grid, data.oracle, true);
  write_frontier_csv(dir / "frontier.csv", points);
  write_json(dir / "frontier.json", Json{{"eta", config.eta}, {"points", points}});
  write_json(dir / "manifest.json", manifest_to_json(manifest));

  bool failed = false;
  for (const auto& p : points) {
    if (p.error) {
      failed = true;
      err << "lambda " << format_double(p.lambda) << " failed: " << *p.error << '\n';
    } else {
      print_report(out, "lambda=" + format_double(p.lambda), p.report);
    }
  }
  return failed ? kExitFailure : kExitOk;
}

namespace {

/// Flags shared by every subcommand. Unset flags leave the manifest alone.
struct Flags {
  std::optional<std::string> manifest;
  std::optional<std::string> data;
  std::optional<std::string> target;
  std::optional<std::vector<std::string>> mutable_columns;
  std::optional<double> lambda;
  std::optional<double> eta;
  std::optional<double> tau;
  std::optional<int> rounds;
  std::optional<int> bootstrap;
  std::optional<std::string> uncertainty;
  std::optional<double> lr;
  std::optional<int> epochs_init;
  std::optional<int> epochs_round;
  std::optional<std::uint64_t> seed;
  std::optional<double> split;
  std::optional<std::vector<double>> grid;
  std::optional<std::string> out;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--manifest", f.manifest, "Run manifest (JSON) to start from")->check(CLI::ExistingFile);
  app.add_option("--data", f.data, "CSV file with a header row; synthetic data if omitted")->check(CLI::ExistingFile);
  app.add_option("--target", f.target, "Outcome column of the CSV file");
  app.add_option("--mutable", f.mutable_columns, "Comma-separated mutable columns (default: all)")->delimiter(',');
  app.add_option("--lambda", f.lambda, "Lookahead regularization weight")->check(CLI::NonNegativeNumber);
  app.add_option("--eta", f.eta, "Decision step size")->check(CLI::NonNegativeNumber);
  app.add_option("--tau", f.tau, "Interval confidence level")->check(CLI::Range(0.0, 1.0));
  app.add_option("--rounds", f.rounds, "Alternating rounds")->check(CLI::PositiveNumber);
  app.add_option("--bootstrap", f.bootstrap, "Bootstrap replicates")->check(CLI::PositiveNumber);
  app.add_option("--uncertainty", f.uncertainty, "Interval model")
      ->check(CLI::IsMember({"vanilla", "residual", "quantile"}));
  app.add_option("--lr", f.lr, "Learning rate of the predictive model")->check(CLI::PositiveNumber);
  app.add_option("--epochs-init", f.epochs_init, "Epochs of the initial fit")->check(CLI::PositiveNumber);
  app.add_option("--epochs-round", f.epochs_round, "Epochs per round")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "Random seed");
  app.add_option("--split", f.split, "Train fraction")->check(CLI::Range(0.0, 1.0));
  app.add_option("--grid", f.grid, "Comma-separated lambda grid")->delimiter(',');
  app.add_option("--out", f.out, "Output directory");
}

RunManifest resolve(const std::string& command, const Flags& f) {
  RunManifest m;
  if (f.manifest) m = manifest_from_json(read_json(*f.manifest));
  m.command = command;
  if (m.lambda_grid.empty()) m.lambda_grid = {0.0, 1.0, 2.0, 4.0, 8.0};
  if (f.data) {
    m.data.kind = DataSource::Kind::kCsv;
    m.data.path = *f.data;
  }
  if (f.target) m.data.target = *f.target;
  if (f.mutable_columns) m.data.mutable_columns = *f.mutable_columns;
  auto& c = m.config;
  if (f.lambda) c.lambda = *f.lambda;
  if (f.eta) c.eta = *f.eta;
  if (f.tau) c.tau = *f.tau;
  if (f.rounds) c.rounds = *f.rounds;
  if (f.bootstrap) c.n_bootstrap = *f.bootstrap;
  if (f.uncertainty) c.uncertainty_kind = uncertainty_kind_from_string(*f.uncertainty);
  if (f.lr) c.learning_rate = *f.lr;
  if (f.epochs_init) c.epochs_init = *f.epochs_init;
  if (f.epochs_round) c.epochs_per_round = *f.epochs_round;
  if (f.seed) c.seed = *f.seed;
  if (f.split) m.split.train_fraction = *f.split;
  if (f.grid) m.lambda_grid = *f.grid;
  if (f.out) m.output_dir = *f.out;
  // One seed drives data, split and bootstrap unless a manifest says otherwise.
  if (f.seed || !f.manifest) m.split.seed = c.seed;
  if (m.data.kind == DataSource::Kind::kCsv) {
    if (m.data.target.empty()) throw CLI::ValidationError("--target", "required with --data");
    c.mutable_columns = m.data.mutable_columns;
  }
  c.validate();
  return m;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lookahead-regularized training of decision-aware predictive models", "lookahead"};
  app.require_subcommand(1);
  Flags synth_flags, train_flags, sweep_flags;
  auto* synth = app.add_subcommand("synth", "Baseline vs lookahead on the synthetic quadratic curve");
  auto* train = app.add_subcommand("train", "Train one lookahead model and evaluate it");
  auto* sweep = app.add_subcommand("sweep", "Accuracy/improvement frontier over a lambda grid");
  add_flags(*synth, synth_flags);
  add_flags(*train, train_flags);
  add_flags(*sweep, sweep_flags);

  std::vector<std::string> argv_storage = {"lookahead"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  RunManifest manifest;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (synth->parsed()) {
      if (synth_flags.data) throw CLI::ValidationError("--data", "synth always uses synthetic data");
      manifest = resolve("synth", synth_flags);
    } else if (train->parsed()) {
      manifest = resolve("train", train_flags);
    } else {
      manifest = resolve("sweep", sweep_flags);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    for (const auto& w : prepare_data(manifest).warnings) err << "warning: " << w << '\n';
    if (manifest.command == "synth") return cmd_synth(manifest, out);
    if (manifest.command == "train") return cmd_train(manifest, out);
    return cmd_sweep(manifest, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace lookahead::cli
