#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fastml/bench/report.hpp"
#include "fastml/error.hpp"

namespace {

using namespace fastml;
using namespace fastml::bench;

struct RunOptions {
  std::vector<std::string> datasets;
  std::vector<std::string> models{"all"};
  std::uint64_t seed = 42;
  std::size_t repeats = 3;
  std::string out = "-";
  std::string format = "json";
  std::string target;
  std::string task = "regression";
  std::string optimizer = "momentum";
  double val_ratio = 0.2;
  bool no_scale = false;
  BenchConfig config;
};

struct CompareOptions {
  std::string a;
  std::string b;
  CompareTolerance tol;
  bool json = false;
};

std::vector<ModelSpec> expand_models(const std::vector<std::string>& names, Task task) {
  std::vector<ModelSpec> out;
  for (const auto& n : names) {
    if (n == "all") {
      const auto defaults = default_models(task);
      out.insert(out.end(), defaults.begin(), defaults.end());
    } else {
      out.push_back(parse_model(n));
    }
  }
  return out;
}

int run(RunOptions& opt) {
  const auto format = parse_format(opt.format);
  if (!format) fail(Errc::InvalidConfig, "unknown format '" + opt.format + "'");
  const auto csv_task = parse_task(opt.task);
  if (!csv_task) fail(Errc::InvalidConfig, "unknown task '" + opt.task + "'");

  BenchConfig& cfg = opt.config;
  cfg.repeats = resolve_repeats(opt.repeats);
  cfg.val_ratio = opt.val_ratio;
  cfg.scale_classification = !opt.no_scale;
  if (opt.optimizer == "adam") cfg.logistic.rule = UpdateRule::Adam;
  else if (opt.optimizer != "momentum") fail(Errc::InvalidConfig, "unknown optimizer '" + opt.optimizer + "'");
  const double lambda = cfg.svm.lambda;
  const double early_stop = cfg.svm.early_stop_accuracy;
  cfg.svm.optimizer = cfg.logistic;
  cfg.svm.lambda = lambda;
  cfg.svm.early_stop_accuracy = early_stop;

  std::vector<BenchReport> reports;
  for (const auto& text : opt.datasets) {
    DatasetSpec spec = parse_dataset_spec(text, opt.seed);
    if (spec.csv_path) {
      spec.task = *csv_task;
      spec.target_column = opt.target;
    }
    const Dataset data = load_dataset(spec);
    for (const auto& model : expand_models(opt.models, spec.task)) {
      std::fprintf(stderr, "running %s on %s\n", model.name().c_str(), spec.id.c_str());
      reports.push_back(run_benchmark(spec, data, model, cfg));
    }
  }
  emit_report(reports, *format, opt.out);
  return 0;
}

std::string optional_number(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", *v);
  return buf;
}

int compare(const CompareOptions& opt) {
  const auto a = read_reports(opt.a);
  const auto b = read_reports(opt.b);
  const Comparison cmp = compare_reports(a, b, opt.tol);

  if (opt.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : cmp.rows) {
      nlohmann::json j;
      j["dataset"] = r.dataset;
      j["model"] = r.model;
      j["time_a_ms"] = r.time_a_ms ? nlohmann::json(*r.time_a_ms) : nlohmann::json(nullptr);
      j["time_b_ms"] = r.time_b_ms ? nlohmann::json(*r.time_b_ms) : nlohmann::json(nullptr);
      j["speed_ratio"] = r.speed_ratio ? nlohmann::json(*r.speed_ratio) : nlohmann::json(nullptr);
      j["deltas"] = r.deltas;
      j["mismatches"] = r.mismatches;
      rows.push_back(std::move(j));
    }
    std::cout << nlohmann::json{{"pass", cmp.pass}, {"rows", rows}}.dump(2) << '\n';
  } else {
    for (const auto& r : cmp.rows) {
      std::cout << r.dataset << " | " << r.model << " | a " << optional_number(r.time_a_ms) << " ms | b "
                << optional_number(r.time_b_ms) << " ms | ratio " << optional_number(r.speed_ratio) << " | "
                << (r.mismatches.empty() ? "ok" : "MISMATCH");
      for (const auto& m : r.mismatches) std::cout << " [" << m << ']';
      std::cout << '\n';
    }
    std::cout << (cmp.pass ? "PASS" : "FAIL") << '\n';
  }
  return cmp.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for the fastml models"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Train models on datasets and emit timing/metric reports");
  run_cmd->add_option("--dataset", run_opt.datasets, "CSV path or synthetic:ROWSxCOLS:task[:param]")
      ->required();
  run_cmd->add_option("--model", run_opt.models, "mlr|simple|poly:D|logistic|svm|knn:K|nb|kmeans:K|pca|noop|all")
      ->delimiter(',');
  run_cmd->add_option("--seed", run_opt.seed, "Seed for data synthesis, splitting and model init");
  run_cmd->add_option("--repeats", run_opt.repeats, "Timed fits per model (>= 3, BENCH_REPEATS overrides)");
  run_cmd->add_option("--out", run_opt.out, "Output file, - for stdout");
  run_cmd->add_option("--format", run_opt.format, "json|csv|table");
  run_cmd->add_option("--target", run_opt.target, "CSV target column (default: last column)");
  run_cmd->add_option("--task", run_opt.task, "Task for CSV datasets: regression|classification");
  run_cmd->add_option("--val-ratio", run_opt.val_ratio, "Held-out fraction for metrics");
  run_cmd->add_flag("--no-scale", run_opt.no_scale, "Skip standard scaling before classifiers");
  run_cmd->add_option("--lr", run_opt.config.logistic.learning_rate, "Learning rate (logistic, svm)");
  run_cmd->add_option("--momentum", run_opt.config.logistic.momentum, "Momentum coefficient (logistic, svm)");
  run_cmd->add_option("--epochs", run_opt.config.logistic.max_epochs, "Maximum epochs (logistic, svm)");
  run_cmd->add_option("--batch-size", run_opt.config.logistic.batch_size, "Mini-batch size, 0 for full batch");
  run_cmd->add_option("--optimizer", run_opt.optimizer, "momentum|adam (logistic)");
  run_cmd->add_option("--lambda", run_opt.config.svm.lambda, "SVM regularization strength");
  run_cmd->add_option("--early-stop", run_opt.config.svm.early_stop_accuracy, "SVM early-stop training accuracy");
  run_cmd->add_option("--kmeans-max-iter", run_opt.config.kmeans.max_iterations, "k-means iteration cap");
  run_cmd->add_option("--pca-variance", run_opt.config.pca_variance_target, "PCA retained variance target");

  CompareOptions cmp_opt;
  auto* cmp_cmd = app.add_subcommand("compare", "Diff two reports row by row");
  cmp_cmd->add_option("--a", cmp_opt.a, "First report (JSON or CSV)")->required();
  cmp_cmd->add_option("--b", cmp_opt.b, "Second report (JSON or CSV)")->required();
  cmp_cmd->add_option("--atol", cmp_opt.tol.abs, "Absolute metric tolerance");
  cmp_cmd->add_option("--rtol", cmp_opt.tol.rel, "Relative metric tolerance");
  cmp_cmd->add_flag("--json", cmp_opt.json, "Print the comparison as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(run_opt);
    return compare(cmp_opt);
  } catch (const fastml::Error& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return 2;
  }
}
