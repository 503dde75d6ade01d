#ifndef FASTML_BENCH_RUNNER_HPP
#define FASTML_BENCH_RUNNER_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fastml/bench/dataset.hpp"
#include "fastml/gradient_classifiers.hpp"
#include "fastml/unsupervised.hpp"

namespace fastml::bench {

enum class ModelKind { Mlr, Simple, Poly, Logistic, Svm, Knn, NaiveBayes, KMeans, Pca, Noop };

struct ModelSpec {
  ModelKind kind = ModelKind::Mlr;
  std::size_t param = 0;  // degree for poly, k for knn / kmeans

  std::string name() const;
  bool supports(Task task) const noexcept;
};

/// Accepts mlr, simple, poly:D, logistic, svm, knn:K, nb, kmeans:K, pca, noop.
ModelSpec parse_model(std::string_view text);

/// The models `--model all` expands to for a task.
std::vector<ModelSpec> default_models(Task task);

struct BenchConfig {
  OptimizerConfig logistic;
  SvmConfig svm;
  KMeansOptions kmeans;
  double val_ratio = 0.2;
  double pca_variance_target = 0.95;
  std::size_t repeats = 3;
  /// Standard-scale features (train-fitted) before classification models.
  bool scale_classification = true;
};

struct BenchReport {
  std::string dataset;
  std::string model;
  nlohmann::json config = nlohmann::json::object();
  std::vector<double> timings_ms;
  std::optional<double> training_time_ms;  // median of timings_ms
  std::map<std::string, double> metrics;
  std::optional<std::size_t> epochs_run;
  std::size_t complexity = 0;
  std::uint64_t seed = 0;
  std::string metric_split = "validation";
  std::optional<std::string> error;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

double median(std::vector<double> values);

/// Applies the BENCH_REPEATS environment override; fewer than 3 repeats is
/// rejected with Errc::InvalidConfig.
std::size_t resolve_repeats(std::size_t requested);

/// Splits the data (seeded, val_ratio), times `repeats` fits of the model on
/// the training part, and evaluates the last fit on the validation part.
/// Model errors are recorded in the report instead of propagating.
BenchReport run_benchmark(const DatasetSpec& spec, const Dataset& data, const ModelSpec& model,
                          const BenchConfig& config);

}  // namespace fastml::bench

#endif  // FASTML_BENCH_RUNNER_HPP
