#include "fastml/bench/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <string>

#include "fastml/error.hpp"
#include "fastml/instance_models.hpp"
#include "fastml/linear_models.hpp"
#include "fastml/metrics.hpp"
#include "fastml/preprocessing.hpp"

namespace fastml::bench {
namespace {

using Clock = std::chrono::steady_clock;

// Fits `repeats` times, timing only the fit call, and keeps the last model.
template <class Fit>
auto timed_fits(std::size_t repeats, Fit&& fit, std::vector<double>& timings) {
  using Model = decltype(fit());
  std::optional<Model> kept;
  for (std::size_t r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    Model model = fit();
    const auto stop = Clock::now();
    timings.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    kept = std::move(model);
  }
  return std::move(*kept);
}

struct BinaryLabels {
  double negative = 0.0;
  double positive = 1.0;
};

BinaryLabels binary_labels(const Vector& y) {
  std::vector<double> distinct;
  for (double v : y) {
    if (std::find(distinct.begin(), distinct.end(), v) != distinct.end()) continue;
    distinct.push_back(v);
    if (distinct.size() > 2) break;
  }
  if (distinct.size() != 2) {
    fail(Errc::NonBinaryLabels, "binary classification needs exactly two target values, found " +
                                    std::to_string(distinct.size()) + (distinct.size() > 2 ? "+" : ""));
  }
  std::sort(distinct.begin(), distinct.end());
  return {distinct[0], distinct[1]};
}

Vector relabel(const Vector& y, double from_positive, double to_negative, double to_positive) {
  Vector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] == from_positive ? to_positive : to_negative;
  return out;
}

void put_regression(BenchReport& rep, std::span<const double> truth, std::span<const double> pred) {
  const auto m = regression_metrics(truth, pred);
  rep.metrics["r2"] = m.r2;
  rep.metrics["mse"] = m.mse;
  rep.metrics["mae"] = m.mae;
  rep.metrics["rmse"] = m.rmse;
}

void put_classification(BenchReport& rep, std::span<const double> truth,
                        std::span<const double> pred, double positive) {
  const auto m = classification_metrics(truth, pred, positive);
  rep.metrics["accuracy"] = m.accuracy;
  rep.metrics["precision"] = m.precision;
  rep.metrics["recall"] = m.recall;
  rep.metrics["f1"] = m.f1;
  rep.metrics["tp"] = static_cast<double>(m.matrix.tp);
  rep.metrics["tn"] = static_cast<double>(m.matrix.tn);
  rep.metrics["fp"] = static_cast<double>(m.matrix.fp);
  rep.metrics["fn"] = static_cast<double>(m.matrix.fn);
}

nlohmann::json optimizer_echo(const OptimizerConfig& cfg) {
  nlohmann::json j;
  j["learning_rate"] = cfg.learning_rate;
  j["momentum"] = cfg.momentum;
  j["max_epochs"] = cfg.max_epochs;
  if (cfg.batch_size == 0) j["batch_size"] = "full";
  else j["batch_size"] = cfg.batch_size;
  j["optimizer"] = cfg.rule == UpdateRule::Adam ? "adam" : "momentum";
  return j;
}

bool is_classifier(ModelKind kind) {
  return kind == ModelKind::Logistic || kind == ModelKind::Svm || kind == ModelKind::Knn ||
         kind == ModelKind::NaiveBayes;
}

nlohmann::json config_echo(const ModelSpec& model, const BenchConfig& cfg) {
  nlohmann::json j;
  switch (model.kind) {
    case ModelKind::Logistic: j = optimizer_echo(cfg.logistic); break;
    case ModelKind::Svm:
      j = optimizer_echo(cfg.svm.optimizer);
      j["lambda"] = cfg.svm.lambda;
      j["early_stop_accuracy"] = cfg.svm.early_stop_accuracy;
      break;
    case ModelKind::Poly: j["degree"] = model.param; break;
    case ModelKind::Knn: j["k"] = model.param; break;
    case ModelKind::KMeans:
      j["k"] = model.param;
      j["max_iterations"] = cfg.kmeans.max_iterations;
      j["tolerance"] = cfg.kmeans.tolerance;
      break;
    case ModelKind::Pca: j["variance_target"] = cfg.pca_variance_target; break;
    default: break;
  }
  j["val_ratio"] = cfg.val_ratio;
  j["repeats"] = cfg.repeats;
  j["scaling"] = is_classifier(model.kind) && cfg.scale_classification ? "standard" : "none";
  return j;
}

std::size_t parse_param(std::string_view text, std::string_view name) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || v == 0) {
    fail(Errc::SpecInvalid, "bad parameter '" + std::string(text) + "' for model " + std::string(name));
  }
  return v;
}

}  // namespace

std::string ModelSpec::name() const {
  switch (kind) {
    case ModelKind::Mlr: return "mlr";
    case ModelKind::Simple: return "simple";
    case ModelKind::Poly: return "poly:" + std::to_string(param);
    case ModelKind::Logistic: return "logistic";
    case ModelKind::Svm: return "svm";
    case ModelKind::Knn: return "knn:" + std::to_string(param);
    case ModelKind::NaiveBayes: return "nb";
    case ModelKind::KMeans: return "kmeans:" + std::to_string(param);
    case ModelKind::Pca: return "pca";
    case ModelKind::Noop: return "noop";
  }
  return "unknown";
}

bool ModelSpec::supports(Task task) const noexcept {
  switch (kind) {
    case ModelKind::Mlr:
    case ModelKind::Simple:
    case ModelKind::Poly: return task == Task::Regression;
    case ModelKind::Logistic:
    case ModelKind::Svm:
    case ModelKind::Knn:
    case ModelKind::NaiveBayes: return task == Task::Classification;
    default: return true;
  }
}

ModelSpec parse_model(std::string_view text) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto plain = [&](ModelKind kind) {
    if (colon != std::string_view::npos) {
      fail(Errc::SpecInvalid, "model " + std::string(head) + " takes no parameter");
    }
    return ModelSpec{kind, 0};
  };
  auto with_param = [&](ModelKind kind) {
    if (colon == std::string_view::npos) {
      fail(Errc::SpecInvalid, "model " + std::string(head) + " needs a parameter, e.g. " +
                                  std::string(head) + ":3");
    }
    return ModelSpec{kind, parse_param(tail, head)};
  };
  if (head == "mlr") return plain(ModelKind::Mlr);
  if (head == "simple") return plain(ModelKind::Simple);
  if (head == "poly") return with_param(ModelKind::Poly);
  if (head == "logistic") return plain(ModelKind::Logistic);
  if (head == "svm") return plain(ModelKind::Svm);
  if (head == "knn") return with_param(ModelKind::Knn);
  if (head == "nb") return plain(ModelKind::NaiveBayes);
  if (head == "kmeans") return with_param(ModelKind::KMeans);
  if (head == "pca") return plain(ModelKind::Pca);
  if (head == "noop") return plain(ModelKind::Noop);
  fail(Errc::SpecInvalid, "unknown model '" + std::string(text) + "'");
}

std::vector<ModelSpec> default_models(Task task) {
  if (task == Task::Regression) {
    return {{ModelKind::Mlr, 0}, {ModelKind::Simple, 0}, {ModelKind::Poly, 2},
            {ModelKind::KMeans, 3}, {ModelKind::Pca, 0}};
  }
  return {{ModelKind::Logistic, 0}, {ModelKind::Svm, 0}, {ModelKind::Knn, 5},
          {ModelKind::NaiveBayes, 0}, {ModelKind::KMeans, 2}, {ModelKind::Pca, 0}};
}

double median(std::vector<double> values) {
  if (values.empty()) fail(Errc::EmptyInput, "median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::size_t resolve_repeats(std::size_t requested) {
  std::size_t repeats = requested;
  if (const char* env = std::getenv("BENCH_REPEATS"); env && *env) {
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), repeats);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(Errc::InvalidConfig, "BENCH_REPEATS is not a count: " + std::string(text));
    }
  }
  if (repeats < 3) fail(Errc::InvalidConfig, "at least 3 repeats are required");
  return repeats;
}

BenchReport run_benchmark(const DatasetSpec& spec, const Dataset& data, const ModelSpec& model,
                          const BenchConfig& config) {
  BenchReport rep;
  rep.dataset = spec.id;
  rep.model = model.name();
  rep.complexity = spec.complexity();
  rep.seed = spec.seed;
  rep.config = config_echo(model, config);

  try {
    if (config.repeats < 3) fail(Errc::InvalidConfig, "at least 3 repeats are required");
    if (!model.supports(spec.task)) {
      fail(Errc::UnsupportedTask, rep.model + " does not handle " + std::string(task_name(spec.task)));
    }
    Rng split_rng(spec.seed);
    auto split = train_val_split(data.x, data.y, config.val_ratio, split_rng);
    if (is_classifier(model.kind) && config.scale_classification) {
      const auto scaler = standard_fit(split.x_train);
      split.x_train = scaler.transform(split.x_train);
      split.x_val = scaler.transform(split.x_val);
    }
    const std::uint64_t model_seed = spec.seed + 1;
    const std::size_t repeats = config.repeats;
    auto& timings = rep.timings_ms;

    switch (model.kind) {
      case ModelKind::Mlr: {
        const auto fitted =
            timed_fits(repeats, [&] { return fit_multiple(split.x_train, split.y_train); }, timings);
        put_regression(rep, split.y_val, predict_linear(fitted, split.x_val));
        break;
      }
      case ModelKind::Simple: {
        const auto x_train = split.x_train.col(0);
        const auto fitted = timed_fits(repeats, [&] { return fit_simple(x_train, split.y_train); }, timings);
        Vector pred(split.x_val.rows());
        for (std::size_t i = 0; i < pred.size(); ++i) pred[i] = fitted.predict(split.x_val(i, 0));
        put_regression(rep, split.y_val, pred);
        rep.metrics["slope"] = fitted.slope;
        rep.metrics["intercept"] = fitted.intercept;
        break;
      }
      case ModelKind::Poly: {
        const auto fitted = timed_fits(
            repeats, [&] { return fit_polynomial(split.x_train, split.y_train, model.param); }, timings);
        put_regression(rep, split.y_val, predict_polynomial(fitted, split.x_val));
        break;
      }
      case ModelKind::Logistic: {
        const auto labels = binary_labels(data.y);
        const auto y01 = relabel(split.y_train, labels.positive, 0.0, 1.0);
        const auto fitted = timed_fits(
            repeats,
            [&] {
              Rng rng(model_seed);
              return logistic_fit(split.x_train, y01, config.logistic, rng);
            },
            timings);
        const auto pred = relabel(logistic_predict(fitted, split.x_val), 1.0, labels.negative, labels.positive);
        put_classification(rep, split.y_val, pred, labels.positive);
        rep.epochs_run = fitted.epochs_run;
        rep.metrics["final_train_loss"] = fitted.loss_history.back();
        break;
      }
      case ModelKind::Svm: {
        const auto labels = binary_labels(data.y);
        const auto ypm = relabel(split.y_train, labels.positive, -1.0, 1.0);
        const auto fitted = timed_fits(
            repeats,
            [&] {
              Rng rng(model_seed);
              return svm_fit(split.x_train, ypm, config.svm, rng);
            },
            timings);
        const auto pred = relabel(svm_predict(fitted, split.x_val), 1.0, labels.negative, labels.positive);
        put_classification(rep, split.y_val, pred, labels.positive);
        rep.epochs_run = fitted.epochs_run;
        rep.metrics["final_train_accuracy"] = fitted.accuracy_history.back();
        break;
      }
      case ModelKind::Knn: {
        const auto labels = binary_labels(data.y);
        const auto fitted =
            timed_fits(repeats, [&] { return knn_fit(split.x_train, split.y_train, model.param); }, timings);
        put_classification(rep, split.y_val, knn_predict(fitted, split.x_val), labels.positive);
        break;
      }
      case ModelKind::NaiveBayes: {
        const auto labels = binary_labels(data.y);
        const auto fitted = timed_fits(repeats, [&] { return nb_fit(split.x_train, split.y_train); }, timings);
        put_classification(rep, split.y_val, nb_predict(fitted, split.x_val), labels.positive);
        break;
      }
      case ModelKind::KMeans: {
        const auto fitted = timed_fits(
            repeats,
            [&] {
              Rng rng(model_seed);
              return kmeans_fit(split.x_train, model.param, config.kmeans, rng);
            },
            timings);
        const auto assigned = kmeans_assign(fitted, split.x_val);
        double val_inertia = 0.0;
        for (std::size_t i = 0; i < assigned.size(); ++i) {
          val_inertia += squared_distance(split.x_val.row(i), fitted.centroids.row(assigned[i]));
        }
        rep.metrics["inertia"] = fitted.inertia;
        rep.metrics["val_inertia"] = val_inertia;
        rep.metrics["iterations"] = static_cast<double>(fitted.iterations_run);
        break;
      }
      case ModelKind::Pca: {
        const auto fitted = timed_fits(
            repeats, [&] { return pca_fit(split.x_train, config.pca_variance_target); }, timings);
        const auto kept = fitted.n_components_kept;
        const auto back = pca_inverse_transform(fitted, pca_transform(fitted, split.x_val, kept));
        double err = 0.0;
        for (std::size_t i = 0; i < back.rows(); ++i) err += squared_distance(back.row(i), split.x_val.row(i));
        rep.metrics["components_kept"] = static_cast<double>(kept);
        rep.metrics["explained_variance_ratio"] = explained_variance_ratio(fitted, kept);
        rep.metrics["first_component_ratio"] = explained_variance_ratio(fitted, 1);
        rep.metrics["val_reconstruction_mse"] = err / static_cast<double>(back.rows() * back.cols());
        break;
      }
      case ModelKind::Noop: {
        timed_fits(repeats, [] { return 0; }, timings);
        break;
      }
    }
    rep.training_time_ms = median(timings);
  } catch (const Error& e) {
    rep.error = e.what();
    rep.timings_ms.clear();
    rep.training_time_ms.reset();
    rep.metrics.clear();
    rep.epochs_run.reset();
  }
  return rep;
}

}  // namespace fastml::bench
