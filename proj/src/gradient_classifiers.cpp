#include "fastml/gradient_classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fastml/error.hpp"

namespace fastml {
namespace {

// log(1 + e^z) without overflow.
double softplus(double z) noexcept {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

void require_rows(const Matrix& x, std::span<const double> y) {
  if (x.rows() != y.size()) fail(Errc::ShapeMismatch, "X rows and y length differ");
  if (x.rows() == 0) fail(Errc::EmptyInput, "training set is empty");
}

void require_weights(std::span<const double> w, const Matrix& x) {
  if (w.size() != x.cols()) {
    fail(Errc::ShapeMismatch, "model has " + std::to_string(w.size()) + " weights, X has " +
                                  std::to_string(x.cols()) + " columns");
  }
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Parameters are packed as theta = [w..., b].
class ParameterUpdater {
 public:
  ParameterUpdater(const OptimizerConfig& cfg, std::size_t size)
      : cfg_(cfg), first_(size, 0.0), second_(cfg.rule == UpdateRule::Adam ? size : 0, 0.0) {}

  void apply(std::span<const double> grad, std::span<double> theta) {
    if (cfg_.rule == UpdateRule::Momentum) {
      momentum_step(first_, grad, theta, cfg_.learning_rate, cfg_.momentum);
      return;
    }
    ++step_;
    const auto& a = cfg_.adam;
    const double c1 = 1.0 - std::pow(a.beta1, static_cast<double>(step_));
    const double c2 = 1.0 - std::pow(a.beta2, static_cast<double>(step_));
    for (std::size_t i = 0; i < theta.size(); ++i) {
      first_[i] = a.beta1 * first_[i] + (1.0 - a.beta1) * grad[i];
      second_[i] = a.beta2 * second_[i] + (1.0 - a.beta2) * grad[i] * grad[i];
      const double m_hat = first_[i] / c1;
      const double v_hat = second_[i] / c2;
      theta[i] -= cfg_.learning_rate * m_hat / (std::sqrt(v_hat) + a.epsilon);
    }
  }

  const std::vector<double>& first_moment() const noexcept { return first_; }

 private:
  OptimizerConfig cfg_;
  std::vector<double> first_;
  std::vector<double> second_;
  std::size_t step_ = 0;
};

// Row order for one epoch: identity for full batch, reshuffled otherwise.
class BatchSchedule {
 public:
  BatchSchedule(std::size_t n, std::size_t batch_size)
      : order_(n), batch_(batch_size == 0 || batch_size >= n ? n : batch_size) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
  }

  void start_epoch(Rng& rng) {
    if (batch_ < order_.size()) order_ = shuffled_indices(order_.size(), rng);
  }

  std::size_t batch_count() const noexcept { return (order_.size() + batch_ - 1) / batch_; }

  std::span<const std::size_t> batch(std::size_t b) const noexcept {
    const std::size_t begin = b * batch_;
    const std::size_t end = std::min(order_.size(), begin + batch_);
    return std::span<const std::size_t>(order_).subspan(begin, end - begin);
  }

 private:
  std::vector<std::size_t> order_;
  std::size_t batch_;
};

// Mean BCE and its gradient over the given rows; grad has size p + 1.
double logistic_batch(std::span<const double> theta, const Matrix& x, std::span<const double> y,
                      std::span<const std::size_t> rows, std::span<double> grad) {
  const std::size_t p = x.cols();
  std::fill(grad.begin(), grad.end(), 0.0);
  double loss = 0.0;
  for (std::size_t i : rows) {
    auto row = x.row(i);
    const double z = dot(theta.first(p), row) + theta[p];
    const double err = sigmoid(z) - y[i];
    for (std::size_t c = 0; c < p; ++c) grad[c] += err * row[c];
    grad[p] += err;
    loss += softplus(z) - y[i] * z;
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (double& g : grad) g *= inv;
  return loss * inv;
}

// Regularized mean hinge objective and its subgradient over the given rows.
double svm_batch(std::span<const double> theta, const Matrix& x, std::span<const double> y,
                 std::span<const std::size_t> rows, double lambda, std::span<double> grad) {
  const std::size_t p = x.cols();
  std::fill(grad.begin(), grad.end(), 0.0);
  double hinge = 0.0;
  for (std::size_t i : rows) {
    auto row = x.row(i);
    const double margin = y[i] * (dot(theta.first(p), row) + theta[p]);
    if (margin >= 1.0) continue;
    hinge += 1.0 - margin;
    for (std::size_t c = 0; c < p; ++c) grad[c] -= y[i] * row[c];
    grad[p] -= y[i];
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  double wnorm2 = 0.0;
  for (std::size_t c = 0; c < p; ++c) {
    grad[c] = grad[c] * inv + lambda * theta[c];
    wnorm2 += theta[c] * theta[c];
  }
  grad[p] *= inv;
  return 0.5 * lambda * wnorm2 + hinge * inv;
}

std::vector<double> pack(std::span<const double> weights, double bias) {
  std::vector<double> theta(weights.begin(), weights.end());
  theta.push_back(bias);
  return theta;
}

GradientModelState unpack(const std::vector<double>& theta, const std::vector<double>& velocity) {
  const std::size_t p = theta.size() - 1;
  GradientModelState s;
  s.weights = Vector(std::vector<double>(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(p)));
  s.bias = theta[p];
  s.velocity =
      Vector(std::vector<double>(velocity.begin(), velocity.begin() + static_cast<std::ptrdiff_t>(p)));
  s.bias_velocity = velocity[p];
  return s;
}

double decision(const GradientModelState& state, std::span<const double> row) noexcept {
  return dot(state.weights, row) + state.bias;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    fail(Errc::InvalidConfig, "learning rate must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) fail(Errc::InvalidConfig, "momentum must be in [0, 1)");
  if (max_epochs < 1) fail(Errc::InvalidConfig, "max_epochs must be at least 1");
  if (rule == UpdateRule::Adam) {
    if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) || !(adam.beta2 >= 0.0 && adam.beta2 < 1.0) ||
        !(adam.epsilon > 0.0))
      fail(Errc::InvalidConfig, "Adam parameters out of range");
  }
}

void SvmConfig::validate() const {
  optimizer.validate();
  if (!(lambda > 0.0)) fail(Errc::InvalidConfig, "lambda must be positive");
  if (!(early_stop_accuracy > 0.0 && early_stop_accuracy <= 1.0))
    fail(Errc::InvalidConfig, "early-stop accuracy must be in (0, 1]");
}

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void momentum_step(std::span<double> velocity, std::span<const double> grad,
                   std::span<double> theta, double alpha, double beta) {
  if (velocity.size() != grad.size() || theta.size() != grad.size())
    fail(Errc::ShapeMismatch, "momentum buffers differ in length");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    velocity[i] = beta * velocity[i] + (1.0 - beta) * grad[i];
    theta[i] -= alpha * velocity[i];
  }
}

double logistic_mean_loss(std::span<const double> weights, double bias, const Matrix& x,
                          std::span<const double> y) {
  require_rows(x, y);
  require_weights(weights, x);
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double z = dot(weights, x.row(i)) + bias;
    loss += softplus(z) - y[i] * z;
  }
  return loss / static_cast<double>(x.rows());
}

ParameterGradient logistic_gradient(std::span<const double> weights, double bias,
                                    const Matrix& x, std::span<const double> y) {
  require_rows(x, y);
  require_weights(weights, x);
  const auto theta = pack(weights, bias);
  std::vector<std::size_t> all(x.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<double> grad(theta.size());
  logistic_batch(theta, x, y, all, grad);
  const double gb = grad.back();
  grad.pop_back();
  return {Vector(std::move(grad)), gb};
}

GradientModelState logistic_fit(const Matrix& x, const Vector& y, const OptimizerConfig& cfg,
                                Rng& rng) {
  cfg.validate();
  require_rows(x, y);
  for (double v : y)
    if (v != 0.0 && v != 1.0) fail(Errc::NonBinaryLabels, "logistic labels must be 0 or 1");

  const std::size_t p = x.cols();
  std::vector<double> theta(p + 1, 0.0);
  for (std::size_t c = 0; c < p; ++c) theta[c] = rng.uniform();

  ParameterUpdater updater(cfg, p + 1);
  BatchSchedule schedule(x.rows(), cfg.batch_size);
  std::vector<double> grad(p + 1);
  std::vector<double> losses;
  losses.reserve(cfg.max_epochs);

  for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    schedule.start_epoch(rng);
    double epoch_loss = 0.0;
    for (std::size_t b = 0; b < schedule.batch_count(); ++b) {
      const auto rows = schedule.batch(b);
      epoch_loss += logistic_batch(theta, x, y, rows, grad) * static_cast<double>(rows.size());
      updater.apply(grad, theta);
    }
    if (!all_finite(theta)) {
      fail(Errc::DivergedToNaN, "parameters became non-finite in epoch " + std::to_string(epoch + 1));
    }
    losses.push_back(epoch_loss / static_cast<double>(x.rows()));
  }

  auto state = unpack(theta, updater.first_moment());
  state.epochs_run = cfg.max_epochs;
  state.loss_history = std::move(losses);
  return state;
}

Vector logistic_predict_proba(const GradientModelState& state, const Matrix& x) {
  require_weights(state.weights, x);
  Vector out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = sigmoid(decision(state, x.row(r)));
  return out;
}

Vector logistic_predict(const GradientModelState& state, const Matrix& x, double threshold) {
  Vector out = logistic_predict_proba(state, x);
  for (double& p : out) p = p >= threshold ? 1.0 : 0.0;
  return out;
}

double svm_objective(std::span<const double> weights, double bias, const Matrix& x,
                     std::span<const double> y, double lambda) {
  require_rows(x, y);
  require_weights(weights, x);
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    hinge += std::max(0.0, 1.0 - y[i] * (dot(weights, x.row(i)) + bias));
  }
  return 0.5 * lambda * dot(weights, weights) + hinge / static_cast<double>(x.rows());
}

ParameterGradient svm_gradient(std::span<const double> weights, double bias, const Matrix& x,
                               std::span<const double> y, double lambda) {
  require_rows(x, y);
  require_weights(weights, x);
  const auto theta = pack(weights, bias);
  std::vector<std::size_t> all(x.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<double> grad(theta.size());
  svm_batch(theta, x, y, all, lambda, grad);
  const double gb = grad.back();
  grad.pop_back();
  return {Vector(std::move(grad)), gb};
}

GradientModelState svm_fit(const Matrix& x, const Vector& y, const SvmConfig& cfg, Rng& rng) {
  cfg.validate();
  require_rows(x, y);
  bool has_pos = false, has_neg = false;
  for (double v : y) {
    if (v == 1.0) has_pos = true;
    else if (v == -1.0) has_neg = true;
    else fail(Errc::LabelsNotPlusMinusOne, "SVM labels must be -1 or +1");
  }
  if (!has_pos || !has_neg) fail(Errc::SingleClass, "SVM training needs both classes");

  const std::size_t p = x.cols();
  const std::size_t n = x.rows();
  std::vector<double> theta(p + 1, 0.0);
  ParameterUpdater updater(cfg.optimizer, p + 1);
  BatchSchedule schedule(n, cfg.optimizer.batch_size);
  std::vector<double> grad(p + 1);

  GradientModelState state;
  std::size_t epochs = 0;
  while (epochs < cfg.optimizer.max_epochs) {
    ++epochs;
    schedule.start_epoch(rng);
    double epoch_objective = 0.0;
    for (std::size_t b = 0; b < schedule.batch_count(); ++b) {
      const auto rows = schedule.batch(b);
      epoch_objective +=
          svm_batch(theta, x, y, rows, cfg.lambda, grad) * static_cast<double>(rows.size());
      updater.apply(grad, theta);
    }
    if (!all_finite(theta)) {
      fail(Errc::DivergedToNaN, "parameters became non-finite in epoch " + std::to_string(epochs));
    }
    state.loss_history.push_back(epoch_objective / static_cast<double>(n));

    std::size_t correct = 0;
    const auto w = std::span<const double>(theta).first(p);
    for (std::size_t i = 0; i < n; ++i) {
      const double label = dot(w, x.row(i)) + theta[p] >= 0.0 ? 1.0 : -1.0;
      correct += label == y[i];
    }
    const double accuracy = static_cast<double>(correct) / static_cast<double>(n);
    state.accuracy_history.push_back(accuracy);
    if (accuracy >= cfg.early_stop_accuracy) break;
  }

  auto fitted = unpack(theta, updater.first_moment());
  fitted.epochs_run = epochs;
  fitted.loss_history = std::move(state.loss_history);
  fitted.accuracy_history = std::move(state.accuracy_history);
  return fitted;
}

Vector svm_predict(const GradientModelState& state, const Matrix& x) {
  require_weights(state.weights, x);
  Vector out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = decision(state, x.row(r)) >= 0.0 ? 1.0 : -1.0;
  return out;
}

}  // namespace fastml
