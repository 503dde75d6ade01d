#ifndef FASTML_GRADIENT_CLASSIFIERS_HPP
#define FASTML_GRADIENT_CLASSIFIERS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "fastml/matrix.hpp"
#include "fastml/rng.hpp"

namespace fastml {

enum class UpdateRule {
  Momentum,  // v = beta v + (1 - beta) g;  theta -= alpha v
  Adam,      // bias-corrected first and second moments
};

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct OptimizerConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::size_t max_epochs = 1000;
  std::size_t batch_size = 0;  // 0 means full batch
  UpdateRule rule = UpdateRule::Momentum;
  AdamParams adam;

  /// Throws Errc::InvalidConfig unless alpha > 0, 0 <= beta < 1, epochs >= 1.
  void validate() const;
};

struct SvmConfig {
  double lambda = 0.01;
  /// Training stops after the first epoch whose training accuracy reaches this.
  double early_stop_accuracy = 0.95;
  OptimizerConfig optimizer;

  void validate() const;
};

struct GradientModelState {
  Vector weights;
  double bias = 0.0;
  Vector velocity;  // one entry per weight
  double bias_velocity = 0.0;
  std::size_t epochs_run = 0;
  /// Mean training loss per epoch, evaluated at the parameters entering the
  /// epoch (BCE for logistic regression, regularized hinge objective for SVM).
  std::vector<double> loss_history;
  /// SVM only: training accuracy measured at each epoch end.
  std::vector<double> accuracy_history;
};

struct ParameterGradient {
  Vector weights;
  double bias = 0.0;
};

double sigmoid(double z) noexcept;

/// In-place momentum update over equally sized buffers:
/// velocity = beta * velocity + (1 - beta) * grad; theta -= alpha * velocity.
void momentum_step(std::span<double> velocity, std::span<const double> grad,
                   std::span<double> theta, double alpha, double beta);

/// Mean binary cross-entropy of sigmoid(X w + b) against y in {0, 1}.
double logistic_mean_loss(std::span<const double> weights, double bias, const Matrix& x,
                          std::span<const double> y);
/// Batch gradient (1/n) sum (y_hat - y) x of logistic_mean_loss.
ParameterGradient logistic_gradient(std::span<const double> weights, double bias,
                                    const Matrix& x, std::span<const double> y);

GradientModelState logistic_fit(const Matrix& x, const Vector& y, const OptimizerConfig& cfg,
                                Rng& rng);
Vector logistic_predict_proba(const GradientModelState& state, const Matrix& x);
Vector logistic_predict(const GradientModelState& state, const Matrix& x,
                        double threshold = 0.5);

/// lambda/2 ||w||^2 + (1/n) sum max(0, 1 - y (w.x + b)), labels in {-1, +1}.
double svm_objective(std::span<const double> weights, double bias, const Matrix& x,
                     std::span<const double> y, double lambda);
/// Subgradient of svm_objective; samples with margin >= 1 contribute only
/// the regularizer.
ParameterGradient svm_gradient(std::span<const double> weights, double bias, const Matrix& x,
                               std::span<const double> y, double lambda);

GradientModelState svm_fit(const Matrix& x, const Vector& y, const SvmConfig& cfg, Rng& rng);
/// sign(w.x + b) with sign(0) = +1.
Vector svm_predict(const GradientModelState& state, const Matrix& x);

}  // namespace fastml

#endif  // FASTML_GRADIENT_CLASSIFIERS_HPP
