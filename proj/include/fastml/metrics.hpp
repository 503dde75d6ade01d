#ifndef FASTML_METRICS_HPP
#define FASTML_METRICS_HPP

#include <cstddef>
#include <span>

namespace fastml {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + tn + fp + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct RegressionReport {
  double r2 = 0.0;
  double mse = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
};

/// All fields on a 0..1 scale. Precision, recall and F1 are 0 when their
/// denominators vanish.
struct ClassificationReport {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ConfusionMatrix matrix;
};

/// Labels may take at most two distinct values across both inputs; anything
/// other than positive_label counts as negative.
ConfusionMatrix confusion(std::span<const double> y_true, std::span<const double> y_pred,
                          double positive_label);

/// Throws Errc::ConstantTarget when y_true has zero spread (R^2 undefined).
RegressionReport regression_metrics(std::span<const double> y_true, std::span<const double> y_pred);

ClassificationReport classification_metrics(std::span<const double> y_true,
                                            std::span<const double> y_pred, double positive_label);

}  // namespace fastml

#endif  // FASTML_METRICS_HPP
