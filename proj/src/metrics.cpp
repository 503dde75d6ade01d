#include "fastml/metrics.hpp"

#include <cmath>
#include <string>

#include "fastml/error.hpp"

namespace fastml {

ConfusionMatrix confusion(std::span<const double> y_true, std::span<const double> y_pred,
                          double positive_label) {
  if (y_true.size() != y_pred.size()) fail(Errc::ShapeMismatch, "label vectors differ in length");

  // At most two distinct label values over both inputs.
  double seen[2] = {0.0, 0.0};
  std::size_t distinct = 0;
  auto note = [&](double v) {
    for (std::size_t i = 0; i < distinct; ++i)
      if (seen[i] == v) return;
    if (distinct == 2) fail(Errc::MoreThanTwoClasses, "found a third label value " + std::to_string(v));
    seen[distinct++] = v;
  };

  ConfusionMatrix m;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    note(y_true[i]);
    note(y_pred[i]);
    const bool actual = y_true[i] == positive_label;
    const bool predicted = y_pred[i] == positive_label;
    if (actual && predicted) ++m.tp;
    else if (!actual && !predicted) ++m.tn;
    else if (predicted) ++m.fp;
    else ++m.fn;
  }
  return m;
}

RegressionReport regression_metrics(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size()) fail(Errc::ShapeMismatch, "target vectors differ in length");
  if (y_true.size() < 2) fail(Errc::ShapeMismatch, "need at least 2 pairs");

  const auto n = static_cast<double>(y_true.size());
  double mean = 0.0;
  for (double v : y_true) mean += v;
  mean /= n;

  double ss_res = 0.0, ss_tot = 0.0, abs_sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double e = y_true[i] - y_pred[i];
    const double d = y_true[i] - mean;
    ss_res += e * e;
    ss_tot += d * d;
    abs_sum += std::abs(e);
  }
  if (ss_tot == 0.0) fail(Errc::ConstantTarget, "y_true is constant; R^2 is undefined");

  RegressionReport r;
  r.mse = ss_res / n;
  r.mae = abs_sum / n;
  r.rmse = std::sqrt(r.mse);
  r.r2 = 1.0 - ss_res / ss_tot;
  return r;
}

ClassificationReport classification_metrics(std::span<const double> y_true,
                                            std::span<const double> y_pred, double positive_label) {
  ClassificationReport r;
  r.matrix = confusion(y_true, y_pred, positive_label);
  const auto& m = r.matrix;
  const auto total = static_cast<double>(m.total());
  r.accuracy = total > 0 ? static_cast<double>(m.tp + m.tn) / total : 0.0;
  r.precision = m.tp + m.fp > 0 ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp) : 0.0;
  r.recall = m.tp + m.fn > 0 ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn) : 0.0;
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

}  // namespace fastml
