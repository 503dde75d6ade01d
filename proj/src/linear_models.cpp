#include "fastml/linear_models.hpp"

#include <string>
#include <vector>

#include "fastml/error.hpp"
#include "fastml/linalg.hpp"
#include "fastml/preprocessing.hpp"

namespace fastml {

SimpleLinearModel fit_simple(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(Errc::ShapeMismatch, "x and y lengths differ");
  if (x.size() < 2) fail(Errc::ShapeMismatch, "simple regression needs at least 2 points");

  double sx = 0.0, sy = 0.0, sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  const auto k = static_cast<double>(x.size());
  const double denom = k * sxx - sx * sx;
  if (denom <= 1e-12 * k * sxx) fail(Errc::DegenerateX, "x is (numerically) constant");

  SimpleLinearModel m;
  m.slope = (k * sxy - sy * sx) / denom;
  m.intercept = (sy - m.slope * sx) / k;
  return m;
}

FittedLinearModel fit_multiple(const Matrix& x, std::span<const double> y) {
  if (x.rows() != y.size()) fail(Errc::ShapeMismatch, "X rows and y length differ");
  const std::size_t p = x.cols() + 1;
  if (x.rows() < p) {
    fail(Errc::TooFewRows, "need at least " + std::to_string(p) + " rows for " +
                               std::to_string(x.cols()) + " features");
  }

  // Accumulate the upper triangle of [1 X]^T [1 X] and [1 X]^T y row by row,
  // without materializing the augmented design matrix.
  Matrix xtx(p, p);
  std::vector<double> xty(p, 0.0);
  std::vector<double> aug(p);
  aug[0] = 1.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    std::copy(row.begin(), row.end(), aug.begin() + 1);
    for (std::size_t i = 0; i < p; ++i) {
      const double ai = aug[i];
      double* dst = xtx.row(i).data();
      for (std::size_t j = i; j < p; ++j) dst[j] += ai * aug[j];
      xty[i] += ai * y[r];
    }
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < i; ++j) xtx(i, j) = xtx(j, i);

  return {solve_linear_system(xtx, xty), x.cols()};
}

Vector predict_linear(const FittedLinearModel& model, const Matrix& x) {
  if (x.cols() != model.feature_count) {
    fail(Errc::ShapeMismatch, "model has " + std::to_string(model.feature_count) +
                                  " features, X has " + std::to_string(x.cols()));
  }
  const auto& beta = model.coefficients;
  Vector out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    double s = beta[0];
    for (std::size_t c = 0; c < row.size(); ++c) s += beta[c + 1] * row[c];
    out[r] = s;
  }
  return out;
}

PolynomialModel fit_polynomial(const Matrix& x, std::span<const double> y, std::size_t degree) {
  const Matrix expanded = polynomial_features(x, degree, false);
  return {degree, x.cols(), fit_multiple(expanded, y)};
}

Vector predict_polynomial(const PolynomialModel& model, const Matrix& x) {
  if (x.cols() != model.input_features) fail(Errc::ShapeMismatch, "feature count differs");
  return predict_linear(model.inner, polynomial_features(x, model.degree, false));
}

}  // namespace fastml
