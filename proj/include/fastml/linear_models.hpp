#ifndef FASTML_LINEAR_MODELS_HPP
#define FASTML_LINEAR_MODELS_HPP

#include <cstddef>
#include <span>

#include "fastml/matrix.hpp"

namespace fastml {

/// y = slope * x + intercept
struct SimpleLinearModel {
  double slope = 0.0;
  double intercept = 0.0;

  double predict(double x) const noexcept { return slope * x + intercept; }
};

/// Coefficients with the intercept first, then one weight per feature.
struct FittedLinearModel {
  Vector coefficients;
  std::size_t feature_count = 0;
};

struct PolynomialModel {
  std::size_t degree = 1;
  std::size_t input_features = 0;
  FittedLinearModel inner;
};

/// Closed-form least-squares line from the running sums Sx, Sy, Sxy, Sxx.
/// Throws Errc::DegenerateX when k*Sxx - Sx^2 <= 1e-12 * k * Sxx.
SimpleLinearModel fit_simple(std::span<const double> x, std::span<const double> y);

/// Solves the normal equations (X^T X) beta = X^T y with X augmented by a
/// leading ones column. Collinear features surface as Errc::SingularMatrix.
FittedLinearModel fit_multiple(const Matrix& x, std::span<const double> y);

Vector predict_linear(const FittedLinearModel& model, const Matrix& x);

/// polynomial_features (no bias) followed by fit_multiple.
PolynomialModel fit_polynomial(const Matrix& x, std::span<const double> y, std::size_t degree);

Vector predict_polynomial(const PolynomialModel& model, const Matrix& x);

}  // namespace fastml

#endif  // FASTML_LINEAR_MODELS_HPP
