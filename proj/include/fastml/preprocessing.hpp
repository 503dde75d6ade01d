#ifndef FASTML_PREPROCESSING_HPP
#define FASTML_PREPROCESSING_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "fastml/matrix.hpp"
#include "fastml/rng.hpp"

namespace fastml {

/// Per-column bounds for (x - min) / (max - min). Constant columns map to 0.
struct MinMaxScalerState {
  Vector min;
  Vector max;

  Matrix transform(const Matrix& x) const;
  Matrix inverse_transform(const Matrix& scaled) const;
};

/// Per-column mean and population standard deviation (divide by n).
/// Zero-variance columns map to 0.
struct StandardScalerState {
  Vector mean;
  Vector stddev;

  Matrix transform(const Matrix& x) const;
  Matrix inverse_transform(const Matrix& scaled) const;
};

MinMaxScalerState min_max_fit(const Matrix& x);
std::pair<MinMaxScalerState, Matrix> min_max_fit_transform(const Matrix& x);

StandardScalerState standard_fit(const Matrix& x);
std::pair<StandardScalerState, Matrix> standard_fit_transform(const Matrix& x);

struct SplitResult {
  Matrix x_train;
  Matrix x_val;
  Vector y_train;
  Vector y_val;
  double val_ratio = 0.0;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> val_indices;
};

/// Validation size is round(val_ratio * n) clamped to [1, n - 1]. Rows are
/// permuted with shuffled_indices; the first n_train go to training.
SplitResult train_val_split(const Matrix& x, const Vector& y, double val_ratio, Rng& rng);

/// Monomials of total degree 1..degree in graded-lexicographic order
/// (x1, x2, x1^2, x1 x2, x2^2, ...), optionally led by a ones column.
Matrix polynomial_features(const Matrix& x, std::size_t degree, bool include_bias = false);

/// Column count polynomial_features produces without the bias column,
/// C(p + degree, degree) - 1.
std::size_t polynomial_feature_count(std::size_t features, std::size_t degree);

}  // namespace fastml

#endif  // FASTML_PREPROCESSING_HPP
