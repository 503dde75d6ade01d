#include "fastml/preprocessing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fastml/error.hpp"

namespace fastml {
namespace {

void require_columns(const Matrix& x, std::size_t expected) {
  if (x.cols() != expected) {
    fail(Errc::ShapeMismatch, "expected " + std::to_string(expected) + " columns, got " +
                                  std::to_string(x.cols()));
  }
}

// Nondecreasing index tuples of the given length, in lexicographic order.
void combinations_with_replacement(std::size_t features, std::size_t length,
                                   std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> current(length, 0);
  if (features == 0) return;
  for (;;) {
    out.push_back(current);
    std::size_t pos = length;
    while (pos > 0 && current[pos - 1] == features - 1) --pos;
    if (pos == 0) return;
    const std::size_t next = current[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < length; ++i) current[i] = next;
  }
}

}  // namespace

MinMaxScalerState min_max_fit(const Matrix& x) {
  if (x.empty()) fail(Errc::EmptyInput, "min-max scaler needs a non-empty matrix");
  Vector lo(x.cols()), hi(x.cols());
  auto first = x.row(0);
  std::copy(first.begin(), first.end(), lo.begin());
  std::copy(first.begin(), first.end(), hi.begin());
  for (std::size_t r = 1; r < x.rows(); ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) {
      lo[c] = std::min(lo[c], row[c]);
      hi[c] = std::max(hi[c], row[c]);
    }
  }
  return {std::move(lo), std::move(hi)};
}

Matrix MinMaxScalerState::transform(const Matrix& x) const {
  require_columns(x, min.size());
  Matrix out(x.rows(), x.cols());
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const double range = max[c] - min[c];
    for (std::size_t r = 0; r < x.rows(); ++r) {
      out(r, c) = range > 0.0 ? (x(r, c) - min[c]) / range : 0.0;
    }
  }
  return out;
}

Matrix MinMaxScalerState::inverse_transform(const Matrix& scaled) const {
  require_columns(scaled, min.size());
  Matrix out(scaled.rows(), scaled.cols());
  for (std::size_t r = 0; r < scaled.rows(); ++r)
    for (std::size_t c = 0; c < scaled.cols(); ++c)
      out(r, c) = min[c] + scaled(r, c) * (max[c] - min[c]);
  return out;
}

std::pair<MinMaxScalerState, Matrix> min_max_fit_transform(const Matrix& x) {
  auto state = min_max_fit(x);
  auto scaled = state.transform(x);
  return {std::move(state), std::move(scaled)};
}

StandardScalerState standard_fit(const Matrix& x) {
  if (x.empty()) fail(Errc::EmptyInput, "standard scaler needs a non-empty matrix");
  if (x.rows() < 2) fail(Errc::TooFewRows, "standard scaler needs at least 2 rows");
  const auto n = static_cast<double>(x.rows());
  Vector mean(x.cols()), sd(x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) mean[c] += row[c];
  }
  for (double& m : mean) m /= n;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const double d = row[c] - mean[c];
      sd[c] += d * d;
    }
  }
  for (double& s : sd) s = std::sqrt(s / n);
  return {std::move(mean), std::move(sd)};
}

Matrix StandardScalerState::transform(const Matrix& x) const {
  require_columns(x, mean.size());
  Matrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto src = x.row(r);
    auto dst = out.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) {
      dst[c] = stddev[c] > 0.0 ? (src[c] - mean[c]) / stddev[c] : 0.0;
    }
  }
  return out;
}

Matrix StandardScalerState::inverse_transform(const Matrix& scaled) const {
  require_columns(scaled, mean.size());
  Matrix out(scaled.rows(), scaled.cols());
  for (std::size_t r = 0; r < scaled.rows(); ++r)
    for (std::size_t c = 0; c < scaled.cols(); ++c)
      out(r, c) = mean[c] + scaled(r, c) * stddev[c];
  return out;
}

std::pair<StandardScalerState, Matrix> standard_fit_transform(const Matrix& x) {
  auto state = standard_fit(x);
  auto scaled = state.transform(x);
  return {std::move(state), std::move(scaled)};
}

SplitResult train_val_split(const Matrix& x, const Vector& y, double val_ratio, Rng& rng) {
  if (!(val_ratio > 0.0 && val_ratio < 1.0)) {
    fail(Errc::RatioOutOfRange, "validation ratio must lie in (0, 1)");
  }
  if (x.rows() != y.size()) fail(Errc::ShapeMismatch, "X rows and y length differ");
  const std::size_t n = x.rows();
  if (n < 2) fail(Errc::ShapeMismatch, "split needs at least 2 rows");

  auto n_val = static_cast<std::size_t>(std::llround(val_ratio * static_cast<double>(n)));
  n_val = std::clamp<std::size_t>(n_val, 1, n - 1);
  const std::size_t n_train = n - n_val;

  auto order = shuffled_indices(n, rng);
  SplitResult out;
  out.val_ratio = val_ratio;
  out.train_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.val_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  out.x_train = x.select_rows(out.train_indices);
  out.x_val = x.select_rows(out.val_indices);
  out.y_train = gather(y, out.train_indices);
  out.y_val = gather(y, out.val_indices);
  return out;
}

std::size_t polynomial_feature_count(std::size_t features, std::size_t degree) {
  // C(p + d, d) built incrementally; each partial product is itself a binomial.
  std::size_t c = 1;
  for (std::size_t i = 1; i <= degree; ++i) c = c * (features + i) / i;
  return c - 1;
}

Matrix polynomial_features(const Matrix& x, std::size_t degree, bool include_bias) {
  if (degree == 0) fail(Errc::DegreeZero, "polynomial degree must be at least 1");
  std::vector<std::vector<std::size_t>> terms;
  for (std::size_t d = 1; d <= degree; ++d) combinations_with_replacement(x.cols(), d, terms);

  const std::size_t offset = include_bias ? 1 : 0;
  Matrix out(x.rows(), terms.size() + offset);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto src = x.row(r);
    auto dst = out.row(r);
    if (include_bias) dst[0] = 1.0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      double v = 1.0;
      for (std::size_t idx : terms[t]) v *= src[idx];
      dst[t + offset] = v;
    }
  }
  return out;
}

}  // namespace fastml
