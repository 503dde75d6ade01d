// Shared test helpers and independent reference implementations. The oracles
// here deliberately avoid calling into the library under test.
#ifndef FASTML_TESTS_SUPPORT_HPP
#define FASTML_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fastml/error.hpp"
#include "fastml/matrix.hpp"

namespace testing {

template <class F>
std::optional<fastml::Errc> error_of(F&& f) {
  try {
    f();
  } catch (const fastml::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define CHECK_ERRC(expr, errc) \
  CHECK(::testing::error_of([&] { (void)(expr); }) == std::optional<fastml::Errc>(errc))

// std::mt19937_64 keeps test data independent of the library's own generator.
inline fastml::Matrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols,
                                    double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  fastml::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(gen);
  return m;
}

inline fastml::Vector random_vector(std::mt19937_64& gen, std::size_t n, double lo = -1.0,
                                    double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  fastml::Vector v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline Eigen::MatrixXd to_eigen(const fastml::Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

// Least squares with an intercept column through the Moore-Penrose
// pseudo-inverse of the augmented design matrix.
inline std::vector<double> ols_pinv_oracle(const fastml::Matrix& x, std::span<const double> y) {
  Eigen::MatrixXd a(x.rows(), x.cols() + 1);
  a.col(0).setOnes();
  a.rightCols(x.cols()) = to_eigen(x);
  Eigen::VectorXd rhs(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) rhs(i) = y[i];
  const Eigen::VectorXd beta = a.completeOrthogonalDecomposition().pseudoInverse() * rhs;
  return {beta.data(), beta.data() + beta.size()};
}

// Determinant by cofactor expansion along the first row.
inline double brute_determinant(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  double det = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<double>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    det += (j % 2 == 0 ? 1.0 : -1.0) * m[0][j] * brute_determinant(minor);
  }
  return det;
}

// Mean binary cross-entropy written directly from its definition.
inline double naive_bce(std::span<const double> w, double b, const fastml::Matrix& x,
                        std::span<const double> y) {
  double total = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double z = b;
    for (std::size_t c = 0; c < x.cols(); ++c) z += w[c] * x(r, c);
    const double p = 1.0 / (1.0 + std::exp(-z));
    total += -(y[r] * std::log(p) + (1.0 - y[r]) * std::log(1.0 - p));
  }
  return total / static_cast<double>(x.rows());
}

// lambda/2 |w|^2 + mean hinge loss.
inline double naive_hinge_objective(std::span<const double> w, double b, const fastml::Matrix& x,
                                    std::span<const double> y, double lambda) {
  double reg = 0.0;
  for (double v : w) reg += v * v;
  double hinge = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double z = b;
    for (std::size_t c = 0; c < x.cols(); ++c) z += w[c] * x(r, c);
    hinge += std::max(0.0, 1.0 - y[r] * z);
  }
  return 0.5 * lambda * reg + hinge / static_cast<double>(x.rows());
}

// Central differences over theta = (w..., b).
inline std::vector<double> central_difference(
    const std::function<double(std::span<const double>, double)>& loss, std::vector<double> w,
    double b, double h = 1e-6) {
  std::vector<double> grad;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double keep = w[i];
    w[i] = keep + h;
    const double up = loss(w, b);
    w[i] = keep - h;
    const double down = loss(w, b);
    w[i] = keep;
    grad.push_back((up - down) / (2.0 * h));
  }
  grad.push_back((loss(w, b + h) - loss(w, b - h)) / (2.0 * h));
  return grad;
}

// Sorts every stored row by distance (ties by index), takes the first k and
// votes; vote ties go to the smaller summed distance, then the smaller id.
inline std::vector<double> knn_sort_oracle(const fastml::Matrix& points,
                                           std::span<const double> labels, std::size_t k,
                                           const fastml::Matrix& queries) {
  std::vector<double> out;
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t i = 0; i < points.rows(); ++i) {
      double s = 0.0;
      for (std::size_t c = 0; c < points.cols(); ++c) {
        const double d = points(i, c) - queries(q, c);
        s += d * d;
      }
      all.emplace_back(std::sqrt(s), i);
    }
    std::sort(all.begin(), all.end());
    std::map<double, std::pair<std::size_t, double>> votes;
    for (std::size_t i = 0; i < k; ++i) {
      auto& v = votes[labels[all[i].second]];
      ++v.first;
      v.second += all[i].first;
    }
    double best = 0.0;
    std::size_t best_count = 0;
    double best_dist = 0.0;
    bool first = true;
    for (const auto& [label, v] : votes) {
      if (first || v.first > best_count || (v.first == best_count && v.second < best_dist)) {
        best = label;
        best_count = v.first;
        best_dist = v.second;
        first = false;
      }
    }
    out.push_back(best);
  }
  return out;
}

// Gaussian naive Bayes evaluated as a literal product of densities times the
// prior, with its own moment estimates (n - 1 divisor).
inline std::vector<double> nb_linear_space_oracle(const fastml::Matrix& x,
                                                  std::span<const double> labels,
                                                  const fastml::Matrix& queries) {
  std::map<double, std::vector<std::size_t>> rows_of;
  for (std::size_t i = 0; i < labels.size(); ++i) rows_of[labels[i]].push_back(i);
  const double pi = std::acos(-1.0);
  std::vector<double> out;
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    double best = 0.0;
    double best_score = -1.0;
    for (const auto& [label, rows] : rows_of) {
      double score = static_cast<double>(rows.size()) / static_cast<double>(labels.size());
      for (std::size_t c = 0; c < x.cols(); ++c) {
        double mean = 0.0;
        for (std::size_t r : rows) mean += x(r, c);
        mean /= static_cast<double>(rows.size());
        double var = 0.0;
        for (std::size_t r : rows) var += (x(r, c) - mean) * (x(r, c) - mean);
        var /= static_cast<double>(rows.size() - 1);
        const double d = queries(q, c) - mean;
        score *= std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * pi * var);
      }
      if (score > best_score) {
        best_score = score;
        best = label;
      }
    }
    out.push_back(best);
  }
  return out;
}

inline std::vector<std::size_t> nearest_centroid_oracle(const fastml::Matrix& centroids,
                                                        const fastml::Matrix& x) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t j = 0; j < centroids.rows(); ++j) {
      double d = 0.0;
      for (std::size_t c = 0; c < x.cols(); ++c) d += std::pow(x(r, c) - centroids(j, c), 2);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace testing

#endif  // FASTML_TESTS_SUPPORT_HPP
