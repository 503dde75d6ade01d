#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "fastml/preprocessing.hpp"

using namespace fastml;

namespace {

double column_mean(const Matrix& m, std::size_t c) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, c);
  return s / static_cast<double>(m.rows());
}

double column_population_std(const Matrix& m, std::size_t c) {
  const double mu = column_mean(m, c);
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += (m(r, c) - mu) * (m(r, c) - mu);
  return std::sqrt(s / static_cast<double>(m.rows()));
}

}  // namespace

TEST_SUITE("golden") {
  TEST_CASE("min-max: linear ramp") {
    const auto [state, out] = min_max_fit_transform(Matrix{{2}, {4}, {6}});
    CHECK(out == Matrix{{0}, {0.5}, {1}});
    CHECK(state.min == Vector{2});
    CHECK(state.max == Vector{6});
  }

  TEST_CASE("min-max: constant column maps to zeros") {
    const auto [state, out] = min_max_fit_transform(Matrix{{5}, {5}, {5}});
    CHECK(out == Matrix{{0}, {0}, {0}});
  }

  TEST_CASE("min-max: random 10x3 lands in [0, 1] with exact extremes") {
    std::mt19937_64 gen(4);
    const auto [state, out] = min_max_fit_transform(testing::random_matrix(gen, 10, 3, -50, 50));
    for (std::size_t c = 0; c < 3; ++c) {
      double lo = 1.0;
      double hi = 0.0;
      for (std::size_t r = 0; r < 10; ++r) {
        CHECK((out(r, c) >= 0.0 && out(r, c) <= 1.0));
        lo = std::min(lo, out(r, c));
        hi = std::max(hi, out(r, c));
      }
      CHECK(lo == 0.0);
      CHECK(hi == 1.0);
    }
  }

  TEST_CASE("standard: two points become -1 and 1") {
    const auto [state, out] = standard_fit_transform(Matrix{{1}, {3}});
    CHECK(out == Matrix{{-1}, {1}});
    CHECK(state.mean == Vector{2});
    CHECK(state.stddev == Vector{1});
  }

  TEST_CASE("standard: zero-variance column maps to zeros") {
    const auto [state, out] = standard_fit_transform(Matrix{{7}, {7}, {7}, {7}});
    CHECK(out == Matrix{{0}, {0}, {0}, {0}});
  }

  TEST_CASE("standard: random 20x4 has zero mean and unit population std") {
    std::mt19937_64 gen(9);
    const auto [state, out] = standard_fit_transform(testing::random_matrix(gen, 20, 4, -3, 12));
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(std::abs(column_mean(out, c)) < 1e-12);
      CHECK(std::abs(column_population_std(out, c) - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("split: n = 10 with ratio 0.2") {
    std::mt19937_64 gen(1);
    Rng rng(5);
    const auto s = train_val_split(testing::random_matrix(gen, 10, 2), testing::random_vector(gen, 10), 0.2, rng);
    CHECK(s.x_train.rows() == 8);
    CHECK(s.x_val.rows() == 2);
    CHECK(s.y_train.size() == 8);
    CHECK(s.y_val.size() == 2);
  }

  TEST_CASE("split: n = 3 with ratio 0.5 rounds validation to 2") {
    Rng rng(5);
    const auto s = train_val_split(Matrix{{1}, {2}, {3}}, Vector{1, 2, 3}, 0.5, rng);
    CHECK(s.x_val.rows() == 2);
    CHECK(s.x_train.rows() == 1);
  }

  TEST_CASE("split: identical seeds give identical splits") {
    std::mt19937_64 gen(2);
    const Matrix x = testing::random_matrix(gen, 25, 3);
    const Vector y = testing::random_vector(gen, 25);
    Rng a(77);
    Rng b(77);
    const auto s1 = train_val_split(x, y, 0.3, a);
    const auto s2 = train_val_split(x, y, 0.3, b);
    CHECK(s1.train_indices == s2.train_indices);
    CHECK(s1.x_val == s2.x_val);
    CHECK(s1.y_train == s2.y_train);
  }

  TEST_CASE("polynomial: single column, degree 2") {
    CHECK(polynomial_features(Matrix{{2}}, 2) == Matrix{{2, 4}});
  }

  TEST_CASE("polynomial: two features, degree 2, graded-lex with cross term") {
    CHECK(polynomial_features(Matrix{{2, 3}}, 2) == Matrix{{2, 3, 4, 6, 9}});
  }

  TEST_CASE("polynomial: three features, degree 3 gives 19 columns") {
    CHECK(polynomial_features(Matrix(1, 3, 1.0), 3).cols() == 19);
    CHECK(polynomial_feature_count(3, 3) == 19);
  }
}

TEST_SUITE("properties") {
  TEST_CASE("min-max inverse reproduces the input") {
    std::mt19937_64 gen(12);
    const Matrix x = testing::random_matrix(gen, 30, 5, -100, 100);
    const auto [state, out] = min_max_fit_transform(x);
    CHECK(testing::max_abs_diff(state.inverse_transform(out).flat(), x.flat()) <= 1e-12 * 100);
  }

  TEST_CASE("standard scaling is idempotent") {
    std::mt19937_64 gen(13);
    const auto [s1, once] = standard_fit_transform(testing::random_matrix(gen, 40, 3, 0, 10));
    const auto [s2, twice] = standard_fit_transform(once);
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(std::abs(s2.mean[c]) <= 1e-12);
      CHECK(std::abs(s2.stddev[c] - 1.0) <= 1e-12);
    }
    CHECK(testing::max_abs_diff(once.flat(), twice.flat()) <= 1e-12);
  }

  TEST_CASE("split partitions rows and keeps x/y pairing") {
    const std::size_t n = 37;
    Matrix x(n, 2);
    std::vector<double> yv(n);
    for (std::size_t i = 0; i < n; ++i) {
      x(i, 0) = static_cast<double>(i);
      x(i, 1) = -static_cast<double>(i);
      yv[i] = static_cast<double>(i * i);
    }
    Rng rng(8);
    const auto s = train_val_split(x, Vector(yv), 0.25, rng);
    std::vector<std::size_t> all = s.train_indices;
    all.insert(all.end(), s.val_indices.begin(), s.val_indices.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < n; ++i) CHECK(all[i] == i);

    std::vector<double> ys(s.y_train.begin(), s.y_train.end());
    ys.insert(ys.end(), s.y_val.begin(), s.y_val.end());
    std::sort(ys.begin(), ys.end());
    CHECK(ys == yv);
    for (std::size_t r = 0; r < s.x_train.rows(); ++r) {
      CHECK(s.y_train[r] == s.x_train(r, 0) * s.x_train(r, 0));
      CHECK(s.x_train(r, 1) == -s.x_train(r, 0));
    }
  }

  TEST_CASE("polynomial degree 1 without bias is the identity") {
    std::mt19937_64 gen(14);
    const Matrix x = testing::random_matrix(gen, 6, 4);
    CHECK(polynomial_features(x, 1) == x);
    const Matrix with_bias = polynomial_features(x, 1, true);
    CHECK(with_bias.cols() == 5);
    for (std::size_t r = 0; r < 6; ++r) CHECK(with_bias(r, 0) == 1.0);
  }

  TEST_CASE("polynomial column count matches the closed form") {
    for (std::size_t p = 1; p <= 5; ++p) {
      for (std::size_t d = 1; d <= 4; ++d) {
        // C(p + d, d) - 1 by the multiplicative formula.
        double c = 1.0;
        for (std::size_t i = 1; i <= d; ++i) c = c * static_cast<double>(p + i) / static_cast<double>(i);
        CHECK(polynomial_features(Matrix(2, p, 1.5), d).cols() == static_cast<std::size_t>(c) - 1);
      }
    }
  }
}

TEST_CASE("preprocessing error paths") {
  CHECK_ERRC(min_max_fit_transform(Matrix()), Errc::EmptyInput);
  CHECK_ERRC(standard_fit_transform(Matrix()), Errc::EmptyInput);
  CHECK_ERRC(standard_fit_transform(Matrix{{1, 2}}), Errc::TooFewRows);
  Rng rng(1);
  CHECK_ERRC(train_val_split(Matrix(4, 1), Vector(4), 0.0, rng), Errc::RatioOutOfRange);
  CHECK_ERRC(train_val_split(Matrix(4, 1), Vector(4), 1.0, rng), Errc::RatioOutOfRange);
  CHECK_ERRC(train_val_split(Matrix(4, 1), Vector(3), 0.5, rng), Errc::ShapeMismatch);
  CHECK_ERRC(polynomial_features(Matrix(2, 2), 0), Errc::DegreeZero);
  const auto state = min_max_fit(Matrix{{1, 2}, {3, 4}});
  CHECK_ERRC(state.transform(Matrix(1, 3)), Errc::ShapeMismatch);
}
