#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "fastml/metrics.hpp"

using namespace fastml;

TEST_SUITE("golden") {
  TEST_CASE("confusion: perfect prediction") {
    const Vector y{1, 1, 0, 0};
    CHECK(confusion(y, y, 1.0) == ConfusionMatrix{2, 2, 0, 0});
  }

  TEST_CASE("confusion: constant positive predictor") {
    CHECK(confusion(Vector{1, 0, 1, 0}, Vector{1, 1, 1, 1}, 1.0) == ConfusionMatrix{2, 0, 2, 0});
  }

  TEST_CASE("confusion: random labelling matches an element-wise tally") {
    std::mt19937_64 gen(51);
    std::bernoulli_distribution coin(0.5);
    Vector t(50), p(50);
    for (std::size_t i = 0; i < 50; ++i) {
      t[i] = coin(gen) ? 1.0 : -1.0;
      p[i] = coin(gen) ? 1.0 : -1.0;
    }
    ConfusionMatrix tally;
    for (std::size_t i = 0; i < 50; ++i) {
      if (t[i] == 1 && p[i] == 1) ++tally.tp;
      if (t[i] == -1 && p[i] == -1) ++tally.tn;
      if (t[i] == -1 && p[i] == 1) ++tally.fp;
      if (t[i] == 1 && p[i] == -1) ++tally.fn;
    }
    CHECK(confusion(t, p, 1.0) == tally);
  }

  TEST_CASE("regression: perfect fit") {
    const Vector y{1.5, -2, 7, 3};
    const auto r = regression_metrics(y, y);
    CHECK(r.r2 == 1.0);
    CHECK(r.mse == 0.0);
    CHECK(r.mae == 0.0);
    CHECK(r.rmse == 0.0);
  }

  TEST_CASE("regression: mean predictor has R2 of zero") {
    const Vector y{2, 4, 9, 1};
    CHECK(regression_metrics(y, Vector(4, 4.0)).r2 == 0.0);
  }

  TEST_CASE("regression: three-term hand case") {
    const auto r = regression_metrics(Vector{1, 2, 3}, Vector{2, 2, 2});
    CHECK(r.mse == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r.mae == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r.rmse == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    CHECK(r.r2 == 0.0);
  }

  TEST_CASE("classification: perfect prediction") {
    const Vector y{1, 0, 1, 1, 0};
    const auto r = classification_metrics(y, y, 1.0);
    CHECK(r.accuracy == 1.0);
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 1.0);
    CHECK(r.f1 == 1.0);
  }

  TEST_CASE("classification: one of each outcome") {
    const auto r = classification_metrics(Vector{1, 0, 1, 0}, Vector{1, 1, 0, 0}, 1.0);
    CHECK(r.matrix == ConfusionMatrix{1, 1, 1, 1});
    CHECK(r.accuracy == 0.5);
    CHECK(r.precision == 0.5);
    CHECK(r.recall == 0.5);
    CHECK(r.f1 == 0.5);
  }

  TEST_CASE("classification: never predicting positive gives zeros, not NaN") {
    const auto r = classification_metrics(Vector{1, 0, 1, 0}, Vector{0, 0, 0, 0}, 1.0);
    CHECK(r.precision == 0.0);
    CHECK(r.recall == 0.0);
    CHECK(r.f1 == 0.0);
    CHECK(r.accuracy == 0.5);
  }
}

TEST_SUITE("properties") {
  TEST_CASE("regression identities on random inputs") {
    std::mt19937_64 gen(52);
    std::uniform_int_distribution<int> len(2, 40);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = static_cast<std::size_t>(len(gen));
      const Vector y = testing::random_vector(gen, n, -100, 100);
      const Vector p = testing::random_vector(gen, n, -100, 100);
      const auto r = regression_metrics(y, p);
      CHECK(std::abs(r.rmse * r.rmse - r.mse) <= 1e-12 * r.mse);
      CHECK(r.mae <= r.rmse * (1 + 1e-15));
      CHECK(r.r2 <= 1.0);
      CHECK(regression_metrics(y, y).r2 == 1.0);
      double mean = 0.0;
      for (double v : y) mean += v;
      mean /= static_cast<double>(n);
      CHECK(std::abs(regression_metrics(y, Vector(n, mean)).r2) <= 1e-12);
    }
  }

  TEST_CASE("accuracy equals the independent match rate") {
    std::mt19937_64 gen(53);
    std::bernoulli_distribution coin(0.4);
    for (int trial = 0; trial < 200; ++trial) {
      Vector t(31), p(31);
      std::size_t matches = 0;
      for (std::size_t i = 0; i < 31; ++i) {
        t[i] = coin(gen);
        p[i] = coin(gen);
        matches += t[i] == p[i];
      }
      const auto r = classification_metrics(t, p, 1.0);
      CHECK(r.accuracy == static_cast<double>(matches) / 31.0);
      CHECK(r.matrix.total() == 31);
      for (double v : {r.accuracy, r.precision, r.recall, r.f1}) CHECK((v >= 0.0 && v <= 1.0));
      if (r.precision > 0 && r.recall > 0) {
        CHECK(r.f1 == doctest::Approx(2 / (1 / r.precision + 1 / r.recall)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("swapping the positive label swaps the matrix") {
    std::mt19937_64 gen(54);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 100; ++trial) {
      Vector t(20), p(20);
      for (std::size_t i = 0; i < 20; ++i) {
        t[i] = coin(gen) ? 3.0 : 8.0;
        p[i] = coin(gen) ? 3.0 : 8.0;
      }
      const auto a = confusion(t, p, 3.0);
      const auto b = confusion(t, p, 8.0);
      CHECK(a.tp == b.tn);
      CHECK(a.tn == b.tp);
      CHECK(a.fp == b.fn);
      CHECK(a.fn == b.fp);
    }
  }
}

TEST_CASE("metric error paths") {
  CHECK_ERRC(confusion(Vector{1, 0}, Vector{1}, 1.0), Errc::ShapeMismatch);
  CHECK_ERRC(confusion(Vector{1, 0, 2}, Vector{1, 0, 0}, 1.0), Errc::MoreThanTwoClasses);
  CHECK_ERRC(confusion(Vector{1, 1}, Vector{0, 5}, 1.0), Errc::MoreThanTwoClasses);
  CHECK_ERRC(regression_metrics(Vector{1, 2}, Vector{1}), Errc::ShapeMismatch);
  CHECK_ERRC(regression_metrics(Vector{3, 3, 3}, Vector{1, 2, 3}), Errc::ConstantTarget);
}
