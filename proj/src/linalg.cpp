#include "fastml/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fastml/error.hpp"

namespace fastml {
namespace {

constexpr double kPivotTolerance = 1e-12;
constexpr double kSymmetryTolerance = 1e-9;
constexpr double kJacobiTolerance = 1e-10;
constexpr std::size_t kMaxSweeps = 100;

double max_abs_row_sum(const Matrix& a) {
  double best = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double s = 0.0;
    for (double v : a.row(r)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

double frobenius_norm(const Matrix& m) noexcept {
  double s = 0.0;
  for (double v : m.flat()) s += v * v;
  return std::sqrt(s);
}

Vector solve_linear_system(const Matrix& a, std::span<const double> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) fail(Errc::ShapeMismatch, "solve_linear_system needs a square matrix");
  if (b.size() != n) fail(Errc::ShapeMismatch, "right-hand side length differs from matrix order");

  Matrix lu = a;
  std::vector<double> x(b.begin(), b.end());
  const double tiny = kPivotTolerance * max_abs_row_sum(a);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    if (!(std::abs(lu(pivot, k)) >= tiny) || lu(pivot, k) == 0.0) {
      fail(Errc::SingularMatrix, "pivot " + std::to_string(k) + " below tolerance");
    }
    if (pivot != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(pivot).begin());
      std::swap(x[k], x[pivot]);
    }
    const double diag = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu(i, k) / diag;
      if (factor == 0.0) continue;
      lu(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
      x[i] -= factor * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * x[j];
    x[k] = s / lu(k, k);
  }
  return Vector(std::move(x));
}

EigenDecomposition symmetric_eigen(const Matrix& s) {
  const std::size_t n = s.rows();
  if (s.cols() != n) fail(Errc::NotSymmetric, "matrix is not square");

  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(s(i, j) - s(j, i));
    asym = std::max(asym, row);
  }
  if (asym > kSymmetryTolerance * max_abs_row_sum(s)) {
    fail(Errc::NotSymmetric, "||S - S^T||_inf exceeds tolerance");
  }

  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));
  Matrix v = Matrix::identity(n);

  const double target = kJacobiTolerance * frobenius_norm(a);
  std::size_t sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweep == kMaxSweeps) fail(Errc::NoConvergence, "Jacobi sweep cap reached");
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - sn * akq;
          a(k, q) = a(q, k) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out{Vector(n), Matrix(n, n), sweep};
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.values[c] = a(src, src);

    double biggest = 0.0;
    for (std::size_t k = 0; k < n; ++k) biggest = std::max(biggest, std::abs(v(k, src)));
    // Magnitudes equal up to rounding count as a tie.
    std::size_t lead = 0;
    while (lead < n && std::abs(v(lead, src)) < biggest * (1.0 - 1e-12)) ++lead;
    const double sign = (lead < n && v(lead, src) < 0.0) ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = sign * v(k, src);
  }
  return out;
}

}  // namespace fastml
