#include "fastml/unsupervised.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fastml/error.hpp"
#include "fastml/linalg.hpp"

namespace fastml {
namespace {

struct Assignment {
  std::vector<std::size_t> cluster;
  std::vector<double> sq_distance;
  double inertia = 0.0;
};

std::size_t nearest(const Matrix& centroids, std::span<const double> row, double& best_sq) {
  std::size_t best = 0;
  best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centroids.rows(); ++j) {
    const double d = squared_distance(row, centroids.row(j));
    if (d < best_sq) {
      best_sq = d;
      best = j;
    }
  }
  return best;
}

Assignment assign_all(const Matrix& centroids, const Matrix& x) {
  Assignment a;
  a.cluster.resize(x.rows());
  a.sq_distance.resize(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    a.cluster[i] = nearest(centroids, x.row(i), a.sq_distance[i]);
    a.inertia += a.sq_distance[i];
  }
  return a;
}

double cumulative_eigenvalues(const PcaModel& model, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < j; ++i) s += model.eigenvalues[i];
  return s;
}

double total_variance(const PcaModel& model) {
  const double total = cumulative_eigenvalues(model, model.eigenvalues.size());
  if (!(total > 0.0)) fail(Errc::AllZeroVariance, "all eigenvalues are zero");
  return total;
}

}  // namespace

KMeansModel kmeans_fit(const Matrix& x, std::size_t k, const KMeansOptions& options, Rng& rng) {
  if (k == 0) fail(Errc::KZero, "k must be at least 1");
  if (x.rows() < k) {
    fail(Errc::KTooLarge, "k = " + std::to_string(k) + " exceeds " + std::to_string(x.rows()) +
                              " rows");
  }
  if (options.max_iterations < 1) fail(Errc::InvalidConfig, "max_iterations must be at least 1");

  const std::size_t p = x.cols();
  const auto order = shuffled_indices(x.rows(), rng);
  Matrix centroids = x.select_rows(std::span<const std::size_t>(order).first(k));

  KMeansModel model;
  model.k = k;
  Matrix sums(k, p);
  std::vector<std::size_t> counts(k);

  while (model.iterations_run < options.max_iterations) {
    auto a = assign_all(centroids, x);
    model.inertia_history.push_back(a.inertia);

    std::fill(counts.begin(), counts.end(), 0);
    sums = Matrix(k, p);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      auto dst = sums.row(a.cluster[i]);
      auto src = x.row(i);
      for (std::size_t c = 0; c < p; ++c) dst[c] += src[c];
      ++counts[a.cluster[i]];
    }
    Matrix updated(k, p);
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] == 0) continue;
      const double inv = 1.0 / static_cast<double>(counts[j]);
      for (std::size_t c = 0; c < p; ++c) updated(j, c) = sums(j, c) * inv;
    }
    for (std::size_t i = 0; i < x.rows(); ++i) {
      a.sq_distance[i] = squared_distance(x.row(i), updated.row(a.cluster[i]));
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] != 0) continue;
      const auto far = static_cast<std::size_t>(
          std::max_element(a.sq_distance.begin(), a.sq_distance.end()) - a.sq_distance.begin());
      auto src = x.row(far);
      std::copy(src.begin(), src.end(), updated.row(j).begin());
      a.sq_distance[far] = 0.0;
      counts[j] = 1;
    }

    double displacement = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      displacement = std::max(displacement, std::sqrt(squared_distance(updated.row(j), centroids.row(j))));
    }
    centroids = std::move(updated);
    ++model.iterations_run;
    if (displacement <= options.tolerance) break;
  }

  const auto final_assignment = assign_all(centroids, x);
  model.inertia = final_assignment.inertia;
  model.inertia_history.push_back(final_assignment.inertia);
  model.centroids = std::move(centroids);
  return model;
}

std::vector<std::size_t> kmeans_assign(const KMeansModel& model, const Matrix& x) {
  if (x.cols() != model.centroids.cols()) fail(Errc::ShapeMismatch, "feature count differs");
  std::vector<std::size_t> out(x.rows());
  double unused = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = nearest(model.centroids, x.row(i), unused);
  return out;
}

PcaModel pca_fit(const Matrix& x) {
  if (x.rows() < 2) fail(Errc::TooFewRows, "PCA needs at least 2 rows");
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();

  Vector mean(p);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < p; ++c) mean[c] += row[c];
  }
  for (double& m : mean) m /= static_cast<double>(n);

  Matrix cov(p, p);
  std::vector<double> centered(p);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < p; ++c) centered[c] = row[c] - mean[c];
    for (std::size_t i = 0; i < p; ++i) {
      double* dst = cov.row(i).data();
      for (std::size_t j = i; j < p; ++j) dst[j] += centered[i] * centered[j];
    }
  }
  const double inv = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      cov(i, j) *= inv;
      cov(j, i) = cov(i, j);
    }
  }

  auto eig = symmetric_eigen(cov);
  for (double& l : eig.values) l = std::max(l, 0.0);
  return {std::move(mean), std::move(eig.values), std::move(eig.vectors), p};
}

PcaModel pca_fit(const Matrix& x, double variance_target) {
  PcaModel model = pca_fit(x);
  model.n_components_kept = components_for_variance(model, variance_target);
  return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& x, std::size_t n_components) {
  const std::size_t p = model.mean.size();
  if (x.cols() != p) fail(Errc::ShapeMismatch, "feature count differs");
  if (n_components > p) {
    fail(Errc::TooManyComponents, std::to_string(n_components) + " components requested, " +
                                      std::to_string(p) + " available");
  }
  Matrix out(x.rows(), n_components);
  std::vector<double> centered(p);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < p; ++c) centered[c] = row[c] - model.mean[c];
    for (std::size_t j = 0; j < n_components; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < p; ++c) s += centered[c] * model.components(c, j);
      out(r, j) = s;
    }
  }
  return out;
}

Matrix pca_inverse_transform(const PcaModel& model, const Matrix& projected) {
  const std::size_t p = model.mean.size();
  if (projected.cols() > p) fail(Errc::TooManyComponents, "too many projected columns");
  Matrix out(projected.rows(), p);
  for (std::size_t r = 0; r < projected.rows(); ++r) {
    for (std::size_t c = 0; c < p; ++c) {
      double s = model.mean[c];
      for (std::size_t j = 0; j < projected.cols(); ++j) s += projected(r, j) * model.components(c, j);
      out(r, c) = s;
    }
  }
  return out;
}

double explained_variance_ratio(const PcaModel& model, std::size_t j) {
  if (j < 1 || j > model.eigenvalues.size()) {
    fail(Errc::TooManyComponents, "component count " + std::to_string(j) + " out of range");
  }
  const double total = total_variance(model);
  return cumulative_eigenvalues(model, j) / total;
}

std::size_t components_for_variance(const PcaModel& model, double target) {
  if (!(target > 0.0 && target <= 1.0)) fail(Errc::RatioOutOfRange, "target must lie in (0, 1]");
  const double total = total_variance(model);
  double cum = 0.0;
  for (std::size_t j = 0; j < model.eigenvalues.size(); ++j) {
    cum += model.eigenvalues[j];
    if (cum / total >= target) return j + 1;
  }
  return model.eigenvalues.size();
}

}  // namespace fastml
