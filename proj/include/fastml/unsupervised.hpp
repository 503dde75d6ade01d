#ifndef FASTML_UNSUPERVISED_HPP
#define FASTML_UNSUPERVISED_HPP

#include <cstddef>
#include <vector>

#include "fastml/matrix.hpp"
#include "fastml/rng.hpp"

namespace fastml {

struct KMeansModel {
  std::size_t k = 0;
  Matrix centroids;  // k x features
  /// Sum of squared distances from each training row to its nearest centroid.
  double inertia = 0.0;
  std::size_t iterations_run = 0;
  /// Inertia of each assignment step, in order; non-increasing.
  std::vector<double> inertia_history;
};

struct KMeansOptions {
  std::size_t max_iterations = 300;
  double tolerance = 1e-6;  // on the largest centroid displacement
};

/// Lloyd iterations from k distinct rows sampled without replacement.
/// An emptied cluster is re-seeded with the row farthest from its centroid.
KMeansModel kmeans_fit(const Matrix& x, std::size_t k, const KMeansOptions& options, Rng& rng);

/// Index of the nearest centroid for each row; ties go to the lower index.
std::vector<std::size_t> kmeans_assign(const KMeansModel& model, const Matrix& x);

struct PcaModel {
  Vector mean;
  Vector eigenvalues;  // descending, clamped at 0
  Matrix components;   // orthonormal eigenvector columns
  std::size_t n_components_kept = 0;
};

/// Centers X, forms the (n - 1)-normalized covariance and eigendecomposes it.
/// All components are kept.
PcaModel pca_fit(const Matrix& x);
/// As pca_fit, keeping the fewest components that retain variance_target.
PcaModel pca_fit(const Matrix& x, double variance_target);

/// (X - mean) * components[:, 0..n_components).
Matrix pca_transform(const PcaModel& model, const Matrix& x, std::size_t n_components);
/// Maps projected rows back to the input space.
Matrix pca_inverse_transform(const PcaModel& model, const Matrix& projected);

/// (lambda_1 + .. + lambda_j) / (lambda_1 + .. + lambda_n); exactly 1 at j = n.
double explained_variance_ratio(const PcaModel& model, std::size_t j);
/// Smallest j whose explained_variance_ratio reaches target.
std::size_t components_for_variance(const PcaModel& model, double target);

}  // namespace fastml

#endif  // FASTML_UNSUPERVISED_HPP
