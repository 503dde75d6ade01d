#ifndef FASTML_INSTANCE_MODELS_HPP
#define FASTML_INSTANCE_MODELS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "fastml/matrix.hpp"

namespace fastml {

// Class ids travel as integral doubles so they share containers with targets
// loaded from CSV.

struct KnnModel {
  Matrix points;
  Vector labels;
  std::size_t k = 1;
};

/// Stores the training set. Throws Errc::KOutOfRange unless 1 <= k <= rows.
KnnModel knn_fit(Matrix x, Vector labels, std::size_t k);

/// Majority vote among the k nearest stored rows (Euclidean distance; equal
/// distances resolved by lower stored index). Vote ties go to the class with
/// the smallest summed neighbour distance, then the smallest class id.
Vector knn_predict(const KnnModel& model, const Matrix& queries);

struct ClassStatistics {
  double class_id = 0.0;
  double prior = 0.0;
  Vector mean;
  Vector stddev;  // sample standard deviation (n - 1), floored
};

struct GaussianNbModel {
  std::vector<ClassStatistics> classes;  // ascending class id
  std::size_t feature_count = 0;
  double variance_floor = 0.0;
};

/// Per-class priors, means and sample standard deviations. Variances are
/// floored at 1e-9 times the largest per-feature variance of the whole
/// training set (or 1e-9 if every feature is constant).
GaussianNbModel nb_fit(const Matrix& x, const Vector& labels);

/// log(prior) + sum_i log N(x_i; mu, sigma^2) for every class, in class order.
std::vector<double> nb_log_scores(const GaussianNbModel& model, std::span<const double> row);

/// Highest log score wins; exact ties go to the smallest class id.
Vector nb_predict(const GaussianNbModel& model, const Matrix& queries);

}  // namespace fastml

#endif  // FASTML_INSTANCE_MODELS_HPP
