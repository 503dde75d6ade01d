#include "fastml/instance_models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "fastml/error.hpp"

namespace fastml {
namespace {

void require_class_ids(const Vector& labels) {
  for (double v : labels)
    if (v != std::floor(v)) fail(Errc::ShapeMismatch, "class ids must be integral");
}

}  // namespace

KnnModel knn_fit(Matrix x, Vector labels, std::size_t k) {
  if (x.rows() != labels.size()) fail(Errc::ShapeMismatch, "X rows and label count differ");
  if (k < 1 || k > x.rows()) {
    fail(Errc::KOutOfRange, "k = " + std::to_string(k) + " outside [1, " +
                                std::to_string(x.rows()) + "]");
  }
  require_class_ids(labels);
  return {std::move(x), std::move(labels), k};
}

Vector knn_predict(const KnnModel& model, const Matrix& queries) {
  if (queries.cols() != model.points.cols()) fail(Errc::ShapeMismatch, "query width differs");
  if (model.k < 1 || model.k > model.points.rows()) fail(Errc::KOutOfRange, "k out of range");

  const std::size_t n = model.points.rows();
  const std::size_t k = model.k;
  std::vector<std::pair<double, std::size_t>> dist(n);
  Vector out(queries.rows());

  for (std::size_t q = 0; q < queries.rows(); ++q) {
    auto query = queries.row(q);
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = {std::sqrt(squared_distance(query, model.points.row(i))), i};
    }
    // Pairs order by distance, then stored index.
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());

    struct Tally {
      std::size_t votes = 0;
      double distance = 0.0;
    };
    std::map<double, Tally> tally;
    for (std::size_t j = 0; j < k; ++j) {
      auto& t = tally[model.labels[dist[j].second]];
      ++t.votes;
      t.distance += dist[j].first;
    }
    auto best = tally.begin();
    for (auto it = std::next(tally.begin()); it != tally.end(); ++it) {
      const auto& cand = it->second;
      const auto& cur = best->second;
      if (cand.votes > cur.votes || (cand.votes == cur.votes && cand.distance < cur.distance)) {
        best = it;
      }
    }
    out[q] = best->first;
  }
  return out;
}

GaussianNbModel nb_fit(const Matrix& x, const Vector& labels) {
  if (x.rows() != labels.size()) fail(Errc::ShapeMismatch, "X rows and label count differ");
  if (x.empty()) fail(Errc::EmptyInput, "Naive Bayes needs training data");
  require_class_ids(labels);

  const std::size_t p = x.cols();
  std::map<double, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);

  auto column_variance = [&](std::span<const std::size_t> rows, std::size_t c, double mean) {
    double s = 0.0;
    for (std::size_t i : rows) {
      const double d = x(i, c) - mean;
      s += d * d;
    }
    return s / static_cast<double>(rows.size() - 1);
  };
  auto column_mean = [&](std::span<const std::size_t> rows, std::size_t c) {
    double s = 0.0;
    for (std::size_t i : rows) s += x(i, c);
    return s / static_cast<double>(rows.size());
  };

  double max_variance = 0.0;
  if (x.rows() >= 2) {
    std::vector<std::size_t> all(x.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    for (std::size_t c = 0; c < p; ++c) {
      max_variance = std::max(max_variance, column_variance(all, c, column_mean(all, c)));
    }
  }
  GaussianNbModel model;
  model.feature_count = p;
  model.variance_floor = 1e-9 * (max_variance > 0.0 ? max_variance : 1.0);

  const auto total = static_cast<double>(x.rows());
  for (const auto& [id, rows] : members) {
    if (rows.size() < 2) {
      fail(Errc::ClassTooSmall, "class " + std::to_string(id) + " has fewer than 2 samples");
    }
    ClassStatistics stats;
    stats.class_id = id;
    stats.prior = static_cast<double>(rows.size()) / total;
    stats.mean = Vector(p);
    stats.stddev = Vector(p);
    for (std::size_t c = 0; c < p; ++c) {
      stats.mean[c] = column_mean(rows, c);
      const double var = column_variance(rows, c, stats.mean[c]);
      stats.stddev[c] = std::sqrt(std::max(var, model.variance_floor));
    }
    model.classes.push_back(std::move(stats));
  }
  return model;
}

std::vector<double> nb_log_scores(const GaussianNbModel& model, std::span<const double> row) {
  if (row.size() != model.feature_count) fail(Errc::ShapeMismatch, "query width differs");
  constexpr double log_two_pi = 1.8378770664093454835606594728112;  // ln(2 pi)
  std::vector<double> scores;
  scores.reserve(model.classes.size());
  for (const auto& cls : model.classes) {
    double s = std::log(cls.prior);
    for (std::size_t c = 0; c < row.size(); ++c) {
      const double sigma = cls.stddev[c];
      const double z = (row[c] - cls.mean[c]) / sigma;
      s += -0.5 * log_two_pi - std::log(sigma) - 0.5 * z * z;
    }
    scores.push_back(s);
  }
  return scores;
}

Vector nb_predict(const GaussianNbModel& model, const Matrix& queries) {
  if (queries.cols() != model.feature_count) fail(Errc::ShapeMismatch, "query width differs");
  Vector out(queries.rows());
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    const auto scores = nb_log_scores(model, queries.row(q));
    const auto best = std::max_element(scores.begin(), scores.end());  // first maximum
    out[q] = model.classes[static_cast<std::size_t>(best - scores.begin())].class_id;
  }
  return out;
}

}  // namespace fastml
