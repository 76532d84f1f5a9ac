#include "tweetpol/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tweetpol/errors.hpp"

namespace tweetpol {

OpinionVector::OpinionVector(const std::array<double, kEnsembleSize>& codes) : values_(codes) {
  for (double c : codes) {
    if (c != -1.0 && c != 0.0 && c != 1.0) {
      throw ArgumentError("opinion components must be -1, 0 or +1");
    }
  }
}

OpinionVector OpinionVector::from_votes(std::span<const Label> votes) {
  if (votes.size() != kEnsembleSize) {
    throw ArgumentError("opinion vector needs exactly 7 votes, got " +
                        std::to_string(votes.size()));
  }
  std::array<double, kEnsembleSize> codes{};
  for (std::size_t i = 0; i < kEnsembleSize; ++i) codes[i] = opinion_code(votes[i]);
  return OpinionVector(codes);
}

std::string_view to_string(DistanceMetric metric) noexcept {
  switch (metric) {
    case DistanceMetric::Euclidean:
      return "euclidean";
    case DistanceMetric::Manhattan:
      return "manhattan";
    case DistanceMetric::Chebyshev:
      return "chebyshev";
    case DistanceMetric::CosineDissimilarity:
      return "cosine";
    case DistanceMetric::Orthodromic:
      return "orthodromic";
  }
  return "euclidean";
}

DistanceMetric parse_metric(std::string_view name) {
  for (DistanceMetric m : kAllMetrics) {
    if (name == to_string(m)) return m;
  }
  throw ArgumentError("unknown distance metric '" + std::string(name) + "'");
}

Label majority_vote(std::span<const Label> votes) {
  if (votes.size() != kEnsembleSize) {
    throw ArgumentError("majority_vote needs exactly 7 votes, got " +
                        std::to_string(votes.size()));
  }
  PerLabel<int> counts{};
  for (Label v : votes) ++counts[index_of(v)];
  const int top = *std::max_element(counts.begin(), counts.end());
  if (std::count(counts.begin(), counts.end(), top) > 1) return Label::Neutral;
  return label_at(static_cast<std::size_t>(std::find(counts.begin(), counts.end(), top) -
                                           counts.begin()));
}

Label classify_mean_opinion(double mean) {
  if (mean >= 1.0 / 3.0) return Label::Positive;
  if (mean <= -1.0 / 3.0) return Label::Negative;
  return Label::Neutral;
}

Label average_opinion(const OpinionVector& v) {
  // Components are integers, so compare 3 * sum against n exactly.
  int sum = 0;
  for (double c : v.values()) sum += static_cast<int>(c);
  const int n = static_cast<int>(kEnsembleSize);
  if (3 * sum >= n) return Label::Positive;
  if (3 * sum <= -n) return Label::Negative;
  return Label::Neutral;
}

ClassCentroids::ClassCentroids(PerLabel<std::vector<double>> centroids)
    : centroids_(std::move(centroids)) {}

ClassCentroids compute_centroids(std::span<const std::pair<OpinionVector, Label>> train) {
  PerLabel<std::vector<double>> sums;
  PerLabel<std::size_t> counts{};
  for (auto& s : sums) s.assign(kEnsembleSize, 0.0);
  for (const auto& [vec, label] : train) {
    auto& sum = sums[index_of(label)];
    for (std::size_t i = 0; i < kEnsembleSize; ++i) sum[i] += vec.values()[i];
    ++counts[index_of(label)];
  }
  for (Label label : kAllLabels) {
    const std::size_t n = counts[index_of(label)];
    if (n == 0) {
      throw ArgumentError("compute_centroids: no opinion vectors for class '" +
                          std::string(to_string(label)) + "'");
    }
    for (double& x : sums[index_of(label)]) x /= static_cast<double>(n);
  }
  return ClassCentroids(std::move(sums));
}

double distance(std::span<const double> u, std::span<const double> v, DistanceMetric metric) {
  if (u.size() != v.size()) {
    throw ArgumentError("distance: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                        std::to_string(v.size()) + ")");
  }
  switch (metric) {
    case DistanceMetric::Euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
      return std::sqrt(s);
    }
    case DistanceMetric::Manhattan: {
      double s = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i] - v[i]);
      return s;
    }
    case DistanceMetric::Chebyshev: {
      double m = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
      return m;
    }
    case DistanceMetric::CosineDissimilarity:
    case DistanceMetric::Orthodromic: {
      double dot = 0.0;
      double nu = 0.0;
      double nv = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
      }
      double cosine = 0.0;
      if (nu > 0.0 && nv > 0.0) cosine = std::clamp(dot / std::sqrt(nu * nv), -1.0, 1.0);
      if (metric == DistanceMetric::CosineDissimilarity) return std::max(0.0, 1.0 - cosine);
      return std::acos(cosine);
    }
  }
  return 0.0;
}

Label centroid_classify(std::span<const double> v, const ClassCentroids& centroids,
                        DistanceMetric metric) {
  Label best = Label::Negative;
  double best_distance = distance(v, centroids.of(best), metric);
  for (Label label : {Label::Neutral, Label::Positive}) {
    const double d = distance(v, centroids.of(label), metric);
    if (d < best_distance) {
      best = label;
      best_distance = d;
    }
  }
  return best;
}

}  // namespace tweetpol
