#pragma once

#include <array>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tweetpol/label.hpp"

namespace tweetpol {

inline constexpr std::size_t kEnsembleSize = 7;

/// The seven classifier votes coded Negative -1, Neutral 0, Positive +1, in
/// registry order.
class OpinionVector {
 public:
  /// Throws ArgumentError if any component is not -1, 0 or +1.
  explicit OpinionVector(const std::array<double, kEnsembleSize>& codes);
  static OpinionVector from_votes(std::span<const Label> votes);

  const std::array<double, kEnsembleSize>& values() const noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }

 private:
  std::array<double, kEnsembleSize> values_;
};

enum class DistanceMetric { Euclidean, Manhattan, Chebyshev, CosineDissimilarity, Orthodromic };

inline constexpr std::array<DistanceMetric, 5> kAllMetrics = {
    DistanceMetric::Euclidean, DistanceMetric::Manhattan, DistanceMetric::Chebyshev,
    DistanceMetric::CosineDissimilarity, DistanceMetric::Orthodromic};

std::string_view to_string(DistanceMetric metric) noexcept;
/// Throws ArgumentError for unknown names.
DistanceMetric parse_metric(std::string_view name);

/// Strict plurality; any tie for the top count yields Neutral. Requires 7 votes.
Label majority_vote(std::span<const Label> votes);

/// Mean opinion m: m >= 1/3 Positive, m <= -1/3 Negative, Neutral otherwise.
Label average_opinion(const OpinionVector& v);
Label classify_mean_opinion(double mean);

/// Component-wise mean opinion per true label.
class ClassCentroids {
 public:
  explicit ClassCentroids(PerLabel<std::vector<double>> centroids);
  const std::vector<double>& of(Label label) const { return centroids_[index_of(label)]; }

 private:
  PerLabel<std::vector<double>> centroids_;
};

/// Throws ArgumentError when a label has no training vectors.
ClassCentroids compute_centroids(std::span<const std::pair<OpinionVector, Label>> train);

/// Cosine and orthodromic treat a zero-norm operand as cosine similarity 0.
/// Throws ArgumentError on dimension mismatch.
double distance(std::span<const double> u, std::span<const double> v, DistanceMetric metric);

/// Nearest centroid; distance ties go to the earliest label in canonical order.
Label centroid_classify(std::span<const double> v, const ClassCentroids& centroids,
                        DistanceMetric metric);

}  // namespace tweetpol
