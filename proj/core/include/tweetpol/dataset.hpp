#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tweetpol/label.hpp"

namespace tweetpol {

/// Dense row-major feature matrix with one label per row.
class Dataset {
 public:
  explicit Dataset(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rows() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  Label label(std::size_t i) const { return labels_[i]; }

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  /// Throws ArgumentError if features.size() != dim().
  void add_row(std::span<const double> features, Label label);

 private:
  std::size_t dim_;
  std::vector<double> values_;
  std::vector<Label> labels_;
};

}  // namespace tweetpol
