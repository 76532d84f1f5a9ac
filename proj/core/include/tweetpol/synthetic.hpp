#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "tweetpol/corpus.hpp"
#include "tweetpol/dataset.hpp"
#include "tweetpol/label.hpp"

namespace tweetpol {

/// Seeded tweet-like corpus where each class draws content words from its own
/// vocabulary, mixed with filler words, mentions, URLs and hashtags.
struct SyntheticCorpusSpec {
  std::size_t per_class = 500;
  double noise = 0.2;  // chance a content word comes from another class
  std::size_t min_content = 3;
  std::size_t max_content = 6;
  std::size_t min_filler = 2;
  std::size_t max_filler = 6;
  bool shuffle_labels = false;  // permute labels after generation
  std::uint64_t seed = 7;
};

/// Tweets are interleaved by class; ids are `syn-00001`, `syn-00002`, ...
/// Throws ArgumentError for an empty or inverted range or noise outside [0, 1].
Corpus synthetic_corpus(const SyntheticCorpusSpec& spec);

/// Content vocabulary used for a class.
std::span<const std::string_view> synthetic_vocabulary(Label label);

/// Three isotropic unit-variance blobs whose means sit on an equilateral
/// triangle with side `separation` (in standard deviations) in the first two
/// coordinates. Rows are dealt round-robin across classes. Requires dim >= 2.
Dataset gaussian_blobs(std::size_t rows, std::size_t dim, double separation,
                       std::uint64_t seed);

/// Returns a copy of `corpus` whose labels are a seeded permutation of the
/// original labels (class counts unchanged).
Corpus permute_labels(const Corpus& corpus, std::uint64_t seed);

}  // namespace tweetpol
