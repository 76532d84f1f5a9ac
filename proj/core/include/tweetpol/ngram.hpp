#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tweetpol/corpus.hpp"
#include "tweetpol/label.hpp"

namespace tweetpol {

/// Sliding window of n code points, stride 1, spaces included. Returns views
/// into `text`; texts shorter than n yield nothing. Throws ArgumentError if n < 1.
std::vector<std::string_view> extract_char_ngrams(std::string_view text, std::size_t n);

/// Per-class occurrence counts for every character n-gram seen in training.
class NGramFrequencyTable {
 public:
  using Counts = PerLabel<std::uint64_t>;

  explicit NGramFrequencyTable(std::size_t n) : n_(n) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return counts_.size(); }

  void add_text(std::string_view text, Label label);

  /// Zero counts for unseen n-grams.
  Counts counts(std::string_view gram) const;

  const std::unordered_map<std::string, Counts>& entries() const noexcept { return counts_; }

  /// `ngram<TAB>fp<TAB>fneu<TAB>fneg`, sorted by n-gram bytes.
  void write_tsv(std::ostream& out) const;

 private:
  std::size_t n_;
  std::unordered_map<std::string, Counts> counts_;
};

/// Counts every occurrence of every n-gram of each tweet's text under the
/// tweet's class. Throws ArgumentError on an empty corpus.
NGramFrequencyTable build_frequency_table(const Corpus& training, std::size_t n);

/// +fp when Positive strictly dominates, -fneg when Negative strictly
/// dominates, 0 otherwise (Neutral dominant, any tie at the maximum, unseen).
double ngram_score(const NGramFrequencyTable::Counts& counts) noexcept;
double ngram_score(std::string_view gram, const NGramFrequencyTable& table);

/// Mean ngram_score over the text's n-grams; 0 when the text is shorter than n.
double ngram_feature(std::string_view normalized_text, const NGramFrequencyTable& table);

}  // namespace tweetpol
