#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tweetpol/label.hpp"

namespace tweetpol {

/// Maximum raw tweet length in Unicode code points.
inline constexpr std::size_t kMaxTweetCodePoints = 280;

/// Characters removed by normalize() unless a run overrides the set.
inline constexpr std::string_view kDefaultStripSet = "#*\"_~^";

struct Tweet {
  std::string id;
  std::string raw_text;
  std::optional<std::string> normalized_text;
  Label label = Label::Neutral;

  /// The normalized text when present, the raw text otherwise.
  const std::string& text() const noexcept {
    return normalized_text ? *normalized_text : raw_text;
  }
};

/// Immutable, ordered collection of labeled tweets with unique ids.
class Corpus {
 public:
  Corpus() = default;

  /// Throws ArgumentError on duplicate ids.
  explicit Corpus(std::vector<Tweet> tweets);

  const std::vector<Tweet>& tweets() const noexcept { return tweets_; }
  const Tweet& operator[](std::size_t i) const { return tweets_[i]; }
  std::size_t size() const noexcept { return tweets_.size(); }
  bool empty() const noexcept { return tweets_.empty(); }

  const PerLabel<std::size_t>& class_counts() const noexcept { return counts_; }
  std::size_t count(Label label) const noexcept { return counts_[index_of(label)]; }

  /// Subset by position, preserving the given order.
  Corpus select(std::span<const std::size_t> indices) const;

  /// Copy with every tweet's normalized_text set.
  Corpus normalized(std::string_view strip_set = kDefaultStripSet) const;

 private:
  std::vector<Tweet> tweets_;
  PerLabel<std::size_t> counts_{};
};

/// Reads `id<TAB>label<TAB>text` lines. Blank lines are skipped; anything else
/// that is malformed raises ParseError with its 1-based line number.
Corpus read_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);

void write_corpus(std::ostream& out, const Corpus& corpus, bool use_normalized);

/// Lowercases, replaces URLs with `URL` and @-mentions with `REF`, removes
/// strip_set characters, and collapses whitespace. Idempotent.
std::string normalize(std::string_view raw_text,
                      std::string_view strip_set = kDefaultStripSet);

/// Downsamples every class to the smallest class count without replacement.
/// Selected tweets keep their input order. Throws ArgumentError naming an
/// empty class.
Corpus balance(const Corpus& corpus, std::uint64_t seed);

/// Stratified k-fold split. Returns k disjoint lists of positions into
/// corpus.tweets(), each sorted ascending. Requires 2 <= k <= corpus size;
/// with k above a class's count, that class is absent from some folds.
std::vector<std::vector<std::size_t>> stratified_folds(const Corpus& corpus,
                                                       std::size_t k,
                                                       std::uint64_t seed);

/// Number of Unicode code points in a UTF-8 string (invalid bytes count as one).
std::size_t code_point_count(std::string_view utf8) noexcept;

/// Byte offset of every code point start, followed by utf8.size().
std::vector<std::size_t> code_point_offsets(std::string_view utf8);

}  // namespace tweetpol
