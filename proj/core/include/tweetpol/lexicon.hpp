#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tweetpol/label.hpp"

namespace tweetpol {

/// Positive / negative / objective scores; each in [0, 1].
struct SentimentTriplet {
  double pos = 0.0;
  double neg = 0.0;
  double obj = 1.0;

  friend bool operator==(const SentimentTriplet&, const SentimentTriplet&) = default;
};

struct LexiconEntry {
  std::string word;
  SentimentTriplet scores;
};

struct PolarityThresholds {
  double positive = 0.5;
  double negative = -0.5;
};

/// Word-level sentiment lexicon, immutable after loading.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries);

  const SentimentTriplet* find(std::string_view word) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, SentimentTriplet> entries_;
};

/// Reads `word<TAB>pos<TAB>neg<TAB>obj` lines. Words are lowercased; duplicate
/// words are averaged component-wise and renormalized to sum to one.
Lexicon read_lexicon(std::istream& in);
Lexicon load_lexicon(const std::filesystem::path& path);

/// Splits on whitespace and ASCII punctuation. Apostrophes stay inside words.
std::vector<std::string_view> word_tokens(std::string_view text);

/// Mean triplet over in-lexicon tokens; (0, 0, 1) when nothing matches.
SentimentTriplet bow_features(std::string_view normalized_text, const Lexicon& lexicon);

/// Signed polarity pos - neg, in [-1, 1].
constexpr double bow_polarity(const SentimentTriplet& t) noexcept { return t.pos - t.neg; }

/// Boundaries are inclusive toward the non-neutral class.
Label threshold_classify(double polarity, const PolarityThresholds& t);

}  // namespace tweetpol
