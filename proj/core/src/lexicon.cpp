#include "tweetpol/lexicon.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>

#include "tweetpol/errors.hpp"

namespace tweetpol {

namespace {

constexpr double kSumTolerance = 1e-6;

bool parse_score(std::string_view field, double& value) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last && std::isfinite(value);
}

bool is_separator(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x80) return false;
  if (std::isspace(u) != 0) return true;
  return std::ispunct(u) != 0 && c != '\'';
}

}  // namespace

Lexicon::Lexicon(std::vector<LexiconEntry> entries) {
  entries_.reserve(entries.size());
  for (auto& e : entries) entries_.insert_or_assign(std::move(e.word), e.scores);
}

const SentimentTriplet* Lexicon::find(std::string_view word) const {
  const auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

Lexicon read_lexicon(std::istream& in) {
  struct Accumulator {
    SentimentTriplet sum{0.0, 0.0, 0.0};
    int count = 0;
  };
  std::map<std::string, Accumulator> merged;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t tab; (tab = rest.find('\t')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 4) throw ParseError(line_no, "expected 4 fields (word, pos, neg, obj)");
    if (fields[0].empty()) throw ParseError(line_no, "empty word");

    double scores[3];
    for (int i = 0; i < 3; ++i) {
      if (!parse_score(fields[i + 1], scores[i])) {
        throw ParseError(line_no, "non-numeric score '" + std::string(fields[i + 1]) + "'");
      }
      if (scores[i] < 0.0 || scores[i] > 1.0) {
        throw ParseError(line_no, "score " + std::string(fields[i + 1]) + " outside [0, 1]");
      }
    }
    const double sum = scores[0] + scores[1] + scores[2];
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw ParseError(line_no, "triplet sum " + std::to_string(sum) + " is not 1");
    }

    std::string word(fields[0]);
    for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    Accumulator& acc = merged[word];
    acc.sum.pos += scores[0];
    acc.sum.neg += scores[1];
    acc.sum.obj += scores[2];
    ++acc.count;
  }

  std::vector<LexiconEntry> entries;
  entries.reserve(merged.size());
  for (auto& [word, acc] : merged) {
    SentimentTriplet mean{acc.sum.pos / acc.count, acc.sum.neg / acc.count,
                          acc.sum.obj / acc.count};
    const double total = mean.pos + mean.neg + mean.obj;
    mean = {mean.pos / total, mean.neg / total, mean.obj / total};
    entries.push_back({word, mean});
  }
  return Lexicon(std::move(entries));
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon file " + path.string());
  return read_lexicon(in);
}

std::vector<std::string_view> word_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || is_separator(text[i])) {
      if (i > start) tokens.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return tokens;
}

SentimentTriplet bow_features(std::string_view normalized_text, const Lexicon& lexicon) {
  SentimentTriplet sum{0.0, 0.0, 0.0};
  std::size_t hits = 0;
  for (std::string_view token : word_tokens(normalized_text)) {
    if (const SentimentTriplet* entry = lexicon.find(token)) {
      sum.pos += entry->pos;
      sum.neg += entry->neg;
      sum.obj += entry->obj;
      ++hits;
    }
  }
  if (hits == 0) return {0.0, 0.0, 1.0};
  const auto n = static_cast<double>(hits);
  return {sum.pos / n, sum.neg / n, sum.obj / n};
}

Label threshold_classify(double polarity, const PolarityThresholds& t) {
  if (t.negative > t.positive) throw ArgumentError("negative threshold exceeds positive threshold");
  if (polarity >= t.positive) return Label::Positive;
  if (polarity <= t.negative) return Label::Negative;
  return Label::Neutral;
}

}  // namespace tweetpol
