#include "tweetpol/ngram.hpp"

#include <algorithm>
#include <ostream>

#include "tweetpol/errors.hpp"

namespace tweetpol {

std::vector<std::string_view> extract_char_ngrams(std::string_view text, std::size_t n) {
  if (n < 1) throw ArgumentError("n-gram length must be >= 1");
  const std::vector<std::size_t> offsets = code_point_offsets(text);
  const std::size_t points = offsets.size() - 1;
  std::vector<std::string_view> grams;
  if (points < n) return grams;
  grams.reserve(points - n + 1);
  for (std::size_t i = 0; i + n <= points; ++i) {
    grams.push_back(text.substr(offsets[i], offsets[i + n] - offsets[i]));
  }
  return grams;
}

void NGramFrequencyTable::add_text(std::string_view text, Label label) {
  for (std::string_view gram : extract_char_ngrams(text, n_)) {
    auto it = counts_.find(std::string(gram));
    if (it == counts_.end()) it = counts_.emplace(std::string(gram), Counts{}).first;
    ++it->second[index_of(label)];
  }
}

NGramFrequencyTable::Counts NGramFrequencyTable::counts(std::string_view gram) const {
  const auto it = counts_.find(std::string(gram));
  return it == counts_.end() ? Counts{} : it->second;
}

void NGramFrequencyTable::write_tsv(std::ostream& out) const {
  std::vector<const std::pair<const std::string, Counts>*> rows;
  rows.reserve(counts_.size());
  for (const auto& entry : counts_) rows.push_back(&entry);
  std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->first < b->first; });
  for (const auto* row : rows) {
    const Counts& c = row->second;
    out << row->first << '\t' << c[index_of(Label::Positive)] << '\t'
        << c[index_of(Label::Neutral)] << '\t' << c[index_of(Label::Negative)] << '\n';
  }
}

NGramFrequencyTable build_frequency_table(const Corpus& training, std::size_t n) {
  if (training.empty()) throw ArgumentError("build_frequency_table: empty training corpus");
  if (n < 1) throw ArgumentError("n-gram length must be >= 1");
  NGramFrequencyTable table(n);
  for (const Tweet& t : training.tweets()) table.add_text(t.text(), t.label);
  return table;
}

double ngram_score(const NGramFrequencyTable::Counts& counts) noexcept {
  const auto pos = counts[index_of(Label::Positive)];
  const auto neu = counts[index_of(Label::Neutral)];
  const auto neg = counts[index_of(Label::Negative)];
  if (pos > neu && pos > neg) return static_cast<double>(pos);
  if (neg > pos && neg > neu) return -static_cast<double>(neg);
  return 0.0;
}

double ngram_score(std::string_view gram, const NGramFrequencyTable& table) {
  return ngram_score(table.counts(gram));
}

double ngram_feature(std::string_view normalized_text, const NGramFrequencyTable& table) {
  const auto grams = extract_char_ngrams(normalized_text, table.n());
  if (grams.empty()) return 0.0;
  double sum = 0.0;
  for (std::string_view gram : grams) sum += ngram_score(gram, table);
  return sum / static_cast<double>(grams.size());
}

}  // namespace tweetpol
