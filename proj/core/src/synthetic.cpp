#include "tweetpol/synthetic.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tweetpol/errors.hpp"
#include "tweetpol/random.hpp"

namespace tweetpol {

namespace {

constexpr std::array<std::string_view, 30> kNegativeWords = {
    "bad",    "hate",     "terrible", "awful",     "sad",     "worst",  "angry",  "horrible",
    "poor",   "ugly",     "fail",     "broken",    "annoying", "disappointed", "boring",
    "sick",   "upset",    "wrong",    "pain",      "lost",    "stupid", "nasty",  "crash",
    "problem", "slow",    "worse",    "miserable", "tired",   "disaster", "fear"};

constexpr std::array<std::string_view, 30> kNeutralWords = {
    "report",  "meeting",   "update",   "schedule", "announced", "weather",   "market",
    "price",   "release",   "version",  "office",   "train",     "station",   "city",
    "minister", "policy",   "data",     "according", "week",     "official",  "statement",
    "plan",    "conference", "service", "project",  "news",      "local",     "company",
    "council", "tuesday"};

constexpr std::array<std::string_view, 30> kPositiveWords = {
    "good",    "great",   "love",    "happy",     "excellent", "awesome",  "wonderful",
    "amazing", "best",    "nice",    "beautiful", "fantastic", "glad",     "enjoy",
    "perfect", "brilliant", "lovely", "superb",   "delighted", "fun",      "win",
    "thanks",  "cool",    "pleased", "exciting",  "proud",     "sweet",    "success",
    "smile",   "favorite"};

constexpr std::array<std::string_view, 24> kFiller = {
    "the", "a",   "is",  "in",   "on",   "for",  "with", "this", "my",   "just", "and", "to",
    "at",  "of",  "it",  "so",   "was",  "our",  "all",  "about", "from", "that", "we",  "you"};

constexpr std::array<std::string_view, 6> kHandles = {"@alex", "@newsdesk", "@jo_smith",
                                                      "@team42", "@mira", "@citydesk"};

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& words, Rng& rng) {
  return words[uniform_below(rng, N)];
}

std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform_below(rng, hi - lo + 1));
}

std::string make_text(Label label, const SyntheticCorpusSpec& spec, Rng& rng) {
  std::vector<std::string> words;
  const std::size_t content = between(rng, spec.min_content, spec.max_content);
  const std::size_t filler = between(rng, spec.min_filler, spec.max_filler);
  for (std::size_t i = 0; i < content; ++i) {
    Label source = label;
    if (uniform_unit(rng) < spec.noise) {
      const auto offset = 1 + uniform_below(rng, kNumLabels - 1);
      source = label_at((index_of(label) + offset) % kNumLabels);
    }
    const auto vocab = synthetic_vocabulary(source);
    std::string word(vocab[uniform_below(rng, vocab.size())]);
    if (uniform_unit(rng) < 0.1) word = "#" + word;
    if (uniform_unit(rng) < 0.1) word[word[0] == '#' ? 1 : 0] ^= 0x20;  // capitalize
    words.push_back(std::move(word));
  }
  for (std::size_t i = 0; i < filler; ++i) words.emplace_back(pick(kFiller, rng));
  shuffle(std::span<std::string>(words), rng);

  std::string text;
  if (uniform_unit(rng) < 0.3) text = std::string(pick(kHandles, rng)) + " ";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) text += ' ';
    text += words[i];
  }
  const double r = uniform_unit(rng);
  if (r < 0.15) {
    text += '!';
  } else if (r < 0.25) {
    text += '.';
  }
  if (uniform_unit(rng) < 0.2) {
    text += " https://t.co/" + std::to_string(uniform_below(rng, 1000000));
  }
  return text;
}

}  // namespace

std::span<const std::string_view> synthetic_vocabulary(Label label) {
  switch (label) {
    case Label::Negative:
      return kNegativeWords;
    case Label::Neutral:
      return kNeutralWords;
    case Label::Positive:
      return kPositiveWords;
  }
  return kNeutralWords;
}

Corpus synthetic_corpus(const SyntheticCorpusSpec& spec) {
  if (spec.per_class == 0) throw ArgumentError("synthetic corpus needs per_class >= 1");
  if (!(spec.noise >= 0.0 && spec.noise <= 1.0)) throw ArgumentError("noise must be in [0, 1]");
  if (spec.min_content == 0 || spec.min_content > spec.max_content ||
      spec.min_filler > spec.max_filler) {
    throw ArgumentError("synthetic corpus word ranges are invalid");
  }
  Rng rng(spec.seed);
  std::vector<Tweet> tweets;
  tweets.reserve(spec.per_class * kNumLabels);
  for (std::size_t i = 0; i < spec.per_class; ++i) {
    for (Label label : kAllLabels) {
      char id[32];
      std::snprintf(id, sizeof id, "syn-%05zu", tweets.size() + 1);
      tweets.push_back(Tweet{id, make_text(label, spec, rng), std::nullopt, label});
    }
  }
  Corpus corpus(std::move(tweets));
  return spec.shuffle_labels ? permute_labels(corpus, spec.seed ^ 0x5eedULL) : corpus;
}

Corpus permute_labels(const Corpus& corpus, std::uint64_t seed) {
  std::vector<Label> labels;
  labels.reserve(corpus.size());
  for (const Tweet& t : corpus.tweets()) labels.push_back(t.label);
  Rng rng(seed);
  shuffle(std::span<Label>(labels), rng);
  std::vector<Tweet> tweets = corpus.tweets();
  for (std::size_t i = 0; i < tweets.size(); ++i) tweets[i].label = labels[i];
  return Corpus(std::move(tweets));
}

Dataset gaussian_blobs(std::size_t rows, std::size_t dim, double separation,
                       std::uint64_t seed) {
  if (dim < 2) throw ArgumentError("gaussian_blobs needs dim >= 2");
  // Means on an equilateral triangle with side `separation` in the first two
  // coordinates; the remaining coordinates are pure noise.
  const std::array<std::array<double, 2>, kNumLabels> means = {
      {{0.0, 0.0}, {separation, 0.0}, {separation / 2.0, separation * std::sqrt(3.0) / 2.0}}};
  Rng rng(seed);
  Dataset data(dim);
  std::vector<double> row(dim);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t c = i % kNumLabels;
    for (std::size_t d = 0; d < dim; ++d) {
      row[d] = standard_normal(rng) + (d < 2 ? means[c][d] : 0.0);
    }
    data.add_row(row, label_at(c));
  }
  return data;
}

}  // namespace tweetpol
