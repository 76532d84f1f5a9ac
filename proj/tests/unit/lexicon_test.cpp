#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"
#include "tweetpol/errors.hpp"
#include "tweetpol/lexicon.hpp"

namespace tweetpol {
namespace {

Lexicon parse(const std::string& text) {
  std::istringstream in(text);
  return read_lexicon(in);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

void expect_triplet(const SentimentTriplet& t, double pos, double neg, double obj) {
  EXPECT_NEAR(t.pos, pos, 1e-12);
  EXPECT_NEAR(t.neg, neg, 1e-12);
  EXPECT_NEAR(t.obj, obj, 1e-12);
}

TEST(Lexicon, ReadsEntry) {
  const Lexicon lex = parse("good\t0.75\t0.0\t0.25\n");
  ASSERT_NE(lex.find("good"), nullptr);
  expect_triplet(*lex.find("good"), 0.75, 0.0, 0.25);
  EXPECT_EQ(lex.find("bad"), nullptr);
}

TEST(Lexicon, LowercasesWords) {
  const Lexicon lex = parse("Good\t0.75\t0\t0.25\n");
  EXPECT_NE(lex.find("good"), nullptr);
}

TEST(Lexicon, MergesDuplicatesByMean) {
  const Lexicon lex = parse("fine\t0.5\t0.0\t0.5\nfine\t0.0\t0.5\t0.5\n");
  ASSERT_NE(lex.find("fine"), nullptr);
  expect_triplet(*lex.find("fine"), 0.25, 0.25, 0.5);
  EXPECT_EQ(lex.size(), 1u);
}

TEST(Lexicon, RejectsBadRows) {
  EXPECT_EQ(parse_error_line("bad\t0.9\t0.9\t0.9\n"), 1u);
  EXPECT_EQ(parse_error_line("ok\t1\t0\t0\nx\tabc\t0\t1\n"), 2u);
  EXPECT_EQ(parse_error_line("x\t-0.5\t0.5\t1\n"), 1u);
  EXPECT_EQ(parse_error_line("x\t1.5\t0\t-0.5\n"), 1u);
  EXPECT_EQ(parse_error_line("x\t0.5\t0.5\n"), 1u);
  EXPECT_EQ(parse_error_line("x\t0.5\t0.5\t0.0000011\n"), 1u);
  EXPECT_EQ(parse_error_line("x\t0.5\t0.5\t0.0000009\n"), 0u);
}

TEST(Lexicon, MiniatureFixtureLoads) {
  const Lexicon lex = load_lexicon(testing::source_path("tests/fixtures/mini_lexicon.tsv"));
  EXPECT_GE(lex.size(), 50u);
  EXPECT_LE(lex.size(), 200u);
  expect_triplet(*lex.find("good"), 0.75, 0.0, 0.25);
}

TEST(WordTokens, SplitsOnSpaceAndPunctuation) {
  const auto tokens = word_tokens("good,bad. it's (fine)!URL");
  const std::vector<std::string_view> expected = {"good", "bad", "it's", "fine", "URL"};
  EXPECT_EQ(tokens, expected);
  EXPECT_TRUE(word_tokens("  ...  ").empty());
}

TEST(BowFeatures, Examples) {
  const Lexicon lex = parse("good\t0.75\t0\t0.25\nbad\t0\t0.8\t0.2\n");
  expect_triplet(bow_features("good", lex), 0.75, 0.0, 0.25);
  expect_triplet(bow_features("good bad", lex), 0.375, 0.4, 0.225);
  const SentimentTriplet none = bow_features("URL REF", lex);
  EXPECT_EQ(none, (SentimentTriplet{0.0, 0.0, 1.0}));
}

TEST(BowFeatures, RepeatedWordsCountEachTime) {
  const Lexicon lex = parse("good\t0.75\t0\t0.25\nbad\t0\t0.8\t0.2\n");
  expect_triplet(bow_features("good good bad", lex), 0.5, 0.8 / 3.0, (0.25 * 2 + 0.2) / 3.0);
}

TEST(BowFeaturesProperty, RangeAndSum) {
  const Lexicon lex = load_lexicon(testing::source_path("tests/fixtures/mini_lexicon.tsv"));
  const std::vector<std::string> words = {"good", "bad", "awful", "report", "the", "URL",
                                          "happy", "xyz", "sad", "new"};
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    std::string text;
    const auto len = uniform_below(rng, 8);
    for (std::size_t w = 0; w < len; ++w) text += words[uniform_below(rng, words.size())] + " ";
    const SentimentTriplet t = bow_features(text, lex);
    for (double v : {t.pos, t.neg, t.obj}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_NEAR(t.pos + t.neg + t.obj, 1.0, 1e-6) << text;
  }
}

TEST(BowPolarity, Examples) {
  EXPECT_DOUBLE_EQ(bow_polarity({0.75, 0.0, 0.25}), 0.75);
  EXPECT_NEAR(bow_polarity({0.1, 0.4, 0.5}), -0.3, 1e-15);
  EXPECT_EQ(bow_polarity({0.0, 0.0, 1.0}), 0.0);
}

TEST(BowPolarityProperty, Antisymmetric) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const double p = uniform_unit(rng);
    const double n = uniform_unit(rng) * (1.0 - p);
    const double o = 1.0 - p - n;
    EXPECT_EQ(bow_polarity({p, n, o}), -bow_polarity({n, p, o}));
  }
}

TEST(ThresholdClassify, Examples) {
  const PolarityThresholds t{0.5, -0.5};
  EXPECT_EQ(threshold_classify(-0.3, t), Label::Neutral);
  EXPECT_EQ(threshold_classify(0.6, t), Label::Positive);
  EXPECT_EQ(threshold_classify(0.5, t), Label::Positive);
  EXPECT_EQ(threshold_classify(-0.5, t), Label::Negative);
  EXPECT_THROW(threshold_classify(0.0, PolarityThresholds{-0.1, 0.1}), ArgumentError);
}

TEST(ThresholdClassifyProperty, Monotone) {
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const double a = uniform_unit(rng) * 2.0 - 1.0;
    const double b = uniform_unit(rng) * 2.0 - 1.0;
    const double lo_t = -uniform_unit(rng);
    const PolarityThresholds t{uniform_unit(rng), lo_t};
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    EXPECT_LE(index_of(threshold_classify(lo, t)), index_of(threshold_classify(hi, t)));
  }
}

}  // namespace
}  // namespace tweetpol
