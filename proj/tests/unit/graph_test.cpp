#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "test_support.hpp"
#include "tweetpol/errors.hpp"
#include "tweetpol/graph.hpp"

namespace tweetpol {
namespace {

using EdgeWeights = std::map<std::pair<std::string, std::string>, double>;

EdgeWeights weights_of(const NGramGraph& g) {
  EdgeWeights out;
  for (const auto& [e, w] : g.edges()) out[{e.first, e.second}] = w;
  return out;
}

NGramGraph graph_from(std::initializer_list<std::tuple<const char*, const char*, double>> edges,
                      std::size_t n = 1) {
  NGramGraph g(n, 1);
  for (const auto& [a, b, w] : edges) g.add_edge_weight(a, b, w);
  return g;
}

NGramGraph random_graph(Rng& rng, std::size_t max_edges) {
  NGramGraph g(2, 2);
  const std::string_view alphabet = "abcd";
  const auto edges = uniform_below(rng, max_edges + 1);
  for (std::size_t i = 0; i < edges; ++i) {
    const std::string a = std::string(1, alphabet[uniform_below(rng, 4)]) + alphabet[uniform_below(rng, 4)];
    const std::string b = std::string(1, alphabet[uniform_below(rng, 4)]) + alphabet[uniform_below(rng, 4)];
    g.add_edge_weight(a, b, 0.001 + uniform_unit(rng) * 5.0);
  }
  return g;
}

TEST(BuildGraph, Examples) {
  const NGramGraph g = build_graph("abab", 2, 1);
  EXPECT_EQ(g.nodes(), (std::unordered_set<std::string>{"ab", "ba"}));
  EXPECT_EQ(weights_of(g), (EdgeWeights{{{"ab", "ba"}, 2.0}}));

  EXPECT_TRUE(build_graph("a", 2, 3).empty());
  EXPECT_EQ(build_graph("a", 2, 3).edge_count(), 0u);

  const NGramGraph self = build_graph("aaa", 1, 1);
  EXPECT_EQ(self.nodes(), (std::unordered_set<std::string>{"a"}));
  EXPECT_EQ(weights_of(self), (EdgeWeights{{{"a", "a"}, 2.0}}));
}

TEST(BuildGraph, RejectsBadParameters) {
  EXPECT_THROW(build_graph("abc", 0, 1), ArgumentError);
  EXPECT_THROW(build_graph("abc", 1, 0), ArgumentError);
}

TEST(BuildGraph, SingleGramHasNodeButNoEdges) {
  const NGramGraph g = build_graph("abc", 3, 2);
  EXPECT_EQ(g.nodes().size(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(BuildGraphProperty, MatchesDoubleLoopOracle) {
  Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    const std::string text = testing::random_string(rng, "abcd", 30);
    const std::size_t n = 1 + uniform_below(rng, 4);
    const std::size_t window = 1 + uniform_below(rng, 5);
    SCOPED_TRACE(text + " n=" + std::to_string(n) + " w=" + std::to_string(window));
    EXPECT_EQ(weights_of(build_graph(text, n, window)), testing::brute_force_edges(text, n, window));
  }
}

TEST(MergeGraphs, Examples) {
  const NGramGraph a = graph_from({{"x", "y", 2.0}});
  const NGramGraph b = graph_from({{"y", "z", 1.0}});
  const MergedClassGraph m = merge_graphs(std::vector<NGramGraph>{a, b}, Label::Positive);
  EXPECT_EQ(m.doc_count, 2u);
  EXPECT_EQ(m.label, Label::Positive);
  EXPECT_EQ(m.graph.weight(Edge("x", "y")), 1.0);
  EXPECT_EQ(m.graph.weight(Edge("y", "z")), 0.5);

  const NGramGraph c = graph_from({{"x", "y", 4.0}});
  EXPECT_EQ(merge_graphs(std::vector<NGramGraph>{a, c}, Label::Neutral).graph.weight(Edge("x", "y")),
            3.0);

  const MergedClassGraph single = merge_graphs(std::vector<NGramGraph>{a}, Label::Negative);
  EXPECT_EQ(single.doc_count, 1u);
  EXPECT_EQ(weights_of(single.graph), weights_of(a));
}

TEST(MergeGraphs, Errors) {
  EXPECT_THROW(merge_graphs(std::vector<NGramGraph>{}, Label::Positive), ArgumentError);
  const std::vector<NGramGraph> mixed = {NGramGraph(2, 2), NGramGraph(3, 2)};
  EXPECT_THROW(merge_graphs(mixed, Label::Positive), ArgumentError);
  const std::vector<NGramGraph> windows = {NGramGraph(2, 2), NGramGraph(2, 3)};
  EXPECT_THROW(merge_graphs(windows, Label::Positive), ArgumentError);
}

TEST(MergeGraphs, NodeSetIsUnion) {
  NGramGraph lonely(1, 1);
  lonely.add_node("q");
  const NGramGraph a = graph_from({{"x", "y", 1.0}});
  const auto m = merge_graphs(std::vector<NGramGraph>{lonely, a}, Label::Positive);
  EXPECT_EQ(m.graph.nodes(), (std::unordered_set<std::string>{"q", "x", "y"}));
}

TEST(MergeGraphsProperty, MatchesSumThenDivide) {
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    const std::size_t docs = 1 + uniform_below(rng, 20);
    const std::size_t n = 1 + uniform_below(rng, 3);
    const std::size_t window = 1 + uniform_below(rng, 3);
    std::vector<std::string> texts;
    std::vector<NGramGraph> graphs;
    for (std::size_t d = 0; d < docs; ++d) {
      texts.push_back(testing::random_string(rng, "abcd", 30));
      graphs.push_back(build_graph(texts.back(), n, window));
    }
    EdgeWeights sum;
    for (const auto& t : texts) {
      for (const auto& [e, w] : testing::brute_force_edges(t, n, window)) sum[e] += w;
    }
    for (auto& [e, w] : sum) w /= static_cast<double>(docs);
    EXPECT_EQ(weights_of(merge_graphs(graphs, Label::Neutral).graph), sum);
  }
}

TEST(Prune, Examples) {
  const NGramGraph g = graph_from({{"a", "b", 0.005}, {"c", "d", 0.02}});
  EXPECT_EQ(weights_of(prune(g, 0.0)), weights_of(g));
  EXPECT_EQ(prune(g, 0.0).nodes(), g.nodes());

  const NGramGraph p = prune(g, 0.01);
  EXPECT_EQ(weights_of(p), (EdgeWeights{{{"c", "d"}, 0.02}}));
  EXPECT_EQ(p.nodes(), (std::unordered_set<std::string>{"c", "d"}));

  const NGramGraph none = prune(g, 1.0);
  EXPECT_EQ(none.edge_count(), 0u);
  EXPECT_TRUE(none.nodes().empty());
  EXPECT_THROW(prune(g, -1.0), ArgumentError);
}

TEST(Prune, KeepsNodesWithSurvivingEdges) {
  const NGramGraph g = graph_from({{"a", "b", 0.005}, {"a", "c", 0.5}});
  EXPECT_EQ(prune(g, 0.01).nodes(), (std::unordered_set<std::string>{"a", "c"}));
}

TEST(PruneProperty, Monotone) {
  Rng rng(33);
  for (int i = 0; i < 200; ++i) {
    const NGramGraph g = random_graph(rng, 30);
    double t1 = uniform_unit(rng) * 5.0;
    double t2 = uniform_unit(rng) * 5.0;
    if (t2 < t1) std::swap(t1, t2);
    const NGramGraph p1 = prune(g, t1);
    const NGramGraph p2 = prune(g, t2);
    for (const auto& [e, w] : p2.edges()) EXPECT_TRUE(p1.edges().contains(e));
    for (const auto& node : p2.nodes()) EXPECT_TRUE(p1.nodes().contains(node));
  }
}

TEST(Similarity, ContainmentExamples) {
  const NGramGraph a = graph_from({{"a", "b", 1}, {"c", "d", 1}});
  EXPECT_EQ(containment_similarity(a, a), 1.0);
  const NGramGraph disjoint = graph_from({{"x", "y", 1}});
  EXPECT_EQ(containment_similarity(a, disjoint), 0.0);
  const NGramGraph b = graph_from({{"c", "d", 1}, {"e", "f", 1}, {"g", "h", 1}});
  EXPECT_EQ(containment_similarity(a, b), 0.5);
}

TEST(Similarity, ValueExamples) {
  const NGramGraph a = graph_from({{"a", "b", 3}, {"c", "d", 1}});
  EXPECT_EQ(value_similarity(a, a), 1.0);
  EXPECT_EQ(value_similarity(a, graph_from({{"x", "y", 1}})), 0.0);
  const NGramGraph one = graph_from({{"a", "b", 2}});
  const NGramGraph two = graph_from({{"a", "b", 4}, {"c", "d", 1}});
  EXPECT_EQ(value_similarity(one, two), 0.25);
}

TEST(Similarity, NormalizedValueExamples) {
  const NGramGraph a = graph_from({{"a", "b", 3}, {"c", "d", 1}});
  EXPECT_EQ(normalized_value_similarity(a, a), 1.0);
  const NGramGraph one = graph_from({{"a", "b", 2}});
  const NGramGraph two = graph_from({{"a", "b", 4}, {"c", "d", 1}});
  EXPECT_EQ(normalized_value_similarity(one, two), 0.5);
  EXPECT_EQ(normalized_value_similarity(a, graph_from({{"x", "y", 1}})), 0.0);
}

TEST(Similarity, EmptyGraphsScoreZero) {
  const NGramGraph empty(1, 1);
  const NGramGraph a = graph_from({{"a", "b", 1}});
  for (const auto& [x, y] : {std::pair{&empty, &a}, std::pair{&a, &empty}, std::pair{&empty, &empty}}) {
    EXPECT_EQ(containment_similarity(*x, *y), 0.0);
    EXPECT_EQ(value_similarity(*x, *y), 0.0);
    EXPECT_EQ(normalized_value_similarity(*x, *y), 0.0);
  }
}

TEST(Similarity, MismatchedNThrows) {
  EXPECT_THROW(containment_similarity(NGramGraph(2, 1), NGramGraph(3, 1)), ArgumentError);
  EXPECT_THROW(value_similarity(NGramGraph(2, 1), NGramGraph(3, 1)), ArgumentError);
  EXPECT_THROW(normalized_value_similarity(NGramGraph(2, 1), NGramGraph(3, 1)), ArgumentError);
}

TEST(SimilarityProperty, Invariants) {
  Rng rng(34);
  for (int i = 0; i < 1000; ++i) {
    const NGramGraph a = random_graph(rng, 12);
    const NGramGraph b = random_graph(rng, 12);
    const double factor = 0.01 + uniform_unit(rng) * 100.0;
    NGramGraph as = a;
    NGramGraph bs = b;
    as.scale_weights(factor);
    bs.scale_weights(factor);
    const GraphSimilarity ab = compare_graphs(a, b);
    const GraphSimilarity ba = compare_graphs(b, a);
    const GraphSimilarity scaled = compare_graphs(as, bs);
    EXPECT_NEAR(ab.containment, ba.containment, 1e-12);
    EXPECT_NEAR(ab.value, ba.value, 1e-12);
    EXPECT_NEAR(ab.normalized_value, ba.normalized_value, 1e-12);
    for (double v : {ab.containment, ab.value, ab.normalized_value}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_LE(ab.value, ab.containment + 1e-12);
    EXPECT_EQ(scaled.containment, ab.containment);
    EXPECT_NEAR(scaled.value, ab.value, 1e-12);
    EXPECT_NEAR(scaled.normalized_value, ab.normalized_value, 1e-12);
    if (a.edge_count() > 0) {
      const GraphSimilarity self = compare_graphs(a, a);
      EXPECT_EQ(self.containment, 1.0);
      EXPECT_NEAR(self.value, 1.0, 1e-12);
      EXPECT_NEAR(self.normalized_value, 1.0, 1e-12);
    }
    EXPECT_EQ(ab.containment, containment_similarity(a, b));
    EXPECT_EQ(ab.value, value_similarity(a, b));
    EXPECT_EQ(ab.normalized_value, normalized_value_similarity(a, b));
  }
}

std::vector<MergedClassGraph> standards(const NGramGraph& pos, const NGramGraph& neu,
                                        const NGramGraph& neg) {
  return {{Label::Negative, neg, 1}, {Label::Positive, pos, 1}, {Label::Neutral, neu, 1}};
}

TEST(GraphFeatureVector, Examples) {
  const NGramGraph pos = graph_from({{"a", "b", 1}, {"b", "c", 2}});
  const NGramGraph neu = graph_from({{"x", "y", 1}});
  const NGramGraph neg = graph_from({{"p", "q", 1}});
  const auto s = standards(pos, neu, neg);
  EXPECT_EQ(graph_feature_vector(pos, s), (SimilarityVector{1, 1, 1, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(graph_feature_vector(NGramGraph(1, 1), s), SimilarityVector{});
  const auto v = graph_feature_vector(graph_from({{"a", "b", 1}, {"p", "q", 3}}), s);
  for (double x : v) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 1.0);
  }
}

TEST(GraphFeatureVector, MissingStandardThrows) {
  const NGramGraph g = graph_from({{"a", "b", 1}});
  std::vector<MergedClassGraph> two = {{Label::Positive, g, 1}, {Label::Neutral, g, 1}};
  EXPECT_THROW(graph_feature_vector(g, two), ArgumentError);
  std::vector<MergedClassGraph> dup = {
      {Label::Positive, g, 1}, {Label::Positive, g, 1}, {Label::Neutral, g, 1}};
  EXPECT_THROW(graph_feature_vector(g, dup), ArgumentError);
}

TEST(GraphDump, SortedAndExact) {
  NGramGraph g(1, 1);
  g.add_edge_weight("b", "a", 0.1);
  g.add_edge_weight("a", "a", 2.0);
  std::ostringstream out;
  g.write_tsv(out);
  EXPECT_EQ(out.str(), "a\ta\t2\na\tb\t0.1\n");
}

TEST(GraphMerger, MatchesMergeGraphs) {
  Rng rng(35);
  std::vector<NGramGraph> graphs;
  GraphMerger merger(2, 2);
  for (int d = 0; d < 8; ++d) {
    graphs.push_back(build_graph(testing::random_string(rng, "abc ", 25), 2, 2));
    merger.add(graphs.back());
  }
  EXPECT_EQ(weights_of(merger.finish(Label::Positive).graph),
            weights_of(merge_graphs(graphs, Label::Positive).graph));
  EXPECT_THROW(GraphMerger(2, 2).finish(Label::Positive), ArgumentError);
}

}  // namespace
}  // namespace tweetpol
