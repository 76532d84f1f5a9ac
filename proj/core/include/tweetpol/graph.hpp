#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "tweetpol/label.hpp"

namespace tweetpol {

/// Undirected edge between two n-grams, stored with first <= second.
struct Edge {
  std::string first;
  std::string second;

  Edge() = default;
  Edge(std::string_view a, std::string_view b);

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept;
};

/// Character n-gram graph: nodes are n-grams, edge weights count how often two
/// n-grams occur within `window` positions of each other.
class NGramGraph {
 public:
  using EdgeMap = std::unordered_map<Edge, double, EdgeHash>;

  NGramGraph(std::size_t n, std::size_t window);

  std::size_t n() const noexcept { return n_; }
  std::size_t window() const noexcept { return window_; }

  const std::unordered_set<std::string>& nodes() const noexcept { return nodes_; }
  const EdgeMap& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  /// 0 when the edge is absent.
  double weight(const Edge& e) const;

  void add_node(std::string_view gram);
  /// Adds both endpoints as nodes. delta must be positive.
  void add_edge_weight(std::string_view a, std::string_view b, double delta);

  /// Multiplies every weight by factor (> 0).
  void scale_weights(double factor);
  /// Divides every weight by divisor (> 0).
  void divide_weights(double divisor);

  /// `gram_a<TAB>gram_b<TAB>weight` per edge, sorted by (gram_a, gram_b),
  /// weights in shortest round-trip decimal form.
  void write_tsv(std::ostream& out) const;

 private:
  friend NGramGraph prune(const NGramGraph& g, double threshold);
  friend class GraphMerger;

  // Adds g's nodes and edge weights; the caller checks n and window.
  void accumulate(const NGramGraph& g);

  std::size_t n_;
  std::size_t window_;
  std::unordered_set<std::string> nodes_;
  EdgeMap edges_;
};

/// Per-class golden standard: union of training graphs with edge weights
/// averaged over doc_count documents (absent edges count as 0).
struct MergedClassGraph {
  Label label;
  NGramGraph graph;
  std::size_t doc_count;
};

/// Nine similarity values ordered [CS, VS, NVS] for Positive, Neutral, Negative.
using SimilarityVector = std::array<double, 9>;

/// Throws ArgumentError for n < 1 or window < 1.
NGramGraph build_graph(std::string_view normalized_text, std::size_t n, std::size_t window);

/// Streaming form of merge_graphs for callers that build graphs one at a time.
class GraphMerger {
 public:
  GraphMerger(std::size_t n, std::size_t window);

  /// Throws ArgumentError if g's n or window differs.
  void add(const NGramGraph& g);
  std::size_t doc_count() const noexcept { return docs_; }

  /// Throws ArgumentError if nothing was added.
  MergedClassGraph finish(Label label) const;

 private:
  NGramGraph sum_;
  std::size_t docs_ = 0;
};

/// Throws ArgumentError for an empty list or mismatched n/window.
MergedClassGraph merge_graphs(std::span<const NGramGraph> graphs, Label label);

/// Drops edges with weight < threshold, then nodes that lost every incident edge.
NGramGraph prune(const NGramGraph& g, double threshold);

/// |Ea ∩ Eb| / min(|Ea|, |Eb|).
double containment_similarity(const NGramGraph& a, const NGramGraph& b);
/// Σ min/max weight ratio over shared edges, divided by max(|Ea|, |Eb|).
double value_similarity(const NGramGraph& a, const NGramGraph& b);
/// Σ min/max weight ratio over shared edges, divided by min(|Ea|, |Eb|).
double normalized_value_similarity(const NGramGraph& a, const NGramGraph& b);

/// The three similarities in one pass over the smaller edge set.
struct GraphSimilarity {
  double containment = 0.0;
  double value = 0.0;
  double normalized_value = 0.0;
};
GraphSimilarity compare_graphs(const NGramGraph& a, const NGramGraph& b);

/// Similarities of a tweet graph against the three class standards. Throws
/// ArgumentError unless every label has exactly one standard with matching n.
SimilarityVector graph_feature_vector(const NGramGraph& tweet_graph,
                                      std::span<const MergedClassGraph> standards);

}  // namespace tweetpol
