#include "tweetpol/graph.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <ostream>
#include <vector>

#include "tweetpol/errors.hpp"
#include "tweetpol/ngram.hpp"

namespace tweetpol {

namespace {

void check_same_n(const NGramGraph& a, const NGramGraph& b) {
  if (a.n() != b.n()) {
    throw ArgumentError("graph similarity: n mismatch (" + std::to_string(a.n()) + " vs " +
                        std::to_string(b.n()) + ")");
  }
}

// Shared edge count and Σ min/max weight ratio, iterating the smaller map.
std::pair<std::size_t, double> overlap(const NGramGraph& a, const NGramGraph& b) {
  const NGramGraph& small = a.edge_count() <= b.edge_count() ? a : b;
  const NGramGraph& large = &small == &a ? b : a;
  std::size_t shared = 0;
  double ratio_sum = 0.0;
  for (const auto& [edge, w_small] : small.edges()) {
    const auto it = large.edges().find(edge);
    if (it == large.edges().end()) continue;
    ++shared;
    const double w_large = it->second;
    ratio_sum += std::min(w_small, w_large) / std::max(w_small, w_large);
  }
  return {shared, ratio_sum};
}

}  // namespace

Edge::Edge(std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  first = a;
  second = b;
}

std::size_t EdgeHash::operator()(const Edge& e) const noexcept {
  const std::size_t h1 = std::hash<std::string>{}(e.first);
  const std::size_t h2 = std::hash<std::string>{}(e.second);
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

NGramGraph::NGramGraph(std::size_t n, std::size_t window) : n_(n), window_(window) {
  if (n < 1) throw ArgumentError("graph n must be >= 1");
  if (window < 1) throw ArgumentError("graph window must be >= 1");
}

double NGramGraph::weight(const Edge& e) const {
  const auto it = edges_.find(e);
  return it == edges_.end() ? 0.0 : it->second;
}

void NGramGraph::add_node(std::string_view gram) { nodes_.emplace(gram); }

void NGramGraph::add_edge_weight(std::string_view a, std::string_view b, double delta) {
  if (!(delta > 0.0)) throw ArgumentError("edge weight increment must be positive");
  add_node(a);
  add_node(b);
  edges_[Edge(a, b)] += delta;
}

void NGramGraph::accumulate(const NGramGraph& g) {
  for (const std::string& node : g.nodes_) nodes_.insert(node);
  for (const auto& [edge, w] : g.edges_) edges_.try_emplace(edge, 0.0).first->second += w;
}

void NGramGraph::scale_weights(double factor) {
  if (!(factor > 0.0)) throw ArgumentError("scale factor must be positive");
  for (auto& [edge, w] : edges_) w *= factor;
}

void NGramGraph::divide_weights(double divisor) {
  if (!(divisor > 0.0)) throw ArgumentError("weight divisor must be positive");
  for (auto& [edge, w] : edges_) w /= divisor;
}

void NGramGraph::write_tsv(std::ostream& out) const {
  std::vector<const EdgeMap::value_type*> rows;
  rows.reserve(edges_.size());
  for (const auto& entry : edges_) rows.push_back(&entry);
  std::sort(rows.begin(), rows.end(), [](auto* x, auto* y) { return x->first < y->first; });
  char buf[64];
  for (const auto* row : rows) {
    const auto res = std::to_chars(buf, buf + sizeof buf, row->second);
    out << row->first.first << '\t' << row->first.second << '\t'
        << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
  }
}

NGramGraph build_graph(std::string_view normalized_text, std::size_t n, std::size_t window) {
  NGramGraph g(n, window);
  const auto grams = extract_char_ngrams(normalized_text, n);
  for (std::size_t i = 0; i < grams.size(); ++i) {
    g.add_node(grams[i]);
    const std::size_t last = std::min(grams.size() - 1, i + window);
    for (std::size_t j = i + 1; j <= last; ++j) g.add_edge_weight(grams[i], grams[j], 1.0);
  }
  return g;
}

GraphMerger::GraphMerger(std::size_t n, std::size_t window) : sum_(n, window) {}

void GraphMerger::add(const NGramGraph& g) {
  if (g.n() != sum_.n() || g.window() != sum_.window()) {
    throw ArgumentError("merge_graphs: all graphs must share n and window");
  }
  sum_.accumulate(g);
  ++docs_;
}

MergedClassGraph GraphMerger::finish(Label label) const {
  if (docs_ == 0) throw ArgumentError("merge_graphs: no graphs to merge");
  NGramGraph merged = sum_;
  merged.divide_weights(static_cast<double>(docs_));
  return {label, std::move(merged), docs_};
}

MergedClassGraph merge_graphs(std::span<const NGramGraph> graphs, Label label) {
  if (graphs.empty()) throw ArgumentError("merge_graphs: empty graph list");
  GraphMerger merger(graphs.front().n(), graphs.front().window());
  for (const NGramGraph& g : graphs) merger.add(g);
  return merger.finish(label);
}

NGramGraph prune(const NGramGraph& g, double threshold) {
  if (!(threshold >= 0.0)) throw ArgumentError("prune threshold must be >= 0");
  NGramGraph out(g.n(), g.window());
  std::unordered_set<std::string> lost;
  for (const auto& [edge, w] : g.edges_) {
    if (w >= threshold) {
      out.edges_.emplace(edge, w);
      out.nodes_.insert(edge.first);
      out.nodes_.insert(edge.second);
    } else {
      lost.insert(edge.first);
      lost.insert(edge.second);
    }
  }
  // Nodes that never had an edge are kept; only nodes stranded by pruning go.
  for (const std::string& node : g.nodes_) {
    if (!lost.contains(node)) out.nodes_.insert(node);
  }
  return out;
}

GraphSimilarity compare_graphs(const NGramGraph& a, const NGramGraph& b) {
  check_same_n(a, b);
  if (a.edge_count() == 0 || b.edge_count() == 0) return {};
  const auto [shared, ratio_sum] = overlap(a, b);
  const auto lo = static_cast<double>(std::min(a.edge_count(), b.edge_count()));
  const auto hi = static_cast<double>(std::max(a.edge_count(), b.edge_count()));
  return {static_cast<double>(shared) / lo, ratio_sum / hi, ratio_sum / lo};
}

double containment_similarity(const NGramGraph& a, const NGramGraph& b) {
  return compare_graphs(a, b).containment;
}

double value_similarity(const NGramGraph& a, const NGramGraph& b) {
  return compare_graphs(a, b).value;
}

double normalized_value_similarity(const NGramGraph& a, const NGramGraph& b) {
  return compare_graphs(a, b).normalized_value;
}

SimilarityVector graph_feature_vector(const NGramGraph& tweet_graph,
                                      std::span<const MergedClassGraph> standards) {
  PerLabel<const MergedClassGraph*> by_label{};
  for (const MergedClassGraph& s : standards) {
    auto& slot = by_label[index_of(s.label)];
    if (slot != nullptr) {
      throw ArgumentError("graph_feature_vector: duplicate standard for " +
                          std::string(to_string(s.label)));
    }
    slot = &s;
  }
  SimilarityVector out{};
  constexpr std::array<Label, 3> kOrder = {Label::Positive, Label::Neutral, Label::Negative};
  for (std::size_t k = 0; k < kOrder.size(); ++k) {
    const MergedClassGraph* standard = by_label[index_of(kOrder[k])];
    if (standard == nullptr) {
      throw ArgumentError("graph_feature_vector: missing standard for " +
                          std::string(to_string(kOrder[k])));
    }
    const GraphSimilarity sim = compare_graphs(tweet_graph, standard->graph);
    out[3 * k] = sim.containment;
    out[3 * k + 1] = sim.value;
    out[3 * k + 2] = sim.normalized_value;
  }
  return out;
}

}  // namespace tweetpol
