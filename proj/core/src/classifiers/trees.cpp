#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>

#include "predictor.hpp"

namespace tweetpol::detail {

namespace {

using Counts = PerLabel<std::size_t>;

struct Node {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  PerLabel<double> shares{};
  int leaf_model = -1;

  bool is_leaf() const { return feature < 0; }
};

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;    // information gain or Gini reduction
  double ratio = 0.0;   // gain ratio (C4.5 only)
};

Counts count_labels(const Dataset& data, std::span<const std::size_t> rows) {
  Counts c{};
  for (std::size_t i : rows) ++c[index_of(data.label(i))];
  return c;
}

bool is_pure(const Counts& c) {
  return std::count_if(c.begin(), c.end(), [](std::size_t v) { return v > 0; }) <= 1;
}

double entropy(const Counts& c, double n) {
  double h = 0.0;
  for (std::size_t v : c) {
    if (v == 0) continue;
    const double p = static_cast<double>(v) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double gini(const Counts& c, double n) {
  double g = 1.0;
  for (std::size_t v : c) {
    const double p = static_cast<double>(v) / n;
    g -= p * p;
  }
  return g;
}

PerLabel<double> shares_of(const Counts& c) {
  double n = 0.0;
  for (std::size_t v : c) n += static_cast<double>(v);
  PerLabel<double> s{};
  for (std::size_t k = 0; k < kNumLabels; ++k) s[k] = static_cast<double>(c[k]) / n;
  return s;
}

// Calls visit(threshold, left_counts, left_n) for every boundary between
// distinct sorted values that leaves at least min_leaf rows on each side.
template <typename Visit>
void for_each_threshold(const Dataset& data, std::span<const std::size_t> rows,
                        std::size_t feature, std::size_t min_leaf, Visit&& visit) {
  std::vector<std::pair<double, Label>> sorted;
  sorted.reserve(rows.size());
  for (std::size_t i : rows) sorted.emplace_back(data.row(i)[feature], data.label(i));
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Counts left{};
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
    ++left[index_of(sorted[k].second)];
    const std::size_t left_n = k + 1;
    if (sorted[k].first == sorted[k + 1].first) continue;
    if (left_n < min_leaf || sorted.size() - left_n < min_leaf) continue;
    double threshold = 0.5 * (sorted[k].first + sorted[k + 1].first);
    if (!(threshold < sorted[k + 1].first)) threshold = sorted[k].first;
    visit(threshold, left, left_n);
  }
}

Counts subtract(const Counts& total, const Counts& part) {
  Counts out{};
  for (std::size_t k = 0; k < kNumLabels; ++k) out[k] = total[k] - part[k];
  return out;
}

// Gain-ratio selection: best threshold per feature by information gain, then
// the feature with the highest gain ratio among those with at least average gain.
std::optional<Split> best_gain_ratio_split(const Dataset& data,
                                           std::span<const std::size_t> rows,
                                           std::size_t min_leaf) {
  const Counts total = count_labels(data, rows);
  const auto n = static_cast<double>(rows.size());
  const double parent_entropy = entropy(total, n);

  std::vector<Split> candidates;
  for (std::size_t f = 0; f < data.dim(); ++f) {
    std::optional<Split> best;
    for_each_threshold(data, rows, f, min_leaf,
                       [&](double threshold, const Counts& left, std::size_t left_n) {
                         const auto nl = static_cast<double>(left_n);
                         const double nr = n - nl;
                         const double gain = parent_entropy - nl / n * entropy(left, nl) -
                                             nr / n * entropy(subtract(total, left), nr);
                         if (!best || gain > best->gain) {
                           const double split_info =
                               -(nl / n) * std::log2(nl / n) - (nr / n) * std::log2(nr / n);
                           best = Split{f, threshold, gain, gain / split_info};
                         }
                       });
    if (best) candidates.push_back(*best);
  }
  if (candidates.empty()) return std::nullopt;

  double mean_gain = 0.0;
  for (const Split& s : candidates) mean_gain += s.gain;
  mean_gain /= static_cast<double>(candidates.size());

  std::optional<Split> chosen;
  for (const Split& s : candidates) {
    if (s.gain + 1e-12 < mean_gain) continue;
    if (!chosen || s.ratio > chosen->ratio) chosen = s;
  }
  return chosen;
}

std::optional<Split> best_gini_split(const Dataset& data, std::span<const std::size_t> rows,
                                     std::size_t min_leaf) {
  const Counts total = count_labels(data, rows);
  const auto n = static_cast<double>(rows.size());
  const double parent = n * gini(total, n);
  std::optional<Split> best;
  for (std::size_t f = 0; f < data.dim(); ++f) {
    for_each_threshold(data, rows, f, min_leaf,
                       [&](double threshold, const Counts& left, std::size_t left_n) {
                         const auto nl = static_cast<double>(left_n);
                         const double nr = n - nl;
                         const double reduction = parent - nl * gini(left, nl) -
                                                  nr * gini(subtract(total, left), nr);
                         if (!best || reduction > best->gain) {
                           best = Split{f, threshold, reduction, 0.0};
                         }
                       });
  }
  return best;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> partition(
    const Dataset& data, std::span<const std::size_t> rows, const Split& split) {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  for (std::size_t i : rows) {
    (data.row(i)[split.feature] <= split.threshold ? left : right).push_back(i);
  }
  return {std::move(left), std::move(right)};
}

class TreePredictor final : public Predictor {
 public:
  TreePredictor(std::vector<Node> nodes, std::optional<Standardizer> scaler,
                std::vector<SoftmaxModel> leaf_models)
      : nodes_(std::move(nodes)),
        scaler_(std::move(scaler)),
        leaf_models_(std::move(leaf_models)) {}

  PerLabel<double> scores(std::span<const double> x) const override {
    const Node* node = &nodes_.front();
    while (!node->is_leaf()) {
      node = &nodes_[static_cast<std::size_t>(
          x[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left
                                                                        : node->right)];
    }
    if (node->leaf_model >= 0) {
      return leaf_models_[static_cast<std::size_t>(node->leaf_model)].probabilities(
          scaler_->apply(x));
    }
    return node->shares;
  }

  std::size_t node_count() const { return nodes_.size(); }

  nlohmann::json params() const override {
    nlohmann::json nodes = nlohmann::json::array();
    for (const Node& n : nodes_) {
      nodes.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"shares", n.shares},
                       {"leaf_model", n.leaf_model}});
    }
    nlohmann::json out = {{"nodes", nodes}};
    if (scaler_) out["standardizer"] = scaler_->to_json();
    nlohmann::json models = nlohmann::json::array();
    for (const SoftmaxModel& m : leaf_models_) models.push_back(m.to_json());
    out["leaf_models"] = models;
    return out;
  }

  static std::shared_ptr<const Predictor> from_json(const nlohmann::json& j) {
    std::vector<Node> nodes;
    for (const auto& n : j.at("nodes")) {
      Node node;
      node.feature = n.at("feature").get<int>();
      node.threshold = n.at("threshold").get<double>();
      node.left = n.at("left").get<int>();
      node.right = n.at("right").get<int>();
      node.shares = n.at("shares").get<PerLabel<double>>();
      node.leaf_model = n.at("leaf_model").get<int>();
      nodes.push_back(node);
    }
    std::optional<Standardizer> scaler;
    if (j.contains("standardizer")) scaler = Standardizer::from_json(j.at("standardizer"));
    std::vector<SoftmaxModel> models;
    for (const auto& m : j.at("leaf_models")) models.push_back(SoftmaxModel::from_json(m));
    return std::make_shared<TreePredictor>(std::move(nodes), std::move(scaler),
                                           std::move(models));
  }

 private:
  std::vector<Node> nodes_;
  std::optional<Standardizer> scaler_;
  std::vector<SoftmaxModel> leaf_models_;
};

// Depth-first C4.5 growth. Impure nodes are split whenever a split leaving
// min_leaf rows per side exists; leaf indices are appended to `leaves`.
int grow_c45(const Dataset& data, std::vector<std::size_t> rows, std::size_t min_leaf,
             std::vector<Node>& nodes, std::vector<std::vector<std::size_t>>* leaves) {
  const int id = static_cast<int>(nodes.size());
  const Counts counts = count_labels(data, rows);
  nodes.push_back(Node{});
  nodes.back().shares = shares_of(counts);

  std::optional<Split> split;
  if (!is_pure(counts) && rows.size() >= 2 * min_leaf) {
    split = best_gain_ratio_split(data, rows, min_leaf);
  }
  if (!split) {
    if (leaves != nullptr) {
      nodes.back().leaf_model = static_cast<int>(leaves->size());
      leaves->push_back(std::move(rows));
    }
    return id;
  }
  auto [left_rows, right_rows] = partition(data, rows, *split);
  rows.clear();
  rows.shrink_to_fit();
  const int left = grow_c45(data, std::move(left_rows), min_leaf, nodes, leaves);
  const int right = grow_c45(data, std::move(right_rows), min_leaf, nodes, leaves);
  Node& node = nodes[static_cast<std::size_t>(id)];
  node.feature = static_cast<int>(split->feature);
  node.threshold = split->threshold;
  node.left = left;
  node.right = right;
  return id;
}

std::vector<std::size_t> all_rows(const Dataset& data) {
  std::vector<std::size_t> rows(data.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return rows;
}

}  // namespace

std::shared_ptr<const Predictor> train_c45(const C45Spec& spec, const Dataset& train) {
  std::vector<Node> nodes;
  grow_c45(train, all_rows(train), static_cast<std::size_t>(spec.min_leaf), nodes, nullptr);
  return std::make_shared<TreePredictor>(std::move(nodes), std::nullopt,
                                         std::vector<SoftmaxModel>{});
}

std::shared_ptr<const Predictor> train_best_first(const BestFirstTreeSpec& spec,
                                                  const Dataset& train) {
  const auto min_leaf = static_cast<std::size_t>(spec.min_leaf);
  struct Frontier {
    double reduction;
    int node;
    Split split;
    std::vector<std::size_t> rows;
  };
  // Largest reduction first; ties go to the node created earliest.
  auto worse = [](const Frontier& a, const Frontier& b) {
    if (a.reduction != b.reduction) return a.reduction < b.reduction;
    return a.node > b.node;
  };
  std::priority_queue<Frontier, std::vector<Frontier>, decltype(worse)> frontier(worse);
  std::vector<Node> nodes;

  auto open = [&](std::vector<std::size_t> rows) {
    const int id = static_cast<int>(nodes.size());
    const Counts counts = count_labels(train, rows);
    nodes.push_back(Node{});
    nodes.back().shares = shares_of(counts);
    if (!is_pure(counts) && rows.size() >= 2 * min_leaf) {
      if (auto split = best_gini_split(train, rows, min_leaf)) {
        frontier.push(Frontier{split->gain, id, *split, std::move(rows)});
      }
    }
    return id;
  };

  open(all_rows(train));
  int expansions = 0;
  while (!frontier.empty() && expansions < spec.max_expansions) {
    Frontier top = frontier.top();
    frontier.pop();
    auto [left_rows, right_rows] = partition(train, top.rows, top.split);
    const int left = open(std::move(left_rows));
    const int right = open(std::move(right_rows));
    Node& node = nodes[static_cast<std::size_t>(top.node)];
    node.feature = static_cast<int>(top.split.feature);
    node.threshold = top.split.threshold;
    node.left = left;
    node.right = right;
    ++expansions;
  }
  return std::make_shared<TreePredictor>(std::move(nodes), std::nullopt,
                                         std::vector<SoftmaxModel>{});
}

std::shared_ptr<const Predictor> train_functional_tree(const FunctionalTreeSpec& spec,
                                                       const Dataset& train) {
  constexpr double kLeafLearningRate = 0.5;
  constexpr double kLeafL2 = 1e-4;

  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> leaves;
  grow_c45(train, all_rows(train), static_cast<std::size_t>(spec.min_leaf), nodes, &leaves);

  Standardizer scaler = Standardizer::fit(train);
  const std::vector<double> standardized = scaler.apply_all(train);
  const std::size_t dim = train.dim();

  std::vector<SoftmaxModel> models;
  std::vector<int> model_of_leaf(leaves.size(), -1);
  for (std::size_t leaf = 0; leaf < leaves.size(); ++leaf) {
    const auto& rows = leaves[leaf];
    const ClassIndex index = ClassIndex::of(train, rows);
    if (index.classes.size() < 2) continue;
    std::vector<double> features;
    features.reserve(rows.size() * dim);
    for (std::size_t i : rows) {
      features.insert(features.end(), standardized.begin() + static_cast<long>(i * dim),
                      standardized.begin() + static_cast<long>((i + 1) * dim));
    }
    model_of_leaf[leaf] = static_cast<int>(models.size());
    models.push_back(SoftmaxModel::train(features, dim, index, kLeafLearningRate,
                                         spec.leaf_lr_epochs, kLeafL2));
  }
  for (Node& node : nodes) {
    if (node.leaf_model >= 0) node.leaf_model = model_of_leaf[static_cast<std::size_t>(node.leaf_model)];
  }
  return std::make_shared<TreePredictor>(std::move(nodes), std::move(scaler), std::move(models));
}

std::shared_ptr<const Predictor> load_tree(const nlohmann::json& params) {
  return TreePredictor::from_json(params);
}

}  // namespace tweetpol::detail
