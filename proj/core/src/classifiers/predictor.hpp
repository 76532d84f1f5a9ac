#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "tweetpol/classifiers.hpp"
#include "tweetpol/dataset.hpp"
#include "tweetpol/label.hpp"

namespace tweetpol::detail {

class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual PerLabel<double> scores(std::span<const double> x) const = 0;
  virtual nlohmann::json params() const = 0;
  virtual bool constant() const { return false; }
};

/// Per-feature z-score transform; zero-variance features get unit scale.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const Dataset& data);
  std::vector<double> apply(std::span<const double> x) const;
  void apply_into(std::span<const double> x, std::span<double> out) const;
  /// Whole matrix, row-major.
  std::vector<double> apply_all(const Dataset& data) const;

  nlohmann::json to_json() const;
  static Standardizer from_json(const nlohmann::json& j);
};

/// Labels present in `data`, canonical order, plus each row's index into it.
struct ClassIndex {
  std::vector<Label> classes;
  std::vector<std::size_t> targets;

  static ClassIndex of(const Dataset& data);
  static ClassIndex of(const Dataset& data, std::span<const std::size_t> rows);
};

/// Trained softmax regression over `classes`, in an already-standardized space.
struct SoftmaxModel {
  std::vector<Label> classes;
  std::vector<double> params;
  std::size_t dim = 0;

  /// Full-batch gradient descent from zero weights.
  static SoftmaxModel train(std::span<const double> features, std::size_t dim,
                            const ClassIndex& index, double learning_rate, int epochs,
                            double l2);
  PerLabel<double> logits(std::span<const double> x) const;
  PerLabel<double> probabilities(std::span<const double> x) const;

  nlohmann::json to_json() const;
  static SoftmaxModel from_json(const nlohmann::json& j);
};

PerLabel<double> unreachable_scores();

nlohmann::json labels_to_json(std::span<const Label> labels);
std::vector<Label> labels_from_json(const nlohmann::json& j);

// Factories, one per classifier family. `train` is non-empty, finite and has
// at least two classes.
std::shared_ptr<const Predictor> make_constant(Label label);
std::shared_ptr<const Predictor> train_naive_bayes(const NaiveBayesSpec& spec,
                                                   const Dataset& train);
std::shared_ptr<const Predictor> train_logistic(const LogisticRegressionSpec& spec,
                                                const Dataset& train);
std::shared_ptr<const Predictor> train_mlp(const MlpSpec& spec, const Dataset& train);
std::shared_ptr<const Predictor> train_c45(const C45Spec& spec, const Dataset& train);
std::shared_ptr<const Predictor> train_best_first(const BestFirstTreeSpec& spec,
                                                  const Dataset& train);
std::shared_ptr<const Predictor> train_functional_tree(const FunctionalTreeSpec& spec,
                                                       const Dataset& train);
std::shared_ptr<const Predictor> train_svm(const LinearSvmSpec& spec, const Dataset& train);

std::shared_ptr<const Predictor> load_naive_bayes(const nlohmann::json& params);
std::shared_ptr<const Predictor> load_logistic(const nlohmann::json& params);
std::shared_ptr<const Predictor> load_mlp(const nlohmann::json& params);
std::shared_ptr<const Predictor> load_tree(const nlohmann::json& params);
std::shared_ptr<const Predictor> load_svm(const nlohmann::json& params);

std::shared_ptr<const Predictor> load_predictor(const ClassifierSpec& spec, std::size_t dim,
                                                const nlohmann::json& params);

}  // namespace tweetpol::detail
