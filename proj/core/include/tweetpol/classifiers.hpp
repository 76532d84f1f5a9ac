#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "tweetpol/dataset.hpp"
#include "tweetpol/label.hpp"

namespace tweetpol {

// Hyperparameters. Defaults are this library's choices; experiment reports
// echo them so results stay interpretable.

/// Gaussian naive Bayes with a per-feature variance floor.
struct NaiveBayesSpec {
  double variance_floor = 1e-9;
};

/// Multinomial softmax regression trained by full-batch gradient descent.
struct LogisticRegressionSpec {
  double learning_rate = 0.5;
  int epochs = 300;
  double l2_lambda = 1e-4;
  std::uint64_t seed = 1;
};

/// One sigmoid hidden layer, softmax output, per-sample SGD.
struct MlpSpec {
  int hidden_units = 8;
  double learning_rate = 0.1;
  int epochs = 100;
  std::uint64_t seed = 1;
};

/// Binary splits on continuous features chosen by gain ratio.
struct C45Spec {
  int min_leaf = 2;
};

/// Best-first growth by Gini impurity reduction.
struct BestFirstTreeSpec {
  int max_expansions = 32;
  int min_leaf = 2;
};

/// C4.5 skeleton with multinomial logistic models in impure leaves.
struct FunctionalTreeSpec {
  int min_leaf = 30;
  int leaf_lr_epochs = 200;
};

/// One-vs-rest linear SVM, hinge loss, stochastic subgradient descent.
struct LinearSvmSpec {
  double l2_lambda = 1e-3;
  int epochs = 50;
  std::uint64_t seed = 1;
};

/// Predicts the most frequent training class. Baseline only; not part of the
/// seven-member ensemble registry.
struct MajorityClassSpec {};

using ClassifierSpec =
    std::variant<NaiveBayesSpec, LogisticRegressionSpec, MlpSpec, C45Spec, BestFirstTreeSpec,
                 FunctionalTreeSpec, LinearSvmSpec, MajorityClassSpec>;

/// Stable short name used in configs and reports, e.g. "logistic_regression".
std::string_view classifier_name(const ClassifierSpec& spec);

/// Spec for a name, with default hyperparameters. Throws ArgumentError.
ClassifierSpec classifier_from_name(std::string_view name);

/// Throws ArgumentError when a hyperparameter is out of range.
void validate(const ClassifierSpec& spec);

/// Replaces the seed of seeded specs; others are returned unchanged.
ClassifierSpec with_seed(ClassifierSpec spec, std::uint64_t seed);

nlohmann::json spec_to_json(const ClassifierSpec& spec);
/// Missing hyperparameters take their defaults. Throws ArgumentError for an
/// unknown kind or a mistyped field; ranges are left to validate().
ClassifierSpec spec_from_json(const nlohmann::json& j);

/// The seven combined classifiers in registry order.
std::array<ClassifierSpec, 7> ensemble_registry(std::uint64_t seed);

namespace detail {
class Predictor;
}

/// A trained classifier. Immutable; copies share the learned parameters.
class Model {
 public:
  Model(ClassifierSpec spec, std::size_t dim, std::shared_ptr<const detail::Predictor> impl);

  const ClassifierSpec& spec() const noexcept { return spec_; }
  std::size_t dim() const noexcept { return dim_; }
  /// True when the training data held a single class.
  bool is_constant() const noexcept;

  /// Per-class decision scores in canonical label order; classes absent from
  /// training score -infinity. Log joint density for naive Bayes, logits for
  /// the softmax models, margins for the SVM, leaf class shares for trees.
  PerLabel<double> scores(std::span<const double> features) const;

  /// Highest score wins; ties go to the earliest label in canonical order.
  Label predict(std::span<const double> features) const;
  std::vector<Label> predict_batch(const Dataset& data) const;

  nlohmann::json to_json() const;
  static Model from_json(const nlohmann::json& j);

 private:
  void check_dim(std::size_t got) const;

  ClassifierSpec spec_;
  std::size_t dim_;
  std::shared_ptr<const detail::Predictor> impl_;
};

/// Trains a model. Throws ArgumentError for an empty dataset, non-finite
/// features or invalid hyperparameters. Deterministic for fixed inputs.
Model fit(const ClassifierSpec& spec, const Dataset& train);

/// argmax with ties resolved toward the earliest label.
Label argmax_label(const PerLabel<double>& scores) noexcept;

}  // namespace tweetpol
