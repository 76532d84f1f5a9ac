#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "tweetpol/classifiers.hpp"
#include "tweetpol/corpus.hpp"
#include "tweetpol/ensemble.hpp"
#include "tweetpol/lexicon.hpp"

namespace tweetpol {

/// Lexicon triplet reduced to the scalar polarity pos - neg.
struct BagOfWordsRepresentation {};

/// Mean signed n-gram score; n in {3, 4, 5}.
struct NGramRepresentation {
  std::size_t n = 4;
};

/// Nine similarities against pruned per-class merged graphs.
struct NGramGraphRepresentation {
  std::size_t n = 4;
  std::size_t window = 4;
  double prune_threshold = 0.001;
};

using Representation =
    std::variant<BagOfWordsRepresentation, NGramRepresentation, NGramGraphRepresentation>;

enum class EnsembleScheme { MajorityVote, AverageOpinion, Centroid };

struct EnsembleMethod {
  EnsembleScheme scheme = EnsembleScheme::MajorityVote;
  DistanceMetric metric = DistanceMetric::Euclidean;  // Centroid only
};

using Method = std::variant<ClassifierSpec, EnsembleMethod>;

struct PipelineConfig {
  Representation representation = NGramRepresentation{};
  Method method = ClassifierSpec{LogisticRegressionSpec{}};
  bool balanced = false;
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  // Training rows of trained representations (n-gram, graph) are scored by
  // state built without their own inner fold, so a training tweet is never
  // compared against a standard that contains it. 0 scores them in-sample.
  std::size_t cross_fit_folds = 5;
};

/// Throws ArgumentError describing the first invalid field.
void validate(const PipelineConfig& config);

/// "bow", "ngram" or "graph".
std::string_view representation_family(const Representation& r);
/// Classifier name, or "majority_vote" / "average_opinion" / "centroid:<metric>".
std::string method_name(const Method& m);

/// Shared read-only inputs for pipelines.
struct EvaluationContext {
  const Lexicon* lexicon = nullptr;  // required by the bag-of-words representation
};

/// Representation state learned from a training split.
struct FeatureExtractor {
  std::size_t dim = 0;
  std::function<void(std::string_view text, std::span<double> out)> extract;
};

/// Builds the extractor from `train` only. Throws ArgumentError when the
/// representation cannot be built (missing lexicon, class without documents).
FeatureExtractor build_extractor(const Representation& r, const Corpus& train,
                                 const EvaluationContext& ctx);

Dataset make_dataset(const FeatureExtractor& fx, const Corpus& corpus);

struct FoldFeatures {
  Dataset train;
  Dataset test;
};

/// Test rows use state built from all of `train`; training rows follow
/// config.cross_fit_folds.
FoldFeatures fold_features(const PipelineConfig& config, const Corpus& train,
                           const Corpus& test, const EvaluationContext& ctx);

/// Rows: true label; columns: predicted label; canonical order.
using ConfusionMatrix = PerLabel<PerLabel<std::size_t>>;

struct FoldResult {
  double accuracy = 0.0;
  ConfusionMatrix confusion{};
};

/// Learns everything from `train`, scores `test`. Does not check that the
/// two are disjoint. Throws ArgumentError for an empty split.
FoldResult run_pipeline_fold(const PipelineConfig& config, const Corpus& train,
                             const Corpus& test, const EvaluationContext& ctx);

struct ExperimentResult {
  PipelineConfig config;
  double confidence_ratio = 0.0;
  std::vector<double> fold_accuracies;
  ConfusionMatrix confusion{};
  double duration_ms = 0.0;
};

/// Per-fold features shared between experiments that differ only in the
/// method. Bound to the first corpus it is used with; thread-safe.
class FeatureCache {
 public:
  using Folds = std::vector<FoldFeatures>;

  /// Returns the cached folds for `key`, computing them once with `make`.
  std::shared_ptr<const Folds> get_or_compute(const Corpus& corpus, const std::string& key,
                                              const std::function<Folds()>& make);

 private:
  std::mutex mutex_;
  const Corpus* corpus_ = nullptr;
  std::map<std::string, std::shared_future<std::shared_ptr<const Folds>>> entries_;
};

/// Balances first when config.balanced, then stratified k-fold CV.
ExperimentResult cross_validate(const PipelineConfig& config, const Corpus& corpus,
                                const EvaluationContext& ctx, FeatureCache* cache = nullptr);

/// One matrix slot: a result, or the error that stopped the experiment.
struct MatrixEntry {
  PipelineConfig config;
  std::optional<ExperimentResult> result;
  std::string error;

  bool ok() const noexcept { return result.has_value(); }
};

/// Runs every config; failures are recorded per slot. Output order matches
/// input order for any degree of parallelism (0 = hardware concurrency).
/// Throws ArgumentError for an empty list.
/// `on_complete` is called once per finished slot, serialized, in completion order.
std::vector<MatrixEntry> run_experiment_matrix(
    const std::vector<PipelineConfig>& configs, const Corpus& corpus,
    const EvaluationContext& ctx, std::size_t parallelism = 0,
    const std::function<void(std::size_t index, const MatrixEntry& entry)>& on_complete = {});

// Serialization. Config JSON uses the flat encoding of the run-config file.

nlohmann::json config_to_json(const PipelineConfig& config);
/// Throws ArgumentError on missing or mistyped fields (range checks are left
/// to validate()).
PipelineConfig config_from_json(const nlohmann::json& j);

inline constexpr int kResultsSchemaVersion = 1;

/// Timings are excluded so identical runs serialize identically.
nlohmann::json entry_to_json(const MatrixEntry& entry);
MatrixEntry entry_from_json(const nlohmann::json& j);

nlohmann::json results_document(const std::vector<MatrixEntry>& entries);
std::vector<MatrixEntry> parse_results_document(const nlohmann::json& doc);

/// Header plus one flat row per entry: config fields, status,
/// confidence_ratio, duration_ms, error.
std::string results_csv(const std::vector<MatrixEntry>& entries);

/// RFC 4180 quoting when needed.
std::string csv_field(std::string_view value);

}  // namespace tweetpol
