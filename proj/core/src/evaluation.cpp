#include "tweetpol/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <memory>
#include <numeric>
#include <sstream>
#include <thread>

#include "tweetpol/errors.hpp"
#include "tweetpol/graph.hpp"
#include "tweetpol/ngram.hpp"

namespace tweetpol {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string_view scheme_name(EnsembleScheme s) {
  switch (s) {
    case EnsembleScheme::MajorityVote:
      return "majority_vote";
    case EnsembleScheme::AverageOpinion:
      return "average_opinion";
    case EnsembleScheme::Centroid:
      return "centroid";
  }
  return "majority_vote";
}

EnsembleScheme parse_scheme(std::string_view name) {
  for (EnsembleScheme s :
       {EnsembleScheme::MajorityVote, EnsembleScheme::AverageOpinion, EnsembleScheme::Centroid}) {
    if (name == scheme_name(s)) return s;
  }
  throw ArgumentError("unknown ensemble scheme '" + std::string(name) + "'");
}

FoldResult score(std::span<const Label> truth, std::span<const Label> predicted) {
  FoldResult r;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++r.confusion[index_of(truth[i])][index_of(predicted[i])];
    if (truth[i] == predicted[i]) ++correct;
  }
  r.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  return r;
}

std::vector<Label> predict_ensemble(const EnsembleMethod& method, const Dataset& train,
                                    const Dataset& test, std::uint64_t seed) {
  const auto registry = ensemble_registry(seed);
  std::vector<Model> models;
  models.reserve(registry.size());
  for (const ClassifierSpec& spec : registry) models.push_back(fit(spec, train));

  auto votes_for = [&](const Dataset& data) {
    std::vector<std::array<Label, kEnsembleSize>> votes(data.rows());
    for (std::size_t m = 0; m < models.size(); ++m) {
      const auto predicted = models[m].predict_batch(data);
      for (std::size_t i = 0; i < data.rows(); ++i) votes[i][m] = predicted[i];
    }
    return votes;
  };
  const auto test_votes = votes_for(test);

  std::vector<Label> out;
  out.reserve(test.rows());
  switch (method.scheme) {
    case EnsembleScheme::MajorityVote:
      for (const auto& v : test_votes) out.push_back(majority_vote(v));
      break;
    case EnsembleScheme::AverageOpinion:
      for (const auto& v : test_votes) out.push_back(average_opinion(OpinionVector::from_votes(v)));
      break;
    case EnsembleScheme::Centroid: {
      const auto train_votes = votes_for(train);
      std::vector<std::pair<OpinionVector, Label>> labelled;
      labelled.reserve(train.rows());
      for (std::size_t i = 0; i < train.rows(); ++i) {
        labelled.emplace_back(OpinionVector::from_votes(train_votes[i]), train.label(i));
      }
      const ClassCentroids centroids = compute_centroids(labelled);
      for (const auto& v : test_votes) {
        out.push_back(
            centroid_classify(OpinionVector::from_votes(v).span(), centroids, method.metric));
      }
      break;
    }
  }
  return out;
}

}  // namespace

void validate(const PipelineConfig& config) {
  std::visit(Overloaded{
                 [](const BagOfWordsRepresentation&) {},
                 [](const NGramRepresentation& r) {
                   if (r.n < 3 || r.n > 5) {
                     throw ArgumentError("ngram n must be 3, 4 or 5 (got " +
                                         std::to_string(r.n) + ")");
                   }
                 },
                 [](const NGramGraphRepresentation& r) {
                   if (r.n < 1) throw ArgumentError("graph n must be >= 1");
                   if (r.window < 1) throw ArgumentError("graph window must be >= 1");
                   if (!(r.prune_threshold >= 0.0)) {
                     throw ArgumentError("prune_threshold must be >= 0");
                   }
                 },
             },
             config.representation);
  if (const auto* spec = std::get_if<ClassifierSpec>(&config.method)) validate(*spec);
  if (config.folds < 2) throw ArgumentError("folds must be >= 2");
  if (config.cross_fit_folds == 1) {
    throw ArgumentError("cross_fit_folds must be 0 (in-sample) or >= 2");
  }
}

std::string_view representation_family(const Representation& r) {
  return std::visit(Overloaded{
                        [](const BagOfWordsRepresentation&) { return "bow"; },
                        [](const NGramRepresentation&) { return "ngram"; },
                        [](const NGramGraphRepresentation&) { return "graph"; },
                    },
                    r);
}

std::string method_name(const Method& m) {
  if (const auto* spec = std::get_if<ClassifierSpec>(&m)) {
    return std::string(classifier_name(*spec));
  }
  const auto& e = std::get<EnsembleMethod>(m);
  if (e.scheme == EnsembleScheme::Centroid) {
    return "centroid:" + std::string(to_string(e.metric));
  }
  return std::string(scheme_name(e.scheme));
}

namespace {

using Standards = std::vector<MergedClassGraph>;

std::shared_ptr<const Standards> graph_standards(const NGramGraphRepresentation& rep,
                                                 std::span<const NGramGraph> graphs,
                                                 std::span<const Label> labels,
                                                 std::span<const std::size_t> rows) {
  std::vector<GraphMerger> mergers(kNumLabels, GraphMerger(rep.n, rep.window));
  for (std::size_t i : rows) mergers[index_of(labels[i])].add(graphs[i]);
  auto standards = std::make_shared<Standards>();
  for (Label label : kAllLabels) {
    if (mergers[index_of(label)].doc_count() == 0) {
      throw ArgumentError("graph representation: no training documents for class '" +
                          std::string(to_string(label)) + "'");
    }
    MergedClassGraph merged = mergers[index_of(label)].finish(label);
    merged.graph = prune(merged.graph, rep.prune_threshold);
    standards->push_back(std::move(merged));
  }
  return standards;
}

FeatureExtractor graph_extractor(const NGramGraphRepresentation& rep,
                                 std::shared_ptr<const Standards> standards) {
  return FeatureExtractor{9, [standards, rep](std::string_view text, std::span<double> out) {
                            const SimilarityVector v = graph_feature_vector(
                                build_graph(text, rep.n, rep.window), *standards);
                            std::copy(v.begin(), v.end(), out.begin());
                          }};
}

FeatureExtractor ngram_extractor(const NGramRepresentation& rep, const Corpus& train) {
  auto table =
      std::make_shared<const NGramFrequencyTable>(build_frequency_table(train, rep.n));
  return FeatureExtractor{1, [table](std::string_view text, std::span<double> out) {
                            out[0] = ngram_feature(text, *table);
                          }};
}

// Number of inner folds for cross-fitted training features; 0 = in-sample.
std::size_t inner_fold_count(const PipelineConfig& config, const Corpus& train) {
  if (config.cross_fit_folds < 2) return 0;
  if (std::holds_alternative<BagOfWordsRepresentation>(config.representation)) return 0;
  std::size_t smallest = 0;
  for (std::size_t c : train.class_counts()) {
    if (c > 0 && (smallest == 0 || c < smallest)) smallest = c;
  }
  const std::size_t k = std::min(config.cross_fit_folds, smallest);
  return k < 2 ? 0 : k;
}

constexpr std::uint64_t kInnerFoldSalt = 0x9e3779b97f4a7c15ULL;

}  // namespace

FeatureExtractor build_extractor(const Representation& r, const Corpus& train,
                                 const EvaluationContext& ctx) {
  return std::visit(
      Overloaded{
          [&](const BagOfWordsRepresentation&) {
            if (ctx.lexicon == nullptr) {
              throw ArgumentError("bag-of-words representation needs a lexicon");
            }
            const Lexicon* lexicon = ctx.lexicon;
            return FeatureExtractor{1, [lexicon](std::string_view text, std::span<double> out) {
                                      out[0] = bow_polarity(bow_features(text, *lexicon));
                                    }};
          },
          [&](const NGramRepresentation& rep) { return ngram_extractor(rep, train); },
          [&](const NGramGraphRepresentation& rep) {
            std::vector<NGramGraph> graphs;
            graphs.reserve(train.size());
            for (const Tweet& t : train.tweets()) {
              graphs.push_back(build_graph(t.text(), rep.n, rep.window));
            }
            std::vector<std::size_t> rows(train.size());
            std::iota(rows.begin(), rows.end(), std::size_t{0});
            std::vector<Label> labels;
            for (const Tweet& t : train.tweets()) labels.push_back(t.label);
            return graph_extractor(rep, graph_standards(rep, graphs, labels, rows));
          },
      },
      r);
}

Dataset make_dataset(const FeatureExtractor& fx, const Corpus& corpus) {
  Dataset data(fx.dim);
  std::vector<double> row(fx.dim);
  for (const Tweet& t : corpus.tweets()) {
    fx.extract(t.text(), row);
    data.add_row(row, t.label);
  }
  return data;
}

FoldFeatures fold_features(const PipelineConfig& config, const Corpus& train,
                           const Corpus& test, const EvaluationContext& ctx) {
  if (train.empty()) throw ArgumentError("fold_features: empty training split");
  const std::size_t k = inner_fold_count(config, train);
  if (k == 0) {
    const FeatureExtractor fx = build_extractor(config.representation, train, ctx);
    return {make_dataset(fx, train), make_dataset(fx, test)};
  }

  const auto inner = stratified_folds(train, k, config.seed ^ kInnerFoldSalt);
  std::vector<char> held_out(train.size());
  auto complement = [&](const std::vector<std::size_t>& fold) {
    std::fill(held_out.begin(), held_out.end(), 0);
    for (std::size_t i : fold) held_out[i] = 1;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < train.size(); ++i) {
      if (held_out[i] == 0) rest.push_back(i);
    }
    return rest;
  };

  std::size_t dim = 0;
  std::vector<double> values;
  FeatureExtractor full;
  if (const auto* rep = std::get_if<NGramRepresentation>(&config.representation)) {
    dim = 1;
    values.resize(train.size());
    for (const auto& fold : inner) {
      const auto rest = complement(fold);
      const FeatureExtractor fx = ngram_extractor(*rep, train.select(rest));
      for (std::size_t i : fold) fx.extract(train[i].text(), {values.data() + i, 1});
    }
    full = ngram_extractor(*rep, train);
  } else {
    const auto& grep = std::get<NGramGraphRepresentation>(config.representation);
    dim = 9;
    values.resize(train.size() * dim);
    std::vector<NGramGraph> graphs;
    std::vector<Label> labels;
    graphs.reserve(train.size());
    for (const Tweet& t : train.tweets()) {
      graphs.push_back(build_graph(t.text(), grep.n, grep.window));
      labels.push_back(t.label);
    }
    for (const auto& fold : inner) {
      const auto standards = graph_standards(grep, graphs, labels, complement(fold));
      for (std::size_t i : fold) {
        const SimilarityVector v = graph_feature_vector(graphs[i], *standards);
        std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(i * dim));
      }
    }
    std::vector<std::size_t> all(train.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    full = graph_extractor(grep, graph_standards(grep, graphs, labels, all));
  }

  Dataset train_data(dim);
  for (std::size_t i = 0; i < train.size(); ++i) {
    train_data.add_row({values.data() + i * dim, dim}, train[i].label);
  }
  return {std::move(train_data), make_dataset(full, test)};
}

namespace {

std::vector<Label> predict(const PipelineConfig& config, const FoldFeatures& features) {
  if (const auto* spec = std::get_if<ClassifierSpec>(&config.method)) {
    return fit(*spec, features.train).predict_batch(features.test);
  }
  return predict_ensemble(std::get<EnsembleMethod>(config.method), features.train,
                          features.test, config.seed);
}

// Everything that determines fold features, i.e. the config minus its method.
std::string feature_key(const PipelineConfig& config) {
  nlohmann::json j = config_to_json(config);
  j.erase("classifier");
  j.erase("ensemble");
  j.erase("metric");
  return j.dump();
}

}  // namespace

FoldResult run_pipeline_fold(const PipelineConfig& config, const Corpus& train,
                             const Corpus& test, const EvaluationContext& ctx) {
  if (test.empty()) throw ArgumentError("run_pipeline_fold: empty test split");
  if (train.empty()) throw ArgumentError("run_pipeline_fold: empty training split");
  validate(config);
  const FoldFeatures features = fold_features(config, train, test, ctx);
  return score(features.test.labels(), predict(config, features));
}

std::shared_ptr<const FeatureCache::Folds> FeatureCache::get_or_compute(
    const Corpus& corpus, const std::string& key, const std::function<Folds()>& make) {
  std::promise<std::shared_ptr<const Folds>> promise;
  std::shared_future<std::shared_ptr<const Folds>> future;
  bool owner = false;
  {
    std::lock_guard lock(mutex_);
    if (corpus_ == nullptr) corpus_ = &corpus;
    if (corpus_ != &corpus) throw ArgumentError("FeatureCache used with a second corpus");
    const auto it = entries_.find(key);
    if (it != entries_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      entries_.emplace(key, future);
      owner = true;
    }
  }
  if (owner) {
    try {
      promise.set_value(std::make_shared<const Folds>(make()));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

ExperimentResult cross_validate(const PipelineConfig& config, const Corpus& corpus,
                                const EvaluationContext& ctx, FeatureCache* cache) {
  const auto started = std::chrono::steady_clock::now();
  validate(config);

  auto compute = [&] {
    const Corpus data = config.balanced ? balance(corpus, config.seed) : corpus;
    const auto folds = stratified_folds(data, config.folds, config.seed);
    FeatureCache::Folds out;
    std::vector<char> in_test(data.size());
    for (const auto& fold : folds) {
      std::fill(in_test.begin(), in_test.end(), 0);
      for (std::size_t i : fold) in_test[i] = 1;
      std::vector<std::size_t> train_idx;
      train_idx.reserve(data.size() - fold.size());
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (in_test[i] == 0) train_idx.push_back(i);
      }
      out.push_back(fold_features(config, data.select(train_idx), data.select(fold), ctx));
    }
    return out;
  };
  const auto folds = cache != nullptr
                         ? cache->get_or_compute(corpus, feature_key(config), compute)
                         : std::make_shared<const FeatureCache::Folds>(compute());

  ExperimentResult result;
  result.config = config;
  for (const FoldFeatures& features : *folds) {
    const FoldResult r = score(features.test.labels(), predict(config, features));
    result.fold_accuracies.push_back(r.accuracy);
    for (std::size_t t = 0; t < kNumLabels; ++t) {
      for (std::size_t p = 0; p < kNumLabels; ++p) result.confusion[t][p] += r.confusion[t][p];
    }
  }
  result.confidence_ratio =
      std::accumulate(result.fold_accuracies.begin(), result.fold_accuracies.end(), 0.0) /
      static_cast<double>(result.fold_accuracies.size());
  result.duration_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  return result;
}

std::vector<MatrixEntry> run_experiment_matrix(
    const std::vector<PipelineConfig>& configs, const Corpus& corpus,
    const EvaluationContext& ctx, std::size_t parallelism,
    const std::function<void(std::size_t index, const MatrixEntry& entry)>& on_complete) {
  if (configs.empty()) throw ArgumentError("run_experiment_matrix: empty config list");
  std::vector<MatrixEntry> entries(configs.size());
  std::atomic<std::size_t> next{0};
  FeatureCache cache;
  std::mutex report_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      MatrixEntry& slot = entries[i];
      slot.config = configs[i];
      try {
        slot.result = cross_validate(configs[i], corpus, ctx, &cache);
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
      if (on_complete) {
        std::lock_guard lock(report_mutex);
        on_complete(i, slot);
      }
    }
  };

  std::size_t threads = parallelism == 0 ? std::thread::hardware_concurrency() : parallelism;
  threads = std::clamp<std::size_t>(threads, 1, configs.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return entries;
}

// ---------------------------------------------------------------------------
// JSON / CSV

nlohmann::json config_to_json(const PipelineConfig& config) {
  nlohmann::json j;
  j["representation"] = std::string(representation_family(config.representation));
  std::visit(Overloaded{
                 [](const BagOfWordsRepresentation&) {},
                 [&](const NGramRepresentation& r) { j["n"] = r.n; },
                 [&](const NGramGraphRepresentation& r) {
                   j["n"] = r.n;
                   j["window"] = r.window;
                   j["prune_threshold"] = r.prune_threshold;
                 },
             },
             config.representation);
  if (const auto* spec = std::get_if<ClassifierSpec>(&config.method)) {
    j["classifier"] = spec_to_json(*spec);
  } else {
    const auto& e = std::get<EnsembleMethod>(config.method);
    j["ensemble"] = std::string(scheme_name(e.scheme));
    if (e.scheme == EnsembleScheme::Centroid) j["metric"] = std::string(to_string(e.metric));
  }
  j["balanced"] = config.balanced;
  j["folds"] = config.folds;
  j["seed"] = config.seed;
  j["cross_fit_folds"] = config.cross_fit_folds;
  return j;
}

PipelineConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ArgumentError("experiment must be a JSON object");
  auto get = [&](const char* key, auto fallback) {
    using T = decltype(fallback);
    if (!j.contains(key)) return fallback;
    try {
      return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ArgumentError(std::string("experiment field '") + key + "' has the wrong type");
    }
  };

  PipelineConfig c;
  c.balanced = get("balanced", false);
  c.folds = get("folds", std::size_t{10});
  c.seed = get("seed", std::uint64_t{42});
  c.cross_fit_folds = get("cross_fit_folds", std::size_t{5});

  const std::string family = get("representation", std::string());
  if (family == "bow") {
    c.representation = BagOfWordsRepresentation{};
  } else if (family == "ngram") {
    c.representation = NGramRepresentation{get("n", std::size_t{4})};
  } else if (family == "graph") {
    const auto n = get("n", std::size_t{4});
    c.representation =
        NGramGraphRepresentation{n, get("window", n), get("prune_threshold", 0.001)};
  } else {
    throw ArgumentError("unknown representation '" + family + "'");
  }

  const bool has_classifier = j.contains("classifier");
  const bool has_ensemble = j.contains("ensemble");
  if (has_classifier == has_ensemble) {
    throw ArgumentError("experiment needs exactly one of 'classifier' or 'ensemble'");
  }
  if (has_classifier) {
    const auto& cj = j.at("classifier");
    ClassifierSpec spec = cj.is_string() ? classifier_from_name(cj.get<std::string>())
                                         : spec_from_json(cj);
    // Seeded classifiers follow the experiment seed unless given explicitly.
    if (!(cj.is_object() && cj.contains("seed"))) spec = with_seed(std::move(spec), c.seed);
    c.method = spec;
  } else {
    EnsembleMethod e;
    e.scheme = parse_scheme(get("ensemble", std::string()));
    if (e.scheme == EnsembleScheme::Centroid) {
      e.metric = parse_metric(get("metric", std::string("euclidean")));
    }
    c.method = e;
  }
  return c;
}

nlohmann::json entry_to_json(const MatrixEntry& entry) {
  nlohmann::json j;
  j["config"] = config_to_json(entry.config);
  if (!entry.ok()) {
    j["status"] = "error";
    j["error"] = entry.error;
    return j;
  }
  const ExperimentResult& r = *entry.result;
  j["status"] = "ok";
  j["confidence_ratio"] = r.confidence_ratio;
  j["fold_accuracies"] = r.fold_accuracies;
  nlohmann::json rows = nlohmann::json::array();
  std::size_t total = 0;
  for (const auto& row : r.confusion) {
    rows.push_back(row);
    total += std::accumulate(row.begin(), row.end(), std::size_t{0});
  }
  j["confusion"] = {{"labels", {"negative", "neutral", "positive"}}, {"counts", rows}};
  j["instances"] = total;
  return j;
}

MatrixEntry entry_from_json(const nlohmann::json& j) {
  try {
    MatrixEntry e;
    e.config = config_from_json(j.at("config"));
    if (j.at("status") == "error") {
      e.error = j.at("error").get<std::string>();
      return e;
    }
    ExperimentResult r;
    r.config = e.config;
    r.confidence_ratio = j.at("confidence_ratio").get<double>();
    r.fold_accuracies = j.at("fold_accuracies").get<std::vector<double>>();
    r.confusion = j.at("confusion").at("counts").get<ConfusionMatrix>();
    if (j.contains("duration_ms")) r.duration_ms = j.at("duration_ms").get<double>();
    e.result = std::move(r);
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ArgumentError(std::string("malformed result entry: ") + ex.what());
  }
}

nlohmann::json results_document(const std::vector<MatrixEntry>& entries) {
  nlohmann::json results = nlohmann::json::array();
  for (const MatrixEntry& e : entries) results.push_back(entry_to_json(e));
  return {{"schema", "tweetpol-results"}, {"version", kResultsSchemaVersion}, {"results", results}};
}

std::vector<MatrixEntry> parse_results_document(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("schema", "") != "tweetpol-results") {
    throw ArgumentError("not a tweetpol results document");
  }
  if (doc.value("version", 0) != kResultsSchemaVersion) {
    throw ArgumentError("unsupported results version");
  }
  if (!doc.contains("results") || !doc.at("results").is_array()) {
    throw ArgumentError("results document lacks a 'results' array");
  }
  std::vector<MatrixEntry> out;
  for (const auto& item : doc.at("results")) out.push_back(entry_from_json(item));
  return out;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string results_csv(const std::vector<MatrixEntry>& entries) {
  std::ostringstream out;
  out << "representation,n,window,prune_threshold,method,balanced,folds,seed,status,"
         "confidence_ratio,duration_ms,error\n";
  for (const MatrixEntry& e : entries) {
    const PipelineConfig& c = e.config;
    std::string n;
    std::string window;
    std::string prune;
    if (const auto* r = std::get_if<NGramRepresentation>(&c.representation)) {
      n = std::to_string(r->n);
    } else if (const auto* g = std::get_if<NGramGraphRepresentation>(&c.representation)) {
      n = std::to_string(g->n);
      window = std::to_string(g->window);
      prune = format_double(g->prune_threshold);
    }
    out << representation_family(c.representation) << ',' << n << ',' << window << ','
        << prune << ',' << csv_field(method_name(c.method)) << ','
        << (c.balanced ? "true" : "false") << ',' << c.folds << ',' << c.seed << ','
        << (e.ok() ? "ok" : "error") << ','
        << (e.ok() ? format_double(e.result->confidence_ratio) : "") << ','
        << (e.ok() ? format_double(e.result->duration_ms) : "") << ','
        << csv_field(e.error) << '\n';
  }
  return out.str();
}

}  // namespace tweetpol
