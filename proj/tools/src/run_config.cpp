#include <set>
#include <string>
#include <string_view>

#include "tweetpol/cli.hpp"
#include "tweetpol/corpus.hpp"
#include "tweetpol/errors.hpp"

namespace tweetpol::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kClassifierKinds = {
    "naive_bayes", "logistic_regression", "mlp", "c45", "best_first_tree", "functional_tree",
    "svm", "majority_class"};

std::string type_name(const json& v) { return v.type_name(); }

void expect_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where, "expected a string, got " + type_name(v));
}

void expect_unsigned(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(where, "expected a non-negative integer");
  }
}

void expect_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where, "expected a number, got " + type_name(v));
}

void expect_enum(const json& v, const std::string& where, std::initializer_list<std::string_view> values) {
  expect_string(v, where);
  const auto s = v.get<std::string>();
  for (std::string_view allowed : values) {
    if (s == allowed) return;
  }
  throw ConfigError(where, "unexpected value '" + s + "'");
}

void check_classifier(const json& c, const std::string& where) {
  if (c.is_string()) {
    if (!kClassifierKinds.contains(c.get<std::string>())) {
      throw ConfigError(where, "unknown classifier '" + c.get<std::string>() + "'");
    }
    return;
  }
  if (!c.is_object()) throw ConfigError(where, "expected a classifier name or object");
  if (!c.contains("kind")) throw ConfigError(where, "missing required property 'kind'");
  for (const auto& [key, value] : c.items()) {
    const std::string at = where + "/" + key;
    if (key == "kind") {
      expect_string(value, at);
      if (!kClassifierKinds.contains(value.get<std::string>())) {
        throw ConfigError(at, "unknown classifier '" + value.get<std::string>() + "'");
      }
    } else if (key == "epochs" || key == "hidden_units" || key == "min_leaf" ||
               key == "max_expansions" || key == "leaf_lr_epochs" || key == "seed") {
      expect_unsigned(value, at);
    } else if (key == "learning_rate" || key == "l2_lambda" || key == "variance_floor") {
      expect_number(value, at);
    } else {
      throw ConfigError(at, "unknown property");
    }
  }
}

void check_experiment(const json& e, const std::string& where) {
  if (!e.is_object()) throw ConfigError(where, "expected an object");
  if (!e.contains("representation")) {
    throw ConfigError(where, "missing required property 'representation'");
  }
  if (e.contains("classifier") == e.contains("ensemble")) {
    throw ConfigError(where, "exactly one of 'classifier' or 'ensemble' is required");
  }
  for (const auto& [key, value] : e.items()) {
    const std::string at = where + "/" + key;
    if (key == "representation") {
      expect_enum(value, at, {"bow", "ngram", "graph"});
    } else if (key == "n" || key == "window" || key == "folds" || key == "seed" ||
               key == "cross_fit_folds") {
      expect_unsigned(value, at);
    } else if (key == "prune_threshold") {
      expect_number(value, at);
    } else if (key == "balanced") {
      if (!value.is_boolean()) throw ConfigError(at, "expected a boolean");
    } else if (key == "classifier") {
      check_classifier(value, at);
    } else if (key == "ensemble") {
      expect_enum(value, at, {"majority_vote", "average_opinion", "centroid"});
    } else if (key == "metric") {
      expect_enum(value, at, {"euclidean", "manhattan", "chebyshev", "cosine", "orthodromic"});
    } else {
      throw ConfigError(at, "unknown property");
    }
  }
}

}  // namespace

void check_run_config_schema(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "run config must be a JSON object");
  for (const char* required : {"corpus_path", "experiments"}) {
    if (!doc.contains(required)) {
      throw ConfigError("", std::string("missing required property '") + required + "'");
    }
  }
  for (const auto& [key, value] : doc.items()) {
    const std::string at = "/" + key;
    if (key == "corpus_path" || key == "lexicon_path" || key == "strip_set" ||
        key == "output_dir") {
      expect_string(value, at);
    } else if (key == "seed" || key == "parallelism") {
      expect_unsigned(value, at);
    } else if (key == "experiments") {
      if (!value.is_array()) throw ConfigError(at, "expected an array");
      if (value.empty()) throw ConfigError(at, "at least one experiment is required");
      for (std::size_t i = 0; i < value.size(); ++i) {
        check_experiment(value[i], at + "/" + std::to_string(i));
      }
    } else {
      throw ConfigError(at, "unknown property");
    }
  }
}

RunConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir) {
  check_run_config_schema(doc);
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  RunConfig rc;
  rc.corpus_path = resolve(doc.at("corpus_path").get<std::string>());
  if (doc.contains("lexicon_path")) rc.lexicon_path = resolve(doc.at("lexicon_path").get<std::string>());
  rc.strip_set = doc.value("strip_set", std::string(kDefaultStripSet));
  rc.seed = doc.value("seed", std::uint64_t{42});
  if (doc.contains("output_dir")) rc.output_dir = resolve(doc.at("output_dir").get<std::string>());
  rc.parallelism = doc.value("parallelism", std::size_t{0});

  const auto& experiments = doc.at("experiments");
  for (std::size_t i = 0; i < experiments.size(); ++i) {
    json e = experiments[i];
    if (!e.contains("seed")) e["seed"] = rc.seed;
    try {
      rc.experiments.push_back(config_from_json(e));
    } catch (const ArgumentError& ex) {
      throw ConfigError("/experiments/" + std::to_string(i), ex.what());
    }
  }
  return rc;
}

}  // namespace tweetpol::cli
