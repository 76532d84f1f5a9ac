#include <cmath>

#include "predictor.hpp"
#include "tweetpol/errors.hpp"

namespace tweetpol {

namespace {

constexpr int kModelSchemaVersion = 1;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& message) {
  if (!ok) throw ArgumentError(message);
}

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ArgumentError(std::string("classifier field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string_view classifier_name(const ClassifierSpec& spec) {
  return std::visit(Overloaded{
                        [](const NaiveBayesSpec&) { return "naive_bayes"; },
                        [](const LogisticRegressionSpec&) { return "logistic_regression"; },
                        [](const MlpSpec&) { return "mlp"; },
                        [](const C45Spec&) { return "c45"; },
                        [](const BestFirstTreeSpec&) { return "best_first_tree"; },
                        [](const FunctionalTreeSpec&) { return "functional_tree"; },
                        [](const LinearSvmSpec&) { return "svm"; },
                        [](const MajorityClassSpec&) { return "majority_class"; },
                    },
                    spec);
}

ClassifierSpec classifier_from_name(std::string_view name) {
  if (name == "naive_bayes") return NaiveBayesSpec{};
  if (name == "logistic_regression") return LogisticRegressionSpec{};
  if (name == "mlp") return MlpSpec{};
  if (name == "c45") return C45Spec{};
  if (name == "best_first_tree") return BestFirstTreeSpec{};
  if (name == "functional_tree") return FunctionalTreeSpec{};
  if (name == "svm") return LinearSvmSpec{};
  if (name == "majority_class") return MajorityClassSpec{};
  throw ArgumentError("unknown classifier '" + std::string(name) + "'");
}

void validate(const ClassifierSpec& spec) {
  std::visit(Overloaded{
                 [](const NaiveBayesSpec& s) {
                   require(s.variance_floor > 0.0, "naive_bayes: variance_floor must be > 0");
                 },
                 [](const LogisticRegressionSpec& s) {
                   require(s.learning_rate > 0.0, "logistic_regression: learning_rate must be > 0");
                   require(s.epochs > 0, "logistic_regression: epochs must be > 0");
                   require(s.l2_lambda >= 0.0, "logistic_regression: l2_lambda must be >= 0");
                 },
                 [](const MlpSpec& s) {
                   require(s.hidden_units > 0, "mlp: hidden_units must be > 0");
                   require(s.learning_rate > 0.0, "mlp: learning_rate must be > 0");
                   require(s.epochs > 0, "mlp: epochs must be > 0");
                 },
                 [](const C45Spec& s) { require(s.min_leaf >= 1, "c45: min_leaf must be >= 1"); },
                 [](const BestFirstTreeSpec& s) {
                   require(s.max_expansions >= 1, "best_first_tree: max_expansions must be >= 1");
                   require(s.min_leaf >= 1, "best_first_tree: min_leaf must be >= 1");
                 },
                 [](const FunctionalTreeSpec& s) {
                   require(s.min_leaf >= 1, "functional_tree: min_leaf must be >= 1");
                   require(s.leaf_lr_epochs >= 1, "functional_tree: leaf_lr_epochs must be >= 1");
                 },
                 [](const LinearSvmSpec& s) {
                   require(s.l2_lambda > 0.0, "svm: l2_lambda must be > 0");
                   require(s.epochs > 0, "svm: epochs must be > 0");
                 },
                 [](const MajorityClassSpec&) {},
             },
             spec);
}

ClassifierSpec with_seed(ClassifierSpec spec, std::uint64_t seed) {
  std::visit(
      [seed](auto& s) {
        if constexpr (requires { s.seed; }) s.seed = seed;
      },
      spec);
  return spec;
}

nlohmann::json spec_to_json(const ClassifierSpec& spec) {
  nlohmann::json j = {{"kind", std::string(classifier_name(spec))}};
  std::visit(Overloaded{
                 [&](const NaiveBayesSpec& s) { j["variance_floor"] = s.variance_floor; },
                 [&](const LogisticRegressionSpec& s) {
                   j["learning_rate"] = s.learning_rate;
                   j["epochs"] = s.epochs;
                   j["l2_lambda"] = s.l2_lambda;
                   j["seed"] = s.seed;
                 },
                 [&](const MlpSpec& s) {
                   j["hidden_units"] = s.hidden_units;
                   j["learning_rate"] = s.learning_rate;
                   j["epochs"] = s.epochs;
                   j["seed"] = s.seed;
                 },
                 [&](const C45Spec& s) { j["min_leaf"] = s.min_leaf; },
                 [&](const BestFirstTreeSpec& s) {
                   j["max_expansions"] = s.max_expansions;
                   j["min_leaf"] = s.min_leaf;
                 },
                 [&](const FunctionalTreeSpec& s) {
                   j["min_leaf"] = s.min_leaf;
                   j["leaf_lr_epochs"] = s.leaf_lr_epochs;
                 },
                 [&](const LinearSvmSpec& s) {
                   j["l2_lambda"] = s.l2_lambda;
                   j["epochs"] = s.epochs;
                   j["seed"] = s.seed;
                 },
                 [&](const MajorityClassSpec&) {},
             },
             spec);
  return j;
}

ClassifierSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ArgumentError("classifier spec needs a string 'kind'");
  }
  ClassifierSpec spec = classifier_from_name(j.at("kind").get<std::string>());
  std::visit(Overloaded{
                 [&](NaiveBayesSpec& s) { read_field(j, "variance_floor", s.variance_floor); },
                 [&](LogisticRegressionSpec& s) {
                   read_field(j, "learning_rate", s.learning_rate);
                   read_field(j, "epochs", s.epochs);
                   read_field(j, "l2_lambda", s.l2_lambda);
                   read_field(j, "seed", s.seed);
                 },
                 [&](MlpSpec& s) {
                   read_field(j, "hidden_units", s.hidden_units);
                   read_field(j, "learning_rate", s.learning_rate);
                   read_field(j, "epochs", s.epochs);
                   read_field(j, "seed", s.seed);
                 },
                 [&](C45Spec& s) { read_field(j, "min_leaf", s.min_leaf); },
                 [&](BestFirstTreeSpec& s) {
                   read_field(j, "max_expansions", s.max_expansions);
                   read_field(j, "min_leaf", s.min_leaf);
                 },
                 [&](FunctionalTreeSpec& s) {
                   read_field(j, "min_leaf", s.min_leaf);
                   read_field(j, "leaf_lr_epochs", s.leaf_lr_epochs);
                 },
                 [&](LinearSvmSpec& s) {
                   read_field(j, "l2_lambda", s.l2_lambda);
                   read_field(j, "epochs", s.epochs);
                   read_field(j, "seed", s.seed);
                 },
                 [&](MajorityClassSpec&) {},
             },
             spec);
  return spec;
}

std::array<ClassifierSpec, 7> ensemble_registry(std::uint64_t seed) {
  return {with_seed(LinearSvmSpec{}, seed),
          NaiveBayesSpec{},
          with_seed(LogisticRegressionSpec{}, seed),
          with_seed(MlpSpec{}, seed),
          BestFirstTreeSpec{},
          FunctionalTreeSpec{},
          C45Spec{}};
}

Label argmax_label(const PerLabel<double>& scores) noexcept {
  std::size_t best = 0;
  for (std::size_t k = 1; k < kNumLabels; ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return label_at(best);
}

Model::Model(ClassifierSpec spec, std::size_t dim,
             std::shared_ptr<const detail::Predictor> impl)
    : spec_(std::move(spec)), dim_(dim), impl_(std::move(impl)) {}

bool Model::is_constant() const noexcept { return impl_->constant(); }

void Model::check_dim(std::size_t got) const {
  if (got != dim_) {
    throw ArgumentError("model expects " + std::to_string(dim_) + " features, got " +
                        std::to_string(got));
  }
}

PerLabel<double> Model::scores(std::span<const double> features) const {
  check_dim(features.size());
  return impl_->scores(features);
}

Label Model::predict(std::span<const double> features) const {
  return argmax_label(scores(features));
}

std::vector<Label> Model::predict_batch(const Dataset& data) const {
  std::vector<Label> out;
  out.reserve(data.rows());
  check_dim(data.dim());
  for (std::size_t i = 0; i < data.rows(); ++i) out.push_back(argmax_label(impl_->scores(data.row(i))));
  return out;
}

nlohmann::json Model::to_json() const {
  return {{"schema", "tweetpol-model"},
          {"version", kModelSchemaVersion},
          {"spec", spec_to_json(spec_)},
          {"dim", dim_},
          {"params", impl_->params()}};
}

Model Model::from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema") != "tweetpol-model") throw ArgumentError("not a tweetpol model document");
    if (j.at("version").get<int>() != kModelSchemaVersion) {
      throw ArgumentError("unsupported model version " + j.at("version").dump());
    }
    ClassifierSpec spec = spec_from_json(j.at("spec"));
    validate(spec);
    const auto dim = j.at("dim").get<std::size_t>();
    auto impl = detail::load_predictor(spec, dim, j.at("params"));
    return Model(std::move(spec), dim, std::move(impl));
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed model document: ") + e.what());
  }
}

namespace detail {

std::shared_ptr<const Predictor> load_predictor(const ClassifierSpec& spec, std::size_t,
                                                const nlohmann::json& params) {
  if (params.contains("constant")) {
    const auto label = parse_label(params.at("constant").get<std::string>());
    if (!label) throw ArgumentError("bad constant label in model");
    return make_constant(*label);
  }
  return std::visit(Overloaded{
                        [&](const NaiveBayesSpec&) { return load_naive_bayes(params); },
                        [&](const LogisticRegressionSpec&) { return load_logistic(params); },
                        [&](const MlpSpec&) { return load_mlp(params); },
                        [&](const C45Spec&) { return load_tree(params); },
                        [&](const BestFirstTreeSpec&) { return load_tree(params); },
                        [&](const FunctionalTreeSpec&) { return load_tree(params); },
                        [&](const LinearSvmSpec&) { return load_svm(params); },
                        [&](const MajorityClassSpec&) -> std::shared_ptr<const Predictor> {
                          throw ArgumentError("majority_class model must be constant");
                        },
                    },
                    spec);
}

}  // namespace detail

Model fit(const ClassifierSpec& spec, const Dataset& train) {
  validate(spec);
  if (train.empty()) throw ArgumentError("fit: empty training set");
  if (train.dim() < 1) throw ArgumentError("fit: feature dimension must be >= 1");
  for (double v : train.values()) {
    if (!std::isfinite(v)) throw ArgumentError("fit: non-finite feature value");
  }

  PerLabel<std::size_t> counts{};
  for (Label l : train.labels()) ++counts[index_of(l)];
  std::size_t present = 0;
  std::size_t majority = 0;
  for (std::size_t k = 0; k < kNumLabels; ++k) {
    if (counts[k] > 0) ++present;
    if (counts[k] > counts[majority]) majority = k;
  }
  if (present == 1 || std::holds_alternative<MajorityClassSpec>(spec)) {
    return Model(spec, train.dim(), detail::make_constant(label_at(majority)));
  }

  auto impl = std::visit(
      Overloaded{
          [&](const NaiveBayesSpec& s) { return detail::train_naive_bayes(s, train); },
          [&](const LogisticRegressionSpec& s) { return detail::train_logistic(s, train); },
          [&](const MlpSpec& s) { return detail::train_mlp(s, train); },
          [&](const C45Spec& s) { return detail::train_c45(s, train); },
          [&](const BestFirstTreeSpec& s) { return detail::train_best_first(s, train); },
          [&](const FunctionalTreeSpec& s) { return detail::train_functional_tree(s, train); },
          [&](const LinearSvmSpec& s) { return detail::train_svm(s, train); },
          [&](const MajorityClassSpec&) { return detail::make_constant(label_at(majority)); },
      },
      spec);
  return Model(spec, train.dim(), std::move(impl));
}

}  // namespace tweetpol
