#include <cmath>
#include <numeric>

#include "predictor.hpp"
#include "tweetpol/learning_kernels.hpp"
#include "tweetpol/random.hpp"

namespace tweetpol::detail {

namespace {

class LogisticPredictor final : public Predictor {
 public:
  LogisticPredictor(Standardizer scaler, SoftmaxModel model)
      : scaler_(std::move(scaler)), model_(std::move(model)) {}

  PerLabel<double> scores(std::span<const double> x) const override {
    return model_.logits(scaler_.apply(x));
  }

  nlohmann::json params() const override {
    return {{"standardizer", scaler_.to_json()}, {"softmax", model_.to_json()}};
  }

 private:
  Standardizer scaler_;
  SoftmaxModel model_;
};

class MlpPredictor final : public Predictor {
 public:
  MlpPredictor(Standardizer scaler, std::vector<Label> classes, std::size_t hidden,
               std::vector<double> weights)
      : scaler_(std::move(scaler)),
        classes_(std::move(classes)),
        hidden_(hidden),
        weights_(std::move(weights)) {}

  PerLabel<double> scores(std::span<const double> x) const override {
    const std::vector<double> z = scaler_.apply(x);
    std::vector<double> logits(classes_.size());
    kernels::mlp_logits(weights_, z, z.size(), hidden_, classes_.size(), logits);
    PerLabel<double> out = unreachable_scores();
    for (std::size_t k = 0; k < classes_.size(); ++k) out[index_of(classes_[k])] = logits[k];
    return out;
  }

  nlohmann::json params() const override {
    return {{"standardizer", scaler_.to_json()},
            {"classes", labels_to_json(classes_)},
            {"hidden_units", hidden_},
            {"weights", weights_}};
  }

 private:
  Standardizer scaler_;
  std::vector<Label> classes_;
  std::size_t hidden_;
  std::vector<double> weights_;
};

}  // namespace

std::shared_ptr<const Predictor> train_logistic(const LogisticRegressionSpec& spec,
                                                const Dataset& train) {
  Standardizer scaler = Standardizer::fit(train);
  const std::vector<double> features = scaler.apply_all(train);
  SoftmaxModel model = SoftmaxModel::train(features, train.dim(), ClassIndex::of(train),
                                           spec.learning_rate, spec.epochs, spec.l2_lambda);
  return std::make_shared<LogisticPredictor>(std::move(scaler), std::move(model));
}

std::shared_ptr<const Predictor> load_logistic(const nlohmann::json& params) {
  return std::make_shared<LogisticPredictor>(Standardizer::from_json(params.at("standardizer")),
                                             SoftmaxModel::from_json(params.at("softmax")));
}

std::shared_ptr<const Predictor> train_mlp(const MlpSpec& spec, const Dataset& train) {
  Standardizer scaler = Standardizer::fit(train);
  const std::vector<double> features = scaler.apply_all(train);
  const ClassIndex index = ClassIndex::of(train);
  const std::size_t dim = train.dim();
  const auto hidden = static_cast<std::size_t>(spec.hidden_units);
  const std::size_t classes = index.classes.size();

  Rng rng(spec.seed);
  std::vector<double> weights(kernels::mlp_param_count(dim, hidden, classes), 0.0);
  const double limit_in = std::sqrt(6.0 / static_cast<double>(dim + hidden));
  const double limit_out = std::sqrt(6.0 / static_cast<double>(hidden + classes));
  const std::size_t w1_end = hidden * dim;
  const std::size_t w2_begin = w1_end + hidden;
  const std::size_t w2_end = w2_begin + classes * hidden;
  for (std::size_t p = 0; p < w1_end; ++p) weights[p] = (2.0 * uniform_unit(rng) - 1.0) * limit_in;
  for (std::size_t p = w2_begin; p < w2_end; ++p) {
    weights[p] = (2.0 * uniform_unit(rng) - 1.0) * limit_out;
  }

  std::vector<std::size_t> order(train.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> grad(weights.size());
  std::vector<double> scratch(hidden + classes);
  for (int epoch = 0; epoch < spec.epochs; ++epoch) {
    shuffle(std::span(order), rng);
    for (std::size_t i : order) {
      std::fill(grad.begin(), grad.end(), 0.0);
      kernels::mlp_accumulate_gradient(weights, std::span(features).subspan(i * dim, dim),
                                       index.targets[i], dim, hidden, classes, grad, scratch);
      for (std::size_t p = 0; p < weights.size(); ++p) weights[p] -= spec.learning_rate * grad[p];
    }
  }
  return std::make_shared<MlpPredictor>(std::move(scaler), index.classes, hidden,
                                        std::move(weights));
}

std::shared_ptr<const Predictor> load_mlp(const nlohmann::json& params) {
  return std::make_shared<MlpPredictor>(Standardizer::from_json(params.at("standardizer")),
                                        labels_from_json(params.at("classes")),
                                        params.at("hidden_units").get<std::size_t>(),
                                        params.at("weights").get<std::vector<double>>());
}

}  // namespace tweetpol::detail
