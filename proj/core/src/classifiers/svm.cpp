#include <numeric>

#include "predictor.hpp"
#include "tweetpol/random.hpp"

namespace tweetpol::detail {

namespace {

// Initial step size; the schedule is eta_t = eta0 / (1 + eta0 * lambda * t).
constexpr double kInitialStep = 0.1;

class SvmPredictor final : public Predictor {
 public:
  SvmPredictor(Standardizer scaler, std::vector<Label> classes, std::vector<double> weights)
      : scaler_(std::move(scaler)), classes_(std::move(classes)), weights_(std::move(weights)) {}

  PerLabel<double> scores(std::span<const double> x) const override {
    const std::vector<double> z = scaler_.apply(x);
    const std::size_t stride = z.size() + 1;
    PerLabel<double> out = unreachable_scores();
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      const double* w = weights_.data() + k * stride;
      double margin = w[z.size()];
      for (std::size_t j = 0; j < z.size(); ++j) margin += w[j] * z[j];
      out[index_of(classes_[k])] = margin;
    }
    return out;
  }

  nlohmann::json params() const override {
    return {{"standardizer", scaler_.to_json()},
            {"classes", labels_to_json(classes_)},
            {"weights", weights_}};
  }

 private:
  Standardizer scaler_;
  std::vector<Label> classes_;
  std::vector<double> weights_;
};

}  // namespace

std::shared_ptr<const Predictor> train_svm(const LinearSvmSpec& spec, const Dataset& train) {
  Standardizer scaler = Standardizer::fit(train);
  const std::vector<double> features = scaler.apply_all(train);
  const ClassIndex index = ClassIndex::of(train);
  const std::size_t dim = train.dim();
  const std::size_t stride = dim + 1;
  const std::size_t classes = index.classes.size();
  std::vector<double> weights(classes * stride, 0.0);

  Rng rng(spec.seed);
  std::vector<std::size_t> order(train.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t t = 0;
  for (int epoch = 0; epoch < spec.epochs; ++epoch) {
    shuffle(std::span(order), rng);
    for (std::size_t i : order) {
      const double eta =
          kInitialStep / (1.0 + kInitialStep * spec.l2_lambda * static_cast<double>(t++));
      const double shrink = 1.0 - eta * spec.l2_lambda;
      const double* x = features.data() + i * dim;
      for (std::size_t k = 0; k < classes; ++k) {
        double* w = weights.data() + k * stride;
        const double y = index.targets[i] == k ? 1.0 : -1.0;
        double margin = w[dim];
        for (std::size_t j = 0; j < dim; ++j) margin += w[j] * x[j];
        for (std::size_t j = 0; j < dim; ++j) w[j] *= shrink;
        if (y * margin < 1.0) {
          for (std::size_t j = 0; j < dim; ++j) w[j] += eta * y * x[j];
          w[dim] += eta * y;
        }
      }
    }
  }
  return std::make_shared<SvmPredictor>(std::move(scaler), index.classes, std::move(weights));
}

std::shared_ptr<const Predictor> load_svm(const nlohmann::json& params) {
  return std::make_shared<SvmPredictor>(Standardizer::from_json(params.at("standardizer")),
                                        labels_from_json(params.at("classes")),
                                        params.at("weights").get<std::vector<double>>());
}

}  // namespace tweetpol::detail
