#include <algorithm>
#include <cmath>
#include <numbers>

#include "predictor.hpp"

namespace tweetpol::detail {

namespace {

class GaussianNaiveBayes final : public Predictor {
 public:
  struct ClassStats {
    Label label;
    double log_prior;
    std::vector<double> mean;
    std::vector<double> variance;
  };

  explicit GaussianNaiveBayes(std::vector<ClassStats> stats) : stats_(std::move(stats)) {}

  PerLabel<double> scores(std::span<const double> x) const override {
    PerLabel<double> out = unreachable_scores();
    for (const ClassStats& c : stats_) {
      double s = c.log_prior;
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double diff = x[j] - c.mean[j];
        s -= 0.5 * std::log(2.0 * std::numbers::pi * c.variance[j]) +
             diff * diff / (2.0 * c.variance[j]);
      }
      out[index_of(c.label)] = s;
    }
    return out;
  }

  nlohmann::json params() const override {
    nlohmann::json classes = nlohmann::json::array();
    for (const ClassStats& c : stats_) {
      classes.push_back({{"label", std::string(to_string(c.label))},
                         {"log_prior", c.log_prior},
                         {"mean", c.mean},
                         {"variance", c.variance}});
    }
    return {{"classes", classes}};
  }

  static std::shared_ptr<const Predictor> from_json(const nlohmann::json& j) {
    std::vector<ClassStats> stats;
    for (const auto& c : j.at("classes")) {
      stats.push_back({labels_from_json(nlohmann::json::array({c.at("label")})).front(),
                       c.at("log_prior").get<double>(), c.at("mean").get<std::vector<double>>(),
                       c.at("variance").get<std::vector<double>>()});
    }
    return std::make_shared<GaussianNaiveBayes>(std::move(stats));
  }

 private:
  std::vector<ClassStats> stats_;
};

}  // namespace

std::shared_ptr<const Predictor> train_naive_bayes(const NaiveBayesSpec& spec,
                                                   const Dataset& train) {
  const std::size_t d = train.dim();
  PerLabel<std::size_t> counts{};
  PerLabel<std::vector<double>> sums;
  for (auto& s : sums) s.assign(d, 0.0);
  for (std::size_t i = 0; i < train.rows(); ++i) {
    const std::size_t c = index_of(train.label(i));
    ++counts[c];
    const auto x = train.row(i);
    for (std::size_t j = 0; j < d; ++j) sums[c][j] += x[j];
  }

  std::vector<GaussianNaiveBayes::ClassStats> stats;
  const auto total = static_cast<double>(train.rows());
  for (Label label : kAllLabels) {
    const std::size_t c = index_of(label);
    if (counts[c] == 0) continue;
    const auto n = static_cast<double>(counts[c]);
    GaussianNaiveBayes::ClassStats cs{label, std::log(n / total), sums[c],
                                      std::vector<double>(d, 0.0)};
    for (double& m : cs.mean) m /= n;
    for (std::size_t i = 0; i < train.rows(); ++i) {
      if (train.label(i) != label) continue;
      const auto x = train.row(i);
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = x[j] - cs.mean[j];
        cs.variance[j] += diff * diff;
      }
    }
    for (double& v : cs.variance) v = std::max(v / n, spec.variance_floor);
    stats.push_back(std::move(cs));
  }
  return std::make_shared<GaussianNaiveBayes>(std::move(stats));
}

std::shared_ptr<const Predictor> load_naive_bayes(const nlohmann::json& params) {
  return GaussianNaiveBayes::from_json(params);
}

}  // namespace tweetpol::detail
