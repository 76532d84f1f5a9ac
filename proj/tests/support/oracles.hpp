#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "tweetpol/classifiers.hpp"
#include "tweetpol/label.hpp"
#include "tweetpol/learning_kernels.hpp"
#include "tweetpol/random.hpp"

namespace tweetpol::testing {

/// Plain vote count: the unique most frequent label, Neutral on any tie.
inline Label majority_oracle(const std::vector<Label>& votes) {
  PerLabel<int> counts{};
  for (Label v : votes) ++counts[index_of(v)];
  const int top = *std::max_element(counts.begin(), counts.end());
  int winners = 0;
  Label winner = Label::Neutral;
  for (Label l : kAllLabels) {
    if (counts[index_of(l)] == top) {
      ++winners;
      winner = l;
    }
  }
  return winners == 1 ? winner : Label::Neutral;
}

/// k-fold CV accuracy with rows assigned to fold i % k.
inline double dataset_cv_accuracy(const ClassifierSpec& spec, const Dataset& data,
                                  std::size_t folds) {
  double sum = 0.0;
  for (std::size_t f = 0; f < folds; ++f) {
    Dataset train(data.dim());
    Dataset test(data.dim());
    for (std::size_t i = 0; i < data.rows(); ++i) {
      (i % folds == f ? test : train).add_row(data.row(i), data.label(i));
    }
    const Model model = fit(spec, train);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.rows(); ++i) {
      if (model.predict(test.row(i)) == test.label(i)) ++correct;
    }
    sum += static_cast<double>(correct) / static_cast<double>(test.rows());
  }
  return sum / static_cast<double>(folds);
}

struct GradientInstance {
  std::size_t dim;
  std::vector<double> features;
  std::vector<std::size_t> targets;

  kernels::TrainingView view() const { return {features, dim, targets}; }
};

/// d <= 4 features, <= 20 rows, three classes.
inline GradientInstance random_gradient_instance(Rng& rng) {
  GradientInstance inst;
  inst.dim = 1 + uniform_below(rng, 4);
  const std::size_t rows = 1 + uniform_below(rng, 20);
  for (std::size_t i = 0; i < rows * inst.dim; ++i) inst.features.push_back(standard_normal(rng));
  for (std::size_t i = 0; i < rows; ++i) inst.targets.push_back(uniform_below(rng, 3));
  return inst;
}

/// Largest relative error between `analytic` and central differences of `loss`.
template <typename LossFn>
double max_gradient_error(std::vector<double> params, const std::vector<double>& analytic,
                          LossFn loss) {
  constexpr double h = 1e-6;
  double worst = 0.0;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double saved = params[k];
    params[k] = saved + h;
    const double up = loss(params);
    params[k] = saved - h;
    const double down = loss(params);
    params[k] = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double scale = std::max({std::abs(numeric), std::abs(analytic[k]), 1e-3});
    worst = std::max(worst, std::abs(numeric - analytic[k]) / scale);
  }
  return worst;
}

/// Worst gradient error over one random LR instance and one random MLP instance.
inline double lr_gradient_error(Rng& rng) {
  const GradientInstance inst = random_gradient_instance(rng);
  std::vector<double> params(kernels::softmax_regression_param_count(inst.dim, 3));
  for (double& p : params) p = standard_normal(rng);
  const double l2 = uniform_unit(rng) * 0.1;
  const auto at = kernels::softmax_regression_objective(params, inst.view(), 3, l2);
  return max_gradient_error(params, at.gradient, [&](const std::vector<double>& p) {
    return kernels::softmax_regression_objective(p, inst.view(), 3, l2).loss;
  });
}

inline double mlp_gradient_error(Rng& rng) {
  const GradientInstance inst = random_gradient_instance(rng);
  const std::size_t hidden = 1 + uniform_below(rng, 5);
  std::vector<double> params(kernels::mlp_param_count(inst.dim, hidden, 3));
  for (double& p : params) p = standard_normal(rng);
  const auto at = kernels::mlp_objective(params, inst.view(), hidden, 3);
  return max_gradient_error(params, at.gradient, [&](const std::vector<double>& p) {
    return kernels::mlp_objective(p, inst.view(), hidden, 3).loss;
  });
}

}  // namespace tweetpol::testing
