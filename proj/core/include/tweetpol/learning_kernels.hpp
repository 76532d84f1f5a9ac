#pragma once

// Objective functions behind the gradient-trained classifiers, exposed with a
// flat parameter vector so they can be checked against finite differences.

#include <cstddef>
#include <span>
#include <vector>

namespace tweetpol::kernels {

struct LossAndGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

/// Numerically stable softmax of `logits` written to `out` (same size).
void softmax(std::span<const double> logits, std::span<double> out);

/// Rows are `dim` features; targets are class indices in [0, classes).
struct TrainingView {
  std::span<const double> features;
  std::size_t dim;
  std::span<const std::size_t> targets;
};

/// Softmax regression. Parameters: classes x (dim + 1), row-major, bias last.
/// Loss = mean cross-entropy + l2/2 * ||weights||^2 (biases unregularized).
std::size_t softmax_regression_param_count(std::size_t dim, std::size_t classes);
LossAndGradient softmax_regression_objective(std::span<const double> params,
                                             const TrainingView& data, std::size_t classes,
                                             double l2);
void softmax_regression_logits(std::span<const double> params, std::span<const double> x,
                               std::size_t classes, std::span<double> logits);

/// One sigmoid hidden layer and a softmax output. Parameter layout:
/// W1 (hidden x dim), b1 (hidden), W2 (classes x hidden), b2 (classes).
/// Loss = mean cross-entropy.
std::size_t mlp_param_count(std::size_t dim, std::size_t hidden, std::size_t classes);
LossAndGradient mlp_objective(std::span<const double> params, const TrainingView& data,
                              std::size_t hidden, std::size_t classes);
void mlp_logits(std::span<const double> params, std::span<const double> x, std::size_t dim,
                std::size_t hidden, std::size_t classes, std::span<double> logits);

/// Adds the cross-entropy gradient of a single example to `grad`, using
/// `scratch` of at least hidden + classes doubles. Returns the example's loss.
double mlp_accumulate_gradient(std::span<const double> params, std::span<const double> x,
                               std::size_t target, std::size_t dim, std::size_t hidden,
                               std::size_t classes, std::span<double> grad,
                               std::span<double> scratch);

}  // namespace tweetpol::kernels
