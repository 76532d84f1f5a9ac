#include <algorithm>
#include <cmath>

#include "tweetpol/learning_kernels.hpp"

namespace tweetpol::kernels {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// -log softmax(logits)[target], computed without forming the probabilities.
double cross_entropy(std::span<const double> logits, std::size_t target) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - peak);
  return std::log(sum) + peak - logits[target];
}

}  // namespace

void softmax(std::span<const double> logits, std::span<double> out) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out[k] = std::exp(logits[k] - peak);
    sum += out[k];
  }
  for (std::size_t k = 0; k < logits.size(); ++k) out[k] /= sum;
}

std::size_t softmax_regression_param_count(std::size_t dim, std::size_t classes) {
  return classes * (dim + 1);
}

void softmax_regression_logits(std::span<const double> params, std::span<const double> x,
                               std::size_t classes, std::span<double> logits) {
  const std::size_t stride = x.size() + 1;
  for (std::size_t k = 0; k < classes; ++k) {
    const double* w = params.data() + k * stride;
    double z = w[x.size()];
    for (std::size_t j = 0; j < x.size(); ++j) z += w[j] * x[j];
    logits[k] = z;
  }
}

LossAndGradient softmax_regression_objective(std::span<const double> params,
                                             const TrainingView& data, std::size_t classes,
                                             double l2) {
  const std::size_t dim = data.dim;
  const std::size_t stride = dim + 1;
  const std::size_t rows = data.targets.size();
  LossAndGradient out;
  out.gradient.assign(params.size(), 0.0);
  std::vector<double> logits(classes);
  std::vector<double> probs(classes);

  for (std::size_t i = 0; i < rows; ++i) {
    const auto x = data.features.subspan(i * dim, dim);
    softmax_regression_logits(params, x, classes, logits);
    out.loss += cross_entropy(logits, data.targets[i]);
    softmax(logits, probs);
    for (std::size_t k = 0; k < classes; ++k) {
      const double delta = probs[k] - (k == data.targets[i] ? 1.0 : 0.0);
      double* g = out.gradient.data() + k * stride;
      for (std::size_t j = 0; j < dim; ++j) g[j] += delta * x[j];
      g[dim] += delta;
    }
  }

  const double inv_rows = rows == 0 ? 0.0 : 1.0 / static_cast<double>(rows);
  out.loss *= inv_rows;
  for (double& g : out.gradient) g *= inv_rows;
  for (std::size_t k = 0; k < classes; ++k) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double w = params[k * stride + j];
      out.loss += 0.5 * l2 * w * w;
      out.gradient[k * stride + j] += l2 * w;
    }
  }
  return out;
}

std::size_t mlp_param_count(std::size_t dim, std::size_t hidden, std::size_t classes) {
  return hidden * dim + hidden + classes * hidden + classes;
}

void mlp_logits(std::span<const double> params, std::span<const double> x, std::size_t dim,
                std::size_t hidden, std::size_t classes, std::span<double> logits) {
  const double* w1 = params.data();
  const double* b1 = w1 + hidden * dim;
  const double* w2 = b1 + hidden;
  const double* b2 = w2 + classes * hidden;
  std::vector<double> act(hidden);
  for (std::size_t h = 0; h < hidden; ++h) {
    double z = b1[h];
    for (std::size_t j = 0; j < dim; ++j) z += w1[h * dim + j] * x[j];
    act[h] = sigmoid(z);
  }
  for (std::size_t k = 0; k < classes; ++k) {
    double z = b2[k];
    for (std::size_t h = 0; h < hidden; ++h) z += w2[k * hidden + h] * act[h];
    logits[k] = z;
  }
}

double mlp_accumulate_gradient(std::span<const double> params, std::span<const double> x,
                               std::size_t target, std::size_t dim, std::size_t hidden,
                               std::size_t classes, std::span<double> grad,
                               std::span<double> scratch) {
  const double* w1 = params.data();
  const double* b1 = w1 + hidden * dim;
  const double* w2 = b1 + hidden;
  const double* b2 = w2 + classes * hidden;
  double* g_w1 = grad.data();
  double* g_b1 = g_w1 + hidden * dim;
  double* g_w2 = g_b1 + hidden;
  double* g_b2 = g_w2 + classes * hidden;

  double* act = scratch.data();
  double* out = act + hidden;
  for (std::size_t h = 0; h < hidden; ++h) {
    double z = b1[h];
    for (std::size_t j = 0; j < dim; ++j) z += w1[h * dim + j] * x[j];
    act[h] = sigmoid(z);
  }
  for (std::size_t k = 0; k < classes; ++k) {
    double z = b2[k];
    for (std::size_t h = 0; h < hidden; ++h) z += w2[k * hidden + h] * act[h];
    out[k] = z;
  }
  const std::span<double> logits(out, classes);
  const double loss = cross_entropy(logits, target);
  softmax(logits, logits);

  // logits now hold probabilities; delta_k = p_k - [k == target].
  for (std::size_t k = 0; k < classes; ++k) {
    const double delta = out[k] - (k == target ? 1.0 : 0.0);
    out[k] = delta;
    g_b2[k] += delta;
    for (std::size_t h = 0; h < hidden; ++h) g_w2[k * hidden + h] += delta * act[h];
  }
  for (std::size_t h = 0; h < hidden; ++h) {
    double back = 0.0;
    for (std::size_t k = 0; k < classes; ++k) back += out[k] * w2[k * hidden + h];
    const double delta = back * act[h] * (1.0 - act[h]);
    g_b1[h] += delta;
    for (std::size_t j = 0; j < dim; ++j) g_w1[h * dim + j] += delta * x[j];
  }
  return loss;
}

LossAndGradient mlp_objective(std::span<const double> params, const TrainingView& data,
                              std::size_t hidden, std::size_t classes) {
  const std::size_t rows = data.targets.size();
  LossAndGradient out;
  out.gradient.assign(params.size(), 0.0);
  std::vector<double> scratch(hidden + classes);
  for (std::size_t i = 0; i < rows; ++i) {
    out.loss += mlp_accumulate_gradient(params, data.features.subspan(i * data.dim, data.dim),
                                        data.targets[i], data.dim, hidden, classes,
                                        out.gradient, scratch);
  }
  if (rows > 0) {
    const double inv = 1.0 / static_cast<double>(rows);
    out.loss *= inv;
    for (double& g : out.gradient) g *= inv;
  }
  return out;
}

}  // namespace tweetpol::kernels
