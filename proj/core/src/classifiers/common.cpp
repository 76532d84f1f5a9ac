#include <cmath>
#include <limits>

#include "predictor.hpp"
#include "tweetpol/errors.hpp"
#include "tweetpol/learning_kernels.hpp"

namespace tweetpol {

void Dataset::add_row(std::span<const double> features, Label label) {
  if (features.size() != dim_) {
    throw ArgumentError("dataset row has " + std::to_string(features.size()) +
                        " features, expected " + std::to_string(dim_));
  }
  values_.insert(values_.end(), features.begin(), features.end());
  labels_.push_back(label);
}

namespace detail {

PerLabel<double> unreachable_scores() {
  PerLabel<double> s;
  s.fill(-std::numeric_limits<double>::infinity());
  return s;
}

nlohmann::json labels_to_json(std::span<const Label> labels) {
  nlohmann::json arr = nlohmann::json::array();
  for (Label l : labels) arr.push_back(std::string(to_string(l)));
  return arr;
}

std::vector<Label> labels_from_json(const nlohmann::json& j) {
  std::vector<Label> out;
  for (const auto& item : j) {
    const auto label = parse_label(item.get<std::string>());
    if (!label) throw ArgumentError("unknown label in model: " + item.dump());
    out.push_back(*label);
  }
  return out;
}

Standardizer Standardizer::fit(const Dataset& data) {
  const std::size_t d = data.dim();
  const auto n = static_cast<double>(data.rows());
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 0.0);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto x = data.row(i);
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += x[j];
  }
  for (double& m : s.mean) m /= n;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto x = data.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = x[j] - s.mean[j];
      s.scale[j] += diff * diff;
    }
  }
  for (double& v : s.scale) {
    v = std::sqrt(v / n);
    if (!(v > 1e-12)) v = 1.0;
  }
  return s;
}

void Standardizer::apply_into(std::span<const double> x, std::span<double> out) const {
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) / scale[j];
}

std::vector<double> Standardizer::apply(std::span<const double> x) const {
  std::vector<double> out(x.size());
  apply_into(x, out);
  return out;
}

std::vector<double> Standardizer::apply_all(const Dataset& data) const {
  std::vector<double> out(data.values().size());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    apply_into(data.row(i), std::span(out).subspan(i * data.dim(), data.dim()));
  }
  return out;
}

nlohmann::json Standardizer::to_json() const { return {{"mean", mean}, {"scale", scale}}; }

Standardizer Standardizer::from_json(const nlohmann::json& j) {
  Standardizer s;
  s.mean = j.at("mean").get<std::vector<double>>();
  s.scale = j.at("scale").get<std::vector<double>>();
  return s;
}

ClassIndex ClassIndex::of(const Dataset& data) {
  std::vector<std::size_t> rows(data.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return of(data, rows);
}

ClassIndex ClassIndex::of(const Dataset& data, std::span<const std::size_t> rows) {
  PerLabel<bool> present{};
  for (std::size_t i : rows) present[index_of(data.label(i))] = true;
  ClassIndex idx;
  PerLabel<std::size_t> slot{};
  for (Label l : kAllLabels) {
    if (present[index_of(l)]) {
      slot[index_of(l)] = idx.classes.size();
      idx.classes.push_back(l);
    }
  }
  idx.targets.reserve(rows.size());
  for (std::size_t i : rows) idx.targets.push_back(slot[index_of(data.label(i))]);
  return idx;
}

SoftmaxModel SoftmaxModel::train(std::span<const double> features, std::size_t dim,
                                 const ClassIndex& index, double learning_rate, int epochs,
                                 double l2) {
  SoftmaxModel m;
  m.classes = index.classes;
  m.dim = dim;
  m.params.assign(kernels::softmax_regression_param_count(dim, m.classes.size()), 0.0);
  const kernels::TrainingView view{features, dim, index.targets};
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const auto step = kernels::softmax_regression_objective(m.params, view, m.classes.size(), l2);
    for (std::size_t p = 0; p < m.params.size(); ++p) {
      m.params[p] -= learning_rate * step.gradient[p];
    }
  }
  return m;
}

PerLabel<double> SoftmaxModel::logits(std::span<const double> x) const {
  std::vector<double> z(classes.size());
  kernels::softmax_regression_logits(params, x, classes.size(), z);
  PerLabel<double> out = unreachable_scores();
  for (std::size_t k = 0; k < classes.size(); ++k) out[index_of(classes[k])] = z[k];
  return out;
}

PerLabel<double> SoftmaxModel::probabilities(std::span<const double> x) const {
  std::vector<double> z(classes.size());
  kernels::softmax_regression_logits(params, x, classes.size(), z);
  kernels::softmax(z, z);
  PerLabel<double> out{};
  for (std::size_t k = 0; k < classes.size(); ++k) out[index_of(classes[k])] = z[k];
  return out;
}

nlohmann::json SoftmaxModel::to_json() const {
  return {{"classes", labels_to_json(classes)}, {"dim", dim}, {"weights", params}};
}

SoftmaxModel SoftmaxModel::from_json(const nlohmann::json& j) {
  SoftmaxModel m;
  m.classes = labels_from_json(j.at("classes"));
  m.dim = j.at("dim").get<std::size_t>();
  m.params = j.at("weights").get<std::vector<double>>();
  if (m.params.size() != kernels::softmax_regression_param_count(m.dim, m.classes.size())) {
    throw ArgumentError("softmax model: weight count does not match dimensions");
  }
  return m;
}

namespace {

class ConstantPredictor final : public Predictor {
 public:
  explicit ConstantPredictor(Label label) : label_(label) {}

  PerLabel<double> scores(std::span<const double>) const override {
    PerLabel<double> s = unreachable_scores();
    s[index_of(label_)] = 0.0;
    return s;
  }
  nlohmann::json params() const override {
    return {{"constant", std::string(to_string(label_))}};
  }
  bool constant() const override { return true; }

 private:
  Label label_;
};

}  // namespace

std::shared_ptr<const Predictor> make_constant(Label label) {
  return std::make_shared<ConstantPredictor>(label);
}

}  // namespace detail
}  // namespace tweetpol
