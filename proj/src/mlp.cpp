#include "esran/mlp.hpp"

#include <cmath>
#include <string>

namespace esran::rl {

void Mlp::build_offsets() {
  if (sizes_.size() < 2) throw ShapeError("network needs at least two layers");
  for (int s : sizes_)
    if (s < 1) throw ShapeError("layer sizes must be positive");
  size_t offset = 0;
  for (size_t l = 0; l + 1 < sizes_.size(); ++l) {
    weightOffset_.push_back(offset);
    offset += static_cast<size_t>(sizes_[l + 1]) * sizes_[l];
    biasOffset_.push_back(offset);
    offset += static_cast<size_t>(sizes_[l + 1]);
  }
  if (params_.empty()) params_.assign(offset, 0.0);
  if (params_.size() != offset)
    throw ShapeError("parameter vector has length " +
                     std::to_string(params_.size()) + ", expected " +
                     std::to_string(offset));
}

Mlp::Mlp(std::vector<int> layerSizes, Rng& rng) : sizes_(std::move(layerSizes)) {
  build_offsets();
  for (size_t l = 0; l + 1 < sizes_.size(); ++l) {
    double limit = std::sqrt(6.0 / (sizes_[l] + sizes_[l + 1]));
    size_t count = static_cast<size_t>(sizes_[l + 1]) * sizes_[l];
    for (size_t i = 0; i < count; ++i)
      params_[weightOffset_[l] + i] = rng.uniform(-limit, limit);
    // biases start at zero
  }
}

Mlp::Mlp(std::vector<int> layerSizes, std::vector<double> params)
    : sizes_(std::move(layerSizes)), params_(std::move(params)) {
  build_offsets();
}

void Mlp::set_params(const std::vector<double>& params) {
  if (params.size() != params_.size())
    throw ShapeError("parameter vector size mismatch");
  params_ = params;
}

std::vector<double> Mlp::forward(const std::vector<double>& input) const {
  if (input.size() != static_cast<size_t>(sizes_.front()))
    throw ShapeError("input size mismatch");
  std::vector<double> a = input;
  for (size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    std::vector<double> z(out);
    const double* w = params_.data() + weightOffset_[l];
    const double* b = params_.data() + biasOffset_[l];
    for (int o = 0; o < out; ++o) {
      double s = b[o];
      const double* row = w + static_cast<size_t>(o) * in;
      for (int i = 0; i < in; ++i) s += row[i] * a[i];
      z[o] = s;
    }
    const bool hidden = (l + 2 < sizes_.size());
    if (hidden)
      for (double& v : z) v = v > 0.0 ? v : 0.0;
    a = std::move(z);
  }
  return a;
}

double Mlp::batch_loss_and_grad(const std::vector<std::vector<double>>& inputs,
                                const std::vector<int>& actions,
                                const std::vector<double>& targets,
                                std::vector<double>& grad) const {
  if (inputs.size() != actions.size() || inputs.size() != targets.size())
    throw ShapeError("batch arrays must have equal length");
  if (inputs.empty()) throw ShapeError("batch must be non-empty");
  grad.assign(params_.size(), 0.0);

  const size_t layers = sizes_.size();
  const double invB = 1.0 / static_cast<double>(inputs.size());
  double loss = 0.0;

  for (size_t s = 0; s < inputs.size(); ++s) {
    // forward, keeping pre-activations and activations
    std::vector<std::vector<double>> acts(layers);
    std::vector<std::vector<double>> pre(layers);
    acts[0] = inputs[s];
    if (acts[0].size() != static_cast<size_t>(sizes_.front()))
      throw ShapeError("input size mismatch");
    for (size_t l = 0; l + 1 < layers; ++l) {
      const int in = sizes_[l];
      const int out = sizes_[l + 1];
      pre[l + 1].resize(out);
      acts[l + 1].resize(out);
      const double* w = params_.data() + weightOffset_[l];
      const double* b = params_.data() + biasOffset_[l];
      for (int o = 0; o < out; ++o) {
        double v = b[o];
        const double* row = w + static_cast<size_t>(o) * in;
        for (int i = 0; i < in; ++i) v += row[i] * acts[l][i];
        pre[l + 1][o] = v;
        acts[l + 1][o] =
            (l + 2 < layers) ? (v > 0.0 ? v : 0.0) : v;
      }
    }

    const int action = actions[s];
    if (action < 0 || action >= sizes_.back())
      throw ShapeError("action index out of range");
    const double err = acts[layers - 1][action] - targets[s];
    loss += err * err * invB;

    // backward
    std::vector<double> delta(sizes_.back(), 0.0);
    delta[action] = 2.0 * err * invB;
    for (size_t l = layers - 1; l-- > 0;) {
      const int in = sizes_[l];
      const int out = sizes_[l + 1];
      double* gw = grad.data() + weightOffset_[l];
      double* gb = grad.data() + biasOffset_[l];
      for (int o = 0; o < out; ++o) {
        const double d = delta[o];
        if (d == 0.0) continue;
        double* row = gw + static_cast<size_t>(o) * in;
        for (int i = 0; i < in; ++i) row[i] += d * acts[l][i];
        gb[o] += d;
      }
      if (l == 0) break;
      std::vector<double> prev(in, 0.0);
      const double* w = params_.data() + weightOffset_[l];
      for (int o = 0; o < out; ++o) {
        const double d = delta[o];
        if (d == 0.0) continue;
        const double* row = w + static_cast<size_t>(o) * in;
        for (int i = 0; i < in; ++i) prev[i] += row[i] * d;
      }
      for (int i = 0; i < in; ++i)
        if (pre[l][i] <= 0.0) prev[i] = 0.0;  // rectifier gate
      delta = std::move(prev);
    }
  }
  return loss;
}

double Mlp::batch_loss(const std::vector<std::vector<double>>& inputs,
                       const std::vector<int>& actions,
                       const std::vector<double>& targets) const {
  double loss = 0.0;
  const double invB = 1.0 / static_cast<double>(inputs.size());
  for (size_t s = 0; s < inputs.size(); ++s) {
    double q = forward(inputs[s])[actions[s]];
    double err = q - targets[s];
    loss += err * err * invB;
  }
  return loss;
}

void Mlp::sgd_step(const std::vector<double>& grad, double learningRate) {
  if (grad.size() != params_.size()) throw ShapeError("gradient size mismatch");
  for (size_t i = 0; i < params_.size(); ++i)
    params_[i] -= learningRate * grad[i];
}

}  // namespace esran::rl
