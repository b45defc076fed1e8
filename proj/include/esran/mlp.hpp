#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "esran/rng.hpp"

namespace esran::rl {

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully connected network with rectifier hidden units and a linear output,
// double precision throughout. Parameters live in one flat vector
// ([W0 | b0 | W1 | b1 | ...], weights row-major), which keeps checkpoints
// and finite-difference checks trivial.
class Mlp {
 public:
  Mlp(std::vector<int> layerSizes, Rng& rng);
  Mlp(std::vector<int> layerSizes, std::vector<double> params);

  std::vector<double> forward(const std::vector<double>& input) const;

  // Mean squared error over the batch between the selected action outputs
  // and the regression targets. Writes dLoss/dParams into grad (resized to
  // match) and returns the loss.
  double batch_loss_and_grad(const std::vector<std::vector<double>>& inputs,
                             const std::vector<int>& actions,
                             const std::vector<double>& targets,
                             std::vector<double>& grad) const;

  double batch_loss(const std::vector<std::vector<double>>& inputs,
                    const std::vector<int>& actions,
                    const std::vector<double>& targets) const;

  void sgd_step(const std::vector<double>& grad, double learningRate);

  const std::vector<int>& layer_sizes() const { return sizes_; }
  const std::vector<double>& params() const { return params_; }
  std::vector<double>& mutable_params() { return params_; }
  void set_params(const std::vector<double>& params);
  size_t param_count() const { return params_.size(); }

 private:
  std::vector<int> sizes_;
  std::vector<double> params_;
  std::vector<size_t> weightOffset_;
  std::vector<size_t> biasOffset_;

  void build_offsets();
};

}  // namespace esran::rl
