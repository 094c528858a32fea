#pragma once

#include <string>
#include <vector>

#include "indigo/core.hpp"
#include "indigo/rng.hpp"

namespace indigo::nn {

/// Row-major dense matrix. Just enough linear algebra for small MLPs; not a
/// tensor library.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  double* row(int r) { return data.data() + static_cast<std::size_t>(r) * cols; }
  const double* row(int r) const { return data.data() + static_cast<std::size_t>(r) * cols; }
};

enum class OutputActivation { linear, tanh_bounded };

struct Layer {
  Matrix w;               // out x in
  std::vector<double> b;  // out
};

/// Dense net with tanh hidden layers and a linear or tanh output.
struct DenseNet {
  std::vector<Layer> layers;
  OutputActivation out_act = OutputActivation::linear;

  int input_dim() const { return layers.front().w.cols; }
  int output_dim() const { return layers.back().w.rows; }
  std::vector<int> dims() const;
};

/// Post-activation outputs of every layer for one forward batch, kept for the
/// matching backward pass.
struct ForwardCache {
  Matrix input;
  std::vector<Matrix> activations;
  std::vector<int> net_dims;  // to detect mismatched caches
};

/// Parameter partials shaped like the net, plus the gradient w.r.t. the
/// forward input (needed to chain the critic into the actor update).
struct Gradients {
  std::vector<Layer> layers;
  Matrix input_grad;
};

struct AdamState {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_adam = 1e-8;
  long step = 0;
  std::vector<Layer> m;  // first moments, shaped like the net
  std::vector<Layer> v;  // second moments

  static AdamState for_net(const DenseNet& net, double learning_rate = 1e-3);
};

/// Batched forward pass; x is batch x input_dim. Pass a cache to enable
/// backward().
Matrix forward(const DenseNet& net, const Matrix& x, ForwardCache* cache = nullptr);
/// Single-vector convenience wrapper.
std::vector<double> forward(const DenseNet& net, const std::vector<double>& x);

/// Exact analytic gradients of sum(output .* dy) w.r.t. all parameters and
/// the input. The cache must come from a forward() on the same net.
Gradients backward(const DenseNet& net, const ForwardCache& cache, const Matrix& dy);

/// Bias-corrected Adam update in place.
void adam_step(DenseNet& net, const Gradients& grads, AdamState& state);

/// target <- tau * target + (1 - tau) * source, elementwise. tau is the
/// fraction of the target retained.
void polyak_update(DenseNet& target, const DenseNet& source, double tau);

/// Uniform fan-in init for hidden layers, final-layer weights scaled by 1e-3
/// and final bias set to output_bias, so a fresh critic starts near its
/// pessimistic value and a fresh actor near zero action.
DenseNet init_net(const std::vector<int>& dims, OutputActivation out_act,
                  Rng& rng, double output_bias = 0.0);

/// Versioned text checkpoint (shapes, then row-major values, full precision).
void save_net(const DenseNet& net, const std::string& path);
DenseNet load_net(const std::string& path);

}  // namespace indigo::nn
