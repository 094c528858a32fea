#include "indigo/nn.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace indigo::nn {

namespace {

constexpr const char* kMagic = "INDIGONET 1";

void check_shapes(const DenseNet& a, const std::vector<Layer>& b,
                  const char* what) {
  if (a.layers.size() != b.size())
    throw DimensionError(std::string(what) + ": layer count mismatch");
  for (std::size_t l = 0; l < b.size(); ++l) {
    if (a.layers[l].w.rows != b[l].w.rows || a.layers[l].w.cols != b[l].w.cols ||
        a.layers[l].b.size() != b[l].b.size())
      throw DimensionError(std::string(what) + ": layer shape mismatch");
  }
}

std::vector<Layer> zeros_like(const DenseNet& net) {
  std::vector<Layer> out;
  out.reserve(net.layers.size());
  for (const auto& layer : net.layers) {
    Layer z;
    z.w = Matrix(layer.w.rows, layer.w.cols);
    z.b.assign(layer.b.size(), 0.0);
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace

std::vector<int> DenseNet::dims() const {
  std::vector<int> d;
  d.push_back(layers.front().w.cols);
  for (const auto& layer : layers) d.push_back(layer.w.rows);
  return d;
}

AdamState AdamState::for_net(const DenseNet& net, double learning_rate) {
  AdamState s;
  s.learning_rate = learning_rate;
  s.m = zeros_like(net);
  s.v = zeros_like(net);
  return s;
}

Matrix forward(const DenseNet& net, const Matrix& x, ForwardCache* cache) {
  if (x.cols != net.input_dim())
    throw DimensionError("forward: input dimension mismatch");
  if (cache) {
    cache->input = x;
    cache->activations.clear();
    cache->activations.reserve(net.layers.size());
    cache->net_dims = net.dims();
  }

  const int n = x.rows;
  Matrix cur = x;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const Layer& layer = net.layers[l];
    const int out_dim = layer.w.rows;
    const int in_dim = layer.w.cols;
    Matrix z(n, out_dim);
    for (int i = 0; i < n; ++i) {
      const double* xi = cur.row(i);
      double* zi = z.row(i);
      for (int o = 0; o < out_dim; ++o) {
        const double* wo = layer.w.row(o);
        double acc = layer.b[o];
        for (int k = 0; k < in_dim; ++k) acc += wo[k] * xi[k];
        zi[o] = acc;
      }
    }
    const bool is_last = l + 1 == net.layers.size();
    const bool apply_tanh =
        !is_last || net.out_act == OutputActivation::tanh_bounded;
    if (apply_tanh)
      for (double& v : z.data) v = std::tanh(v);
    if (cache) cache->activations.push_back(z);
    cur = std::move(z);
  }
  return cur;
}

std::vector<double> forward(const DenseNet& net, const std::vector<double>& x) {
  Matrix m(1, static_cast<int>(x.size()));
  m.data = x;
  Matrix y = forward(net, m);
  return y.data;
}

Gradients backward(const DenseNet& net, const ForwardCache& cache,
                   const Matrix& dy) {
  if (cache.net_dims != net.dims() ||
      cache.activations.size() != net.layers.size())
    throw DimensionError("backward: cache does not match net");
  const int n = cache.input.rows;
  if (dy.rows != n || dy.cols != net.output_dim())
    throw DimensionError("backward: dy shape mismatch");

  Gradients g;
  g.layers = zeros_like(net);

  // dz at the output layer
  Matrix dz = dy;
  if (net.out_act == OutputActivation::tanh_bounded) {
    const Matrix& a = cache.activations.back();
    for (std::size_t i = 0; i < dz.data.size(); ++i)
      dz.data[i] *= 1.0 - a.data[i] * a.data[i];
  }

  for (int l = static_cast<int>(net.layers.size()) - 1; l >= 0; --l) {
    const Layer& layer = net.layers[l];
    const Matrix& a_prev = l > 0 ? cache.activations[l - 1] : cache.input;
    const int out_dim = layer.w.rows;
    const int in_dim = layer.w.cols;

    // dW += dz^T * a_prev, db += colsum(dz)
    Layer& gl = g.layers[l];
    for (int i = 0; i < n; ++i) {
      const double* dzi = dz.row(i);
      const double* ai = a_prev.row(i);
      for (int o = 0; o < out_dim; ++o) {
        const double d = dzi[o];
        if (d == 0.0) continue;
        double* gw = gl.w.row(o);
        for (int k = 0; k < in_dim; ++k) gw[k] += d * ai[k];
        gl.b[o] += d;
      }
    }

    // da_prev = dz * W
    Matrix da(n, in_dim);
    for (int i = 0; i < n; ++i) {
      const double* dzi = dz.row(i);
      double* dai = da.row(i);
      for (int o = 0; o < out_dim; ++o) {
        const double d = dzi[o];
        if (d == 0.0) continue;
        const double* wo = layer.w.row(o);
        for (int k = 0; k < in_dim; ++k) dai[k] += d * wo[k];
      }
    }

    if (l > 0) {
      // chain through the tanh of the previous layer
      const Matrix& a = cache.activations[l - 1];
      for (std::size_t i = 0; i < da.data.size(); ++i)
        da.data[i] *= 1.0 - a.data[i] * a.data[i];
      dz = std::move(da);
    } else {
      g.input_grad = std::move(da);
    }
  }
  return g;
}

void adam_step(DenseNet& net, const Gradients& grads, AdamState& state) {
  check_shapes(net, grads.layers, "adam_step");
  check_shapes(net, state.m, "adam_step");
  state.step += 1;
  const double b1 = state.beta1, b2 = state.beta2;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step));

  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    auto update = [&](double& p, double& m, double& v, double grad) {
      m = b1 * m + (1.0 - b1) * grad;
      v = b2 * v + (1.0 - b2) * grad * grad;
      const double mhat = m / bc1;
      const double vhat = v / bc2;
      p -= state.learning_rate * mhat / (std::sqrt(vhat) + state.eps_adam);
    };
    Layer& layer = net.layers[l];
    const Layer& gl = grads.layers[l];
    Layer& ml = state.m[l];
    Layer& vl = state.v[l];
    for (std::size_t i = 0; i < layer.w.data.size(); ++i)
      update(layer.w.data[i], ml.w.data[i], vl.w.data[i], gl.w.data[i]);
    for (std::size_t i = 0; i < layer.b.size(); ++i)
      update(layer.b[i], ml.b[i], vl.b[i], gl.b[i]);
  }
}

void polyak_update(DenseNet& target, const DenseNet& source, double tau) {
  if (tau < 0.0 || tau > 1.0)
    throw std::invalid_argument("polyak_update: tau must be in [0,1]");
  check_shapes(target, source.layers, "polyak_update");
  if (target.out_act != source.out_act)
    throw DimensionError("polyak_update: output activation mismatch");
  for (std::size_t l = 0; l < target.layers.size(); ++l) {
    auto& tw = target.layers[l].w.data;
    const auto& sw = source.layers[l].w.data;
    for (std::size_t i = 0; i < tw.size(); ++i)
      tw[i] = tau * tw[i] + (1.0 - tau) * sw[i];
    auto& tb = target.layers[l].b;
    const auto& sb = source.layers[l].b;
    for (std::size_t i = 0; i < tb.size(); ++i)
      tb[i] = tau * tb[i] + (1.0 - tau) * sb[i];
  }
}

DenseNet init_net(const std::vector<int>& dims, OutputActivation out_act,
                  Rng& rng, double output_bias) {
  if (dims.size() < 2) throw std::invalid_argument("init_net: need >= 2 dims");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("init_net: dims must be >= 1");

  DenseNet net;
  net.out_act = out_act;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int in_dim = dims[l];
    const int out_dim = dims[l + 1];
    const bool is_last = l + 2 == dims.size();
    const double bound = 1.0 / std::sqrt(static_cast<double>(in_dim));
    const double scale = is_last ? 1e-3 : 1.0;
    Layer layer;
    layer.w = Matrix(out_dim, in_dim);
    for (double& w : layer.w.data) w = scale * rng.uniform(-bound, bound);
    layer.b.assign(out_dim, is_last ? output_bias : 0.0);
    net.layers.push_back(std::move(layer));
  }
  return net;
}

void save_net(const DenseNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_net: cannot open " + path);
  out << kMagic << "\n";
  out << (net.out_act == OutputActivation::tanh_bounded ? "tanh" : "linear")
      << "\n";
  out << net.layers.size() << "\n";
  char buf[32];
  for (const auto& layer : net.layers) {
    out << layer.w.rows << " " << layer.w.cols << "\n";
    for (double v : layer.w.data) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << "\n";
    }
    for (double v : layer.b) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << "\n";
    }
  }
  if (!out) throw std::runtime_error("save_net: write failed for " + path);
}

DenseNet load_net(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_net: cannot open " + path);
  std::string magic;
  std::getline(in, magic);
  if (magic != kMagic)
    throw std::runtime_error("load_net: bad magic header in " + path);
  std::string act;
  in >> act;
  DenseNet net;
  if (act == "tanh")
    net.out_act = OutputActivation::tanh_bounded;
  else if (act == "linear")
    net.out_act = OutputActivation::linear;
  else
    throw std::runtime_error("load_net: unknown activation " + act);
  std::size_t n_layers = 0;
  in >> n_layers;
  for (std::size_t l = 0; l < n_layers; ++l) {
    int rows = 0, cols = 0;
    in >> rows >> cols;
    if (!in || rows < 1 || cols < 1)
      throw std::runtime_error("load_net: corrupt shapes in " + path);
    Layer layer;
    layer.w = Matrix(rows, cols);
    for (double& v : layer.w.data) in >> v;
    layer.b.resize(rows);
    for (double& v : layer.b) in >> v;
    net.layers.push_back(std::move(layer));
  }
  if (!in) throw std::runtime_error("load_net: corrupt values in " + path);
  return net;
}

}  // namespace indigo::nn
