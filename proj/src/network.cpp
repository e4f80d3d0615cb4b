#include "relumap/network.hpp"

#include <cmath>
#include <stdexcept>

#include "relumap/rng.hpp"

namespace relumap {

int NetSpec::neuron_count() const {
  int n = 0;
  for (int h : hidden) n += h;
  return n;
}

void NetSpec::validate() const {
  if (input_dim < 1) throw std::invalid_argument("NetSpec: input_dim must be >= 1");
  if (output_dim < 1) throw std::invalid_argument("NetSpec: output_dim must be >= 1");
  for (int h : hidden)
    if (h < 1) throw std::invalid_argument("NetSpec: hidden sizes must be >= 1");
}

std::string to_string(InitVariant v) {
  return v == InitVariant::he_normal ? "he_normal" : "uniform_fanin";
}

InitVariant init_variant_from_string(const std::string& s) {
  if (s == "he_normal") return InitVariant::he_normal;
  if (s == "uniform_fanin") return InitVariant::uniform_fanin;
  throw std::invalid_argument("unknown init variant: " + s);
}

void NetworkParams::validate() const {
  spec.validate();
  const std::size_t layers = spec.hidden.size() + 1;
  if (weights.size() != layers || biases.size() != layers)
    throw std::invalid_argument("NetworkParams: layer count mismatch");
  int in = spec.input_dim;
  for (std::size_t m = 0; m < layers; ++m) {
    const int out = m < spec.hidden.size() ? spec.hidden[m] : spec.output_dim;
    if (weights[m].rows() != out || weights[m].cols() != in || biases[m].size() != out)
      throw std::invalid_argument("NetworkParams: shape mismatch at layer " + std::to_string(m));
    if (!weights[m].allFinite() || !biases[m].allFinite())
      throw std::invalid_argument("NetworkParams: non-finite entries at layer " + std::to_string(m));
    in = out;
  }
}

std::string pattern_to_string(const ActivationPattern& p) {
  std::string s(p.size(), '0');
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i]) s[i] = '1';
  return s;
}

ActivationPattern pattern_from_string(const std::string& s) {
  ActivationPattern p(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("pattern string must be 0/1");
    p[i] = s[i] == '1';
  }
  return p;
}

std::uint64_t pattern_hash(const ActivationPattern& p) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t bit : p) {
    h ^= bit;
    h *= 0x100000001b3ull;
  }
  return h;
}

Affine AffineMap::neuron(int layer, int index) const {
  return Affine{layer_a[layer].row(index).transpose(), layer_b[layer](index)};
}

Affine AffineMap::logit(int index) const {
  return Affine{out_a.row(index).transpose(), out_b(index)};
}

double relu(double x) { return x > 0.0 ? x : 0.0; }

double relu_grad(double x) { return x > 0.0 ? 1.0 : 0.0; }

NetworkParams init_network(const NetSpec& spec, const InitScheme& scheme) {
  spec.validate();
  NetworkParams params;
  params.spec = spec;
  Rng rng(scheme.seed);

  std::vector<int> dims;
  dims.reserve(spec.hidden.size() + 2);
  dims.push_back(spec.input_dim);
  dims.insert(dims.end(), spec.hidden.begin(), spec.hidden.end());
  dims.push_back(spec.output_dim);

  for (std::size_t m = 0; m + 1 < dims.size(); ++m) {
    const int fan_in = dims[m];
    const int out = dims[m + 1];
    Eigen::MatrixXd w(out, fan_in);
    Eigen::VectorXd b(out);
    if (scheme.variant == InitVariant::he_normal) {
      const double stddev = std::sqrt(2.0 / fan_in);
      for (int r = 0; r < out; ++r)
        for (int c = 0; c < fan_in; ++c) w(r, c) = stddev * rng.normal();
      b.setZero();
    } else {
      const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
      for (int r = 0; r < out; ++r)
        for (int c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-bound, bound);
      for (int r = 0; r < out; ++r) b(r) = rng.uniform(-bound, bound);
    }
    params.weights.push_back(std::move(w));
    params.biases.push_back(std::move(b));
  }
  return params;
}

Eigen::VectorXd forward(const NetworkParams& params, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != params.spec.input_dim)
    throw std::invalid_argument("forward: input dimension mismatch");
  Eigen::VectorXd h = x;
  const int hidden = params.spec.hidden_layer_count();
  for (int m = 0; m < hidden; ++m)
    h = ((params.weights[m] * h + params.biases[m]).array().max(0.0)).matrix();
  return params.weights[hidden] * h + params.biases[hidden];
}

Eigen::MatrixXd forward_batch(const NetworkParams& params,
                              const Eigen::Ref<const Eigen::MatrixXd>& x, ForwardCache* cache) {
  if (x.rows() != params.spec.input_dim)
    throw std::invalid_argument("forward_batch: input dimension mismatch");
  const int hidden = params.spec.hidden_layer_count();
  if (cache) {
    cache->pre.clear();
    cache->post.clear();
  }
  Eigen::MatrixXd h = x;
  for (int m = 0; m < hidden; ++m) {
    Eigen::MatrixXd pre = (params.weights[m] * h).colwise() + params.biases[m];
    h = pre.cwiseMax(0.0);
    if (cache) {
      cache->pre.push_back(std::move(pre));
      cache->post.push_back(h);
    }
  }
  return (params.weights[hidden] * h).colwise() + params.biases[hidden];
}

ActivationPattern activation_pattern(const NetworkParams& params,
                                     const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != params.spec.input_dim)
    throw std::invalid_argument("activation_pattern: input dimension mismatch");
  ActivationPattern bits;
  bits.reserve(params.spec.neuron_count());
  Eigen::VectorXd h = x;
  const int hidden = params.spec.hidden_layer_count();
  for (int m = 0; m < hidden; ++m) {
    Eigen::VectorXd pre = params.weights[m] * h + params.biases[m];
    for (Eigen::Index i = 0; i < pre.size(); ++i) bits.push_back(pre(i) > 0.0);
    h = pre.cwiseMax(0.0);
  }
  return bits;
}

AffineMap propagate_affine(const NetworkParams& params, const ActivationPattern& pattern) {
  params.validate();
  if (static_cast<int>(pattern.size()) != params.spec.neuron_count())
    throw std::invalid_argument("propagate_affine: pattern length mismatch");

  AffineMap map;
  const int d = params.spec.input_dim;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  int bit = 0;
  const int hidden = params.spec.hidden_layer_count();
  for (int m = 0; m < hidden; ++m) {
    Eigen::MatrixXd pre_a = params.weights[m] * a;
    Eigen::VectorXd pre_b = params.weights[m] * b + params.biases[m];
    map.layer_a.push_back(pre_a);
    map.layer_b.push_back(pre_b);
    a = std::move(pre_a);
    b = std::move(pre_b);
    for (Eigen::Index i = 0; i < a.rows(); ++i, ++bit) {
      if (!pattern[bit]) {
        a.row(i).setZero();
        b(i) = 0.0;
      }
    }
  }
  map.out_a = params.weights[hidden] * a;
  map.out_b = params.weights[hidden] * b + params.biases[hidden];
  return map;
}

}  // namespace relumap
