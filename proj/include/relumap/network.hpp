#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "relumap/affine.hpp"

namespace relumap {

struct NetSpec {
  int input_dim = 2;
  std::vector<int> hidden;  // neurons per hidden layer, in order
  int output_dim = 2;

  int neuron_count() const;
  int hidden_layer_count() const { return static_cast<int>(hidden.size()); }
  void validate() const;
  bool operator==(const NetSpec&) const = default;
};

enum class InitVariant {
  he_normal,      // weights N(0, 2/fan_in), biases zero
  uniform_fanin,  // weights and biases U[-1/sqrt(fan_in), +1/sqrt(fan_in)]
};

std::string to_string(InitVariant v);
InitVariant init_variant_from_string(const std::string& s);

struct InitScheme {
  InitVariant variant = InitVariant::he_normal;
  std::uint64_t seed = 0;
};

// Dense parameters of a fully-connected ReLU net: hidden layers followed by
// a linear (no activation) output layer.
struct NetworkParams {
  NetSpec spec;
  std::vector<Eigen::MatrixXd> weights;  // layer m: out x in
  std::vector<Eigen::VectorXd> biases;   // layer m: out

  void validate() const;  // shape chain and finiteness
};

// One entry per hidden neuron, layer-major; 1 means pre-activation > 0.
// Pre-activation exactly 0 counts as inactive.
using ActivationPattern = std::vector<std::uint8_t>;

std::string pattern_to_string(const ActivationPattern& p);
ActivationPattern pattern_from_string(const std::string& s);
std::uint64_t pattern_hash(const ActivationPattern& p);  // FNV-1a over the bits

// Pre-activation affine form of every hidden neuron plus the logits, all as
// functions of the network input, under a fixed activation pattern.
struct AffineMap {
  std::vector<Eigen::MatrixXd> layer_a;  // layer m: n_m x input_dim
  std::vector<Eigen::VectorXd> layer_b;  // layer m: n_m
  Eigen::MatrixXd out_a;                 // output_dim x input_dim
  Eigen::VectorXd out_b;

  Affine neuron(int layer, int index) const;
  Affine logit(int index) const;
};

double relu(double x);
double relu_grad(double x);

// Deterministic for a fixed (spec, scheme); draw order is layer by layer,
// weights row-major then biases.
NetworkParams init_network(const NetSpec& spec, const InitScheme& scheme);

Eigen::VectorXd forward(const NetworkParams& params, const Eigen::Ref<const Eigen::VectorXd>& x);

// Columns of x are samples. Optionally fills per-layer caches for backprop.
struct ForwardCache {
  std::vector<Eigen::MatrixXd> pre;   // per hidden layer: n_m x batch
  std::vector<Eigen::MatrixXd> post;  // relu(pre)
};
Eigen::MatrixXd forward_batch(const NetworkParams& params,
                              const Eigen::Ref<const Eigen::MatrixXd>& x,
                              ForwardCache* cache = nullptr);

ActivationPattern activation_pattern(const NetworkParams& params,
                                     const Eigen::Ref<const Eigen::VectorXd>& x);

AffineMap propagate_affine(const NetworkParams& params, const ActivationPattern& pattern);

}  // namespace relumap
