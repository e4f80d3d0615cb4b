#pragma once

#include <cstdint>
#include <vector>

#include "relumap/network.hpp"

namespace relumap {

// Inputs of the minimum-neuron formula. gradient_bound is recorded metadata
// only; it never enters the arithmetic.
struct EstimatorInputs {
  double expected_regions = 0.0;   // target region count along the curve
  double curve_length = 0.0;
  int breakpoints_per_neuron = 1;  // 1 for ReLU
  double extra_regions = 0.0;      // regions contributed by randomness
  double gradient_bound = 1.0;

  void validate() const;
};

// ceil((expected_regions - extra_regions) / (curve_length * breakpoints_per_neuron))
long min_neurons(const EstimatorInputs& inputs);

// q >= (expected_regions - extra_regions) / (curve_length * breakpoints_per_neuron)
bool neuron_set_predicate(const EstimatorInputs& inputs, long q);

// Monte-Carlo breakpoint density over fresh initializations and random
// chords. Chords have the given length, a uniform center in [-1,1]^2 and a
// uniform direction; the reported ratio divides the per-unit-length
// breakpoint rate by the total neuron count.
struct DensityStats {
  double ratio_mean = 0.0;
  double ratio_std = 0.0;
  double density_mean = 0.0;             // breakpoints per unit length
  std::vector<double> per_seed_counts;   // mean breakpoints per chord, per seed

  std::string to_json() const;
};

DensityStats empirical_density(const NetSpec& spec, const InitScheme& scheme, int n_seeds,
                               int n_chords, double chord_length);

// Same measurement for one fixed network.
DensityStats empirical_density_of(const NetworkParams& params, std::uint64_t chord_seed,
                                  int n_chords, double chord_length);

// Mean squared input-gradient norm of hidden pre-activations at uniform
// random inputs in [-1,1]^input_dim.
double gradient_norm_statistic(const NetSpec& spec, const InitScheme& scheme, int n_samples);
double gradient_norm_statistic_of(const NetworkParams& params, std::uint64_t sample_seed,
                                  int n_samples);

}  // namespace relumap
