#include "relumap/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "relumap/regions.hpp"
#include "relumap/rng.hpp"

namespace relumap {

void EstimatorInputs::validate() const {
  if (!(curve_length > 0.0)) throw std::invalid_argument("EstimatorInputs: curve_length must be > 0");
  if (breakpoints_per_neuron < 1)
    throw std::invalid_argument("EstimatorInputs: breakpoints_per_neuron must be >= 1");
  if (extra_regions < 0.0) throw std::invalid_argument("EstimatorInputs: extra_regions must be >= 0");
  if (!(expected_regions > extra_regions))
    throw std::invalid_argument("EstimatorInputs: expected_regions must exceed extra_regions");
}

namespace {

double neuron_ratio(const EstimatorInputs& inputs) {
  return (inputs.expected_regions - inputs.extra_regions) /
         (inputs.curve_length * inputs.breakpoints_per_neuron);
}

}  // namespace

long min_neurons(const EstimatorInputs& inputs) {
  inputs.validate();
  return static_cast<long>(std::ceil(neuron_ratio(inputs)));
}

bool neuron_set_predicate(const EstimatorInputs& inputs, long q) {
  inputs.validate();
  return static_cast<double>(q) >= neuron_ratio(inputs);
}

std::string DensityStats::to_json() const {
  std::string out;
  char buf[96];
  out += "{\n  \"ratio_mean\": ";
  std::snprintf(buf, sizeof(buf), "%.17g", ratio_mean);
  out += buf;
  out += ",\n  \"ratio_std\": ";
  std::snprintf(buf, sizeof(buf), "%.17g", ratio_std);
  out += buf;
  out += ",\n  \"density_mean\": ";
  std::snprintf(buf, sizeof(buf), "%.17g", density_mean);
  out += buf;
  out += ",\n  \"per_seed_counts\": [";
  for (std::size_t i = 0; i < per_seed_counts.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", per_seed_counts[i]);
    out += buf;
    if (i + 1 < per_seed_counts.size()) out += ", ";
  }
  out += "]\n}\n";
  return out;
}

namespace {

double mean_breakpoints_over_chords(const NetworkParams& params, Rng& rng, int n_chords,
                                    double chord_length) {
  double total = 0.0;
  for (int c = 0; c < n_chords; ++c) {
    const Eigen::Vector2d center(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Eigen::Vector2d dir(std::cos(angle), std::sin(angle));
    const Eigen::Vector2d a = center - 0.5 * chord_length * dir;
    const Eigen::Vector2d b = center + 0.5 * chord_length * dir;
    total += static_cast<double>(count_breakpoints_on_segment(params, a, b).breakpoints.size());
  }
  return total / n_chords;
}

DensityStats finish_density(std::vector<double> per_seed, int neuron_count, double chord_length) {
  DensityStats stats;
  stats.per_seed_counts = std::move(per_seed);
  const std::size_t n = stats.per_seed_counts.size();
  double sum = 0.0;
  for (double v : stats.per_seed_counts) sum += v;
  const double mean_count = sum / static_cast<double>(n);
  stats.density_mean = mean_count / chord_length;
  stats.ratio_mean = stats.density_mean / neuron_count;
  if (n > 1) {
    double ss = 0.0;
    for (double v : stats.per_seed_counts) {
      const double r = v / chord_length / neuron_count;
      ss += (r - stats.ratio_mean) * (r - stats.ratio_mean);
    }
    stats.ratio_std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return stats;
}

}  // namespace

DensityStats empirical_density(const NetSpec& spec, const InitScheme& scheme, int n_seeds,
                               int n_chords, double chord_length) {
  spec.validate();
  if (n_seeds < 1 || n_chords < 1)
    throw std::invalid_argument("empirical_density: need n_seeds >= 1 and n_chords >= 1");
  if (!(chord_length > 0.0)) throw std::invalid_argument("empirical_density: chord_length must be > 0");

  std::vector<double> per_seed;
  per_seed.reserve(static_cast<std::size_t>(n_seeds));
  for (int s = 0; s < n_seeds; ++s) {
    const NetworkParams params =
        init_network(spec, InitScheme{scheme.variant, mix_seed(scheme.seed, static_cast<std::uint64_t>(s))});
    Rng chord_rng(mix_seed(scheme.seed, 0x10000ull + static_cast<std::uint64_t>(s)));
    per_seed.push_back(mean_breakpoints_over_chords(params, chord_rng, n_chords, chord_length));
  }
  return finish_density(std::move(per_seed), spec.neuron_count(), chord_length);
}

DensityStats empirical_density_of(const NetworkParams& params, std::uint64_t chord_seed,
                                  int n_chords, double chord_length) {
  params.validate();
  if (n_chords < 1) throw std::invalid_argument("empirical_density_of: need n_chords >= 1");
  Rng chord_rng(chord_seed);
  std::vector<double> per_seed{
      mean_breakpoints_over_chords(params, chord_rng, n_chords, chord_length)};
  return finish_density(std::move(per_seed), params.spec.neuron_count(), chord_length);
}

double gradient_norm_statistic_of(const NetworkParams& params, std::uint64_t sample_seed,
                                  int n_samples) {
  params.validate();
  if (n_samples < 1) throw std::invalid_argument("gradient_norm_statistic: need n_samples >= 1");
  Rng rng(sample_seed);
  const int d = params.spec.input_dim;
  const int neurons = params.spec.neuron_count();
  Eigen::VectorXd x(d);
  double total = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    for (int i = 0; i < d; ++i) x(i) = rng.uniform(-1.0, 1.0);
    const AffineMap map = propagate_affine(params, activation_pattern(params, x));
    double acc = 0.0;
    for (const Eigen::MatrixXd& layer : map.layer_a) acc += layer.rowwise().squaredNorm().sum();
    total += acc / neurons;
  }
  return total / n_samples;
}

double gradient_norm_statistic(const NetSpec& spec, const InitScheme& scheme, int n_samples) {
  const NetworkParams params = init_network(spec, scheme);
  return gradient_norm_statistic_of(params, mix_seed(scheme.seed, 0xABCDull), n_samples);
}

}  // namespace relumap
