#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace relumap {

// Labeled 2D points; columns of `points` are samples, all inside [-1, 1]^2.
struct Dataset2D {
  Eigen::Matrix2Xd points;
  std::vector<int> labels;
  int n_classes = 2;

  Eigen::Index size() const { return points.cols(); }
  void validate() const;
};

// Points i.i.d. uniform on [-1,1]^2, labels i.i.d. uniform {0,1}.
Dataset2D gen_random(int n, std::uint64_t seed);

// Two interleaving half-circles (class 0 the upper arc, class 1 the shifted
// lower arc), Gaussian noise of the given std, then rescaled so the data
// bounding box maps to [-0.95, 0.95]^2. Classes balanced within 1.
Dataset2D gen_moons(int n, double noise, std::uint64_t seed);

// Isotropic 2D Gaussian draws labeled by empirical radial quantile shell
// (class 0 innermost), rescaled like gen_moons. Classes balanced within 1.
Dataset2D gen_gaussian_quantiles(int n, int n_classes, std::uint64_t seed);

// CSV with header "x,y,label".
std::string dataset_to_csv(const Dataset2D& data);
Dataset2D dataset_from_csv(const std::string& csv);

}  // namespace relumap
