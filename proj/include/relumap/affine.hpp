#pragma once

#include <Eigen/Dense>

namespace relumap {

// x -> a.dot(x) + b
struct Affine {
  Eigen::VectorXd a;
  double b = 0.0;

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const { return a.dot(x) + b; }
};

}  // namespace relumap
