#include "relumap/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "relumap/rng.hpp"

namespace relumap {

namespace {

// Maps the per-axis bounding box of the raw draws onto [-0.95, 0.95], keeping
// every point strictly inside the region-enumeration domain. Labels are
// assigned before this runs, so the map is class-preserving.
void rescale_to_domain(Eigen::Matrix2Xd& pts) {
  for (int axis = 0; axis < 2; ++axis) {
    const double lo = pts.row(axis).minCoeff();
    const double hi = pts.row(axis).maxCoeff();
    if (hi - lo < 1e-300) {
      pts.row(axis).setZero();
      continue;
    }
    pts.row(axis) = (pts.row(axis).array() - lo) * (1.9 / (hi - lo)) - 0.95;
  }
}

}  // namespace

void Dataset2D::validate() const {
  if (points.cols() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("Dataset2D: points/labels size mismatch");
  if (n_classes < 1) throw std::invalid_argument("Dataset2D: n_classes must be >= 1");
  for (int label : labels)
    if (label < 0 || label >= n_classes)
      throw std::invalid_argument("Dataset2D: label out of range");
  if (points.size() > 0 && (points.minCoeff() < -1.0 || points.maxCoeff() > 1.0))
    throw std::invalid_argument("Dataset2D: coordinates must lie in [-1,1]");
}

Dataset2D gen_random(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_random: n must be >= 1");
  Rng rng(seed);
  Dataset2D data;
  data.points.resize(2, n);
  data.labels.resize(n);
  data.n_classes = 2;
  for (int i = 0; i < n; ++i) {
    data.points(0, i) = rng.uniform(-1.0, 1.0);
    data.points(1, i) = rng.uniform(-1.0, 1.0);
    data.labels[i] = static_cast<int>(rng.below(2));
  }
  return data;
}

Dataset2D gen_moons(int n, double noise, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_moons: n must be >= 2");
  if (noise < 0.0) throw std::invalid_argument("gen_moons: noise must be >= 0");
  Rng rng(seed);
  const int n_outer = n - n / 2;
  const int n_inner = n / 2;

  Dataset2D data;
  data.points.resize(2, n);
  data.labels.resize(n);
  data.n_classes = 2;

  const auto arc_angle = [](int k, int count) {
    return count > 1 ? std::numbers::pi * k / (count - 1) : 0.0;
  };
  for (int k = 0; k < n_outer; ++k) {
    const double t = arc_angle(k, n_outer);
    data.points(0, k) = std::cos(t) + noise * rng.normal();
    data.points(1, k) = std::sin(t) + noise * rng.normal();
    data.labels[k] = 0;
  }
  for (int k = 0; k < n_inner; ++k) {
    const double t = arc_angle(k, n_inner);
    data.points(0, n_outer + k) = 1.0 - std::cos(t) + noise * rng.normal();
    data.points(1, n_outer + k) = 0.5 - std::sin(t) + noise * rng.normal();
    data.labels[n_outer + k] = 1;
  }
  rescale_to_domain(data.points);
  return data;
}

Dataset2D gen_gaussian_quantiles(int n, int n_classes, std::uint64_t seed) {
  if (n_classes < 1) throw std::invalid_argument("gen_gaussian_quantiles: n_classes must be >= 1");
  if (n < n_classes) throw std::invalid_argument("gen_gaussian_quantiles: need n >= n_classes");
  Rng rng(seed);

  Dataset2D data;
  data.points.resize(2, n);
  data.labels.resize(n);
  data.n_classes = n_classes;
  for (int i = 0; i < n; ++i) {
    data.points(0, i) = rng.normal();
    data.points(1, i) = rng.normal();
  }

  // Empirical quantile shells: rank by radius, then chop ranks into
  // n_classes equal bands. Guarantees balance within one sample.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ra = data.points.col(a).squaredNorm();
    const double rb = data.points.col(b).squaredNorm();
    return ra != rb ? ra < rb : a < b;
  });
  for (int rank = 0; rank < n; ++rank)
    data.labels[order[rank]] = static_cast<int>((static_cast<long long>(rank) * n_classes) / n);

  rescale_to_domain(data.points);
  return data;
}

std::string dataset_to_csv(const Dataset2D& data) {
  std::string out = "x,y,label\n";
  char buf[96];
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d\n", data.points(0, i), data.points(1, i),
                  data.labels[i]);
    out += buf;
  }
  return out;
}

Dataset2D dataset_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y,label", 0) != 0)
    throw std::invalid_argument("dataset_from_csv: missing x,y,label header");
  std::vector<double> xs, ys;
  std::vector<int> labels;
  int max_label = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x = 0.0, y = 0.0;
    int label = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%d", &x, &y, &label) != 3)
      throw std::invalid_argument("dataset_from_csv: bad row: " + line);
    xs.push_back(x);
    ys.push_back(y);
    labels.push_back(label);
    max_label = std::max(max_label, label);
  }
  Dataset2D data;
  data.points.resize(2, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    data.points(0, static_cast<Eigen::Index>(i)) = xs[i];
    data.points(1, static_cast<Eigen::Index>(i)) = ys[i];
  }
  data.labels = std::move(labels);
  data.n_classes = max_label + 1;
  data.validate();
  return data;
}

}  // namespace relumap
