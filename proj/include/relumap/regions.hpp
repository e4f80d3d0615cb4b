#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relumap/datasets.hpp"
#include "relumap/geometry.hpp"
#include "relumap/network.hpp"

namespace relumap {

// One convex cell on which the network is a single affine map. logit_affines
// is empty when the arrangement was cut only up to an intermediate layer.
struct LinearRegion {
  ConvexPolygon cell;
  ActivationPattern pattern;
  std::vector<Affine> logit_affines;  // one per output class
};

struct RegionArrangement {
  ConvexPolygon domain;
  std::vector<LinearRegion> regions;        // sorted by (centroid.y, centroid.x)
  std::vector<long> per_layer_counts;       // cell count after cutting with layers 1..m
  int layers_cut = 0;
};

struct EnumerateOptions {
  std::optional<int> up_to_layer;  // cut with layers 1..k only; default all
  GeomTolerance tol;
  long cell_cap = 1'000'000;       // abort threshold for runaway subdivisions
};

struct RegionCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Layer-by-layer subdivision of a 2D domain: each cell is split by the zero
// line of every neuron of the next layer (in declared order), restricted to
// the cell's activation prefix. Throws RegionCapError past opt.cell_cap.
RegionArrangement enumerate_regions(const NetworkParams& params, const ConvexPolygon& domain,
                                    const EnumerateOptions& opt = {});

// Independent oracle: number of distinct activation patterns over a
// resolution x resolution grid on [lo, hi]. Never exceeds the exact count.
long grid_pattern_oracle(const NetworkParams& params, const Point2& lo, const Point2& hi,
                         int resolution);

// Breakpoints of the network restricted to the segment a + t(b - a), t in
// [0,1]. Works for any input dimension.
struct LineScan {
  Eigen::VectorXd a, b;
  std::vector<double> breakpoints;  // strictly increasing, interior of (0,1)
  long count() const { return static_cast<long>(breakpoints.size()) + 1; }
};

LineScan count_breakpoints_on_segment(const NetworkParams& params,
                                      const Eigen::Ref<const Eigen::VectorXd>& a,
                                      const Eigen::Ref<const Eigen::VectorXd>& b,
                                      const GeomTolerance& tol = GeomTolerance{});

// Scans segments from the origin through uniformly drawn training points,
// extended to the boundary of [-1,1]^2.
struct LineScanSummary {
  std::vector<long> counts;
  std::vector<double> lengths;
  double mean_count = 0.0;
  double ratio_to_neurons = 0.0;
};

LineScanSummary scan_training_lines(const NetworkParams& params, const Dataset2D& data,
                                    int n_lines, std::uint64_t seed);

// Winning class per region plus the pieces of the decision boundary inside
// each cell (segments where the top two logit affines tie).
struct DecisionCell {
  int winner = 0;
  std::vector<std::pair<Point2, Point2>> boundary;
};

std::vector<DecisionCell> decision_cells(const RegionArrangement& arr);

// Region count <= 2^p.
bool upper_bound_check(const RegionArrangement& arr, int neuron_count);

// Region whose cell contains p (deepest by signed edge distance), or null.
const LinearRegion* find_region(const RegionArrangement& arr, const Point2& p);

}  // namespace relumap
