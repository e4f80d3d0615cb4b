#include "relumap/regions.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "relumap/rng.hpp"

namespace relumap {

namespace {

struct Cell {
  ConvexPolygon poly;
  ActivationPattern bits;
  // Post-activation output of the last processed layer as a function of the
  // network input, valid on this cell.
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

Point2 centroid_of(const ConvexPolygon& poly) {
  const double area = polygon_area(poly);
  Point2 c = Point2::Zero();
  const auto& v = poly.vertices;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % n];
    c += (p + q) * (p.x() * q.y() - q.x() * p.y());
  }
  return c / (6.0 * area);
}

// Clips the zero line of f to the polygon; returns the chord endpoints.
std::optional<std::pair<Point2, Point2>> clip_line_to_polygon(const ConvexPolygon& poly,
                                                              const Affine& f,
                                                              const GeomTolerance& tol) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  const Point2 normal(f.a(0), f.a(1));
  double radius = 0.0;
  for (const Point2& p : v) radius = std::max(radius, p.norm());
  const double eps = tol.side_eps * (1.0 + std::abs(f.b) + normal.norm() * radius);

  std::vector<Point2> hits;
  std::vector<double> val(n);
  std::vector<int> side(n);
  for (std::size_t i = 0; i < n; ++i) {
    val[i] = normal.dot(v[i]) + f.b;
    side[i] = val[i] > eps ? 1 : (val[i] < -eps ? -1 : 0);
    if (side[i] == 0) hits.push_back(v[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (side[i] * side[j] < 0) {
      const double t = val[i] / (val[i] - val[j]);
      hits.push_back(v[i] + t * (v[j] - v[i]));
    }
  }
  if (hits.size() < 2) return std::nullopt;
  const Point2 dir(-normal.y(), normal.x());
  double lo = dir.dot(hits[0]), hi = lo;
  Point2 plo = hits[0], phi = hits[0];
  for (const Point2& h : hits) {
    const double s = dir.dot(h);
    if (s < lo) { lo = s; plo = h; }
    if (s > hi) { hi = s; phi = h; }
  }
  if ((phi - plo).norm() <= tol.merge_eps) return std::nullopt;
  return std::make_pair(plo, phi);
}

}  // namespace

RegionArrangement enumerate_regions(const NetworkParams& params, const ConvexPolygon& domain,
                                    const EnumerateOptions& opt) {
  params.validate();
  if (params.spec.input_dim != 2)
    throw std::invalid_argument("enumerate_regions: input_dim must be 2");
  if (!is_ccw_convex(domain)) throw std::invalid_argument("enumerate_regions: invalid domain");

  const int total_layers = params.spec.hidden_layer_count();
  int layers_to_cut = total_layers;
  if (opt.up_to_layer) layers_to_cut = std::clamp(*opt.up_to_layer, 0, total_layers);

  std::vector<Cell> cells;
  cells.push_back(Cell{domain, {}, Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2)});

  RegionArrangement arr;
  arr.domain = domain;
  arr.layers_cut = layers_to_cut;

  struct Piece {
    ConvexPolygon poly;
    ActivationPattern new_bits;
  };

  for (int m = 0; m < layers_to_cut; ++m) {
    const Eigen::MatrixXd& w = params.weights[m];
    const Eigen::VectorXd& bias = params.biases[m];
    const int n_m = static_cast<int>(w.rows());

    std::vector<Cell> next;
    next.reserve(cells.size() * 2);
    for (Cell& cell : cells) {
      // The layer's pre-activations are a fixed affine map of the input on
      // the whole parent cell; cuts within the layer do not change them.
      const Eigen::MatrixXd pre_a = w * cell.a;
      const Eigen::VectorXd pre_b = w * cell.b + bias;

      std::vector<Piece> pieces;
      pieces.push_back(Piece{std::move(cell.poly), {}});
      for (int i = 0; i < n_m; ++i) {
        const Affine f{pre_a.row(i).transpose(), pre_b(i)};
        std::vector<Piece> split_out;
        split_out.reserve(pieces.size() + 4);
        for (Piece& piece : pieces) {
          SplitResult sr = split_polygon(piece.poly, f, opt.tol);
          if (sr.positive) {
            ActivationPattern bits = piece.new_bits;
            bits.push_back(1);
            split_out.push_back(Piece{std::move(*sr.positive), std::move(bits)});
          }
          if (sr.negative) {
            ActivationPattern bits = std::move(piece.new_bits);
            bits.push_back(0);
            split_out.push_back(Piece{std::move(*sr.negative), std::move(bits)});
          }
        }
        pieces = std::move(split_out);
        if (static_cast<long>(next.size() + pieces.size()) > opt.cell_cap)
          throw RegionCapError("enumerate_regions: cell count exceeded cap " +
                               std::to_string(opt.cell_cap) + " at layer " + std::to_string(m + 1));
      }

      for (Piece& piece : pieces) {
        Cell child;
        child.poly = std::move(piece.poly);
        child.bits = cell.bits;
        child.bits.insert(child.bits.end(), piece.new_bits.begin(), piece.new_bits.end());
        child.a = pre_a;
        child.b = pre_b;
        for (int i = 0; i < n_m; ++i) {
          if (!piece.new_bits[i]) {
            child.a.row(i).setZero();
            child.b(i) = 0.0;
          }
        }
        next.push_back(std::move(child));
      }
    }
    cells = std::move(next);
    arr.per_layer_counts.push_back(static_cast<long>(cells.size()));
  }

  const bool full_depth = layers_to_cut == total_layers;
  arr.regions.reserve(cells.size());
  for (Cell& cell : cells) {
    LinearRegion region;
    region.cell = std::move(cell.poly);
    region.pattern = std::move(cell.bits);
    if (full_depth) {
      const Eigen::MatrixXd out_a = params.weights[total_layers] * cell.a;
      const Eigen::VectorXd out_b = params.weights[total_layers] * cell.b + params.biases[total_layers];
      for (int k = 0; k < params.spec.output_dim; ++k)
        region.logit_affines.push_back(Affine{out_a.row(k).transpose(), out_b(k)});
    }
    arr.regions.push_back(std::move(region));
  }

  std::sort(arr.regions.begin(), arr.regions.end(),
            [](const LinearRegion& lhs, const LinearRegion& rhs) {
              const Point2 cl = centroid_of(lhs.cell);
              const Point2 cr = centroid_of(rhs.cell);
              return cl.y() != cr.y() ? cl.y() < cr.y() : cl.x() < cr.x();
            });
  return arr;
}

long grid_pattern_oracle(const NetworkParams& params, const Point2& lo, const Point2& hi,
                         int resolution) {
  params.validate();
  if (params.spec.input_dim != 2)
    throw std::invalid_argument("grid_pattern_oracle: input_dim must be 2");
  if (resolution < 2) throw std::invalid_argument("grid_pattern_oracle: resolution must be >= 2");

  std::unordered_set<std::string> seen;
  Eigen::Vector2d x;
  for (int i = 0; i < resolution; ++i) {
    x(0) = lo.x() + (hi.x() - lo.x()) * i / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      x(1) = lo.y() + (hi.y() - lo.y()) * j / (resolution - 1);
      const ActivationPattern bits = activation_pattern(params, x);
      std::string key((bits.size() + 7) / 8, '\0');
      for (std::size_t t = 0; t < bits.size(); ++t)
        if (bits[t]) key[t / 8] |= static_cast<char>(1 << (t % 8));
      seen.insert(std::move(key));
    }
  }
  return static_cast<long>(seen.size());
}

LineScan count_breakpoints_on_segment(const NetworkParams& params,
                                      const Eigen::Ref<const Eigen::VectorXd>& a,
                                      const Eigen::Ref<const Eigen::VectorXd>& b,
                                      const GeomTolerance& tol) {
  params.validate();
  if (a.size() != params.spec.input_dim || b.size() != params.spec.input_dim)
    throw std::invalid_argument("count_breakpoints_on_segment: endpoint dimension mismatch");
  constexpr double kMergeEps = 1e-12;

  // Post-activation output of the processed layers restricted to the segment
  // is affine in t on each interval: h(t) = u * t + v.
  struct Interval {
    double t0, t1;
    Eigen::VectorXd u, v;
  };
  std::vector<Interval> intervals;
  intervals.push_back(Interval{0.0, 1.0, b - a, a});

  const int hidden = params.spec.hidden_layer_count();
  for (int m = 0; m < hidden; ++m) {
    const Eigen::MatrixXd& w = params.weights[m];
    const Eigen::VectorXd& bias = params.biases[m];
    std::vector<Interval> next;
    next.reserve(intervals.size());
    for (const Interval& iv : intervals) {
      const Eigen::VectorXd alpha = w * iv.u;
      const Eigen::VectorXd beta = w * iv.v + bias;
      const double span = iv.t1 - iv.t0;

      std::vector<double> roots;
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        // Rescale the neuron's pre-activation to the unit parameter of this
        // sub-interval before root finding.
        const double slope = alpha(i) * span;
        const double intercept = alpha(i) * iv.t0 + beta(i);
        if (const auto s = segment_root(slope, intercept, tol))
          roots.push_back(iv.t0 + *s * span);
      }
      std::sort(roots.begin(), roots.end());
      std::vector<double> cuts;
      for (double r : roots) {
        if (r - iv.t0 <= kMergeEps || iv.t1 - r <= kMergeEps) continue;
        if (!cuts.empty() && r - cuts.back() <= kMergeEps) continue;
        cuts.push_back(r);
      }

      double t_prev = iv.t0;
      for (std::size_t c = 0; c <= cuts.size(); ++c) {
        const double t_next = c < cuts.size() ? cuts[c] : iv.t1;
        const double t_mid = 0.5 * (t_prev + t_next);
        Interval sub;
        sub.t0 = t_prev;
        sub.t1 = t_next;
        sub.u = alpha;
        sub.v = beta;
        for (Eigen::Index i = 0; i < alpha.size(); ++i) {
          if (alpha(i) * t_mid + beta(i) <= 0.0) {
            sub.u(i) = 0.0;
            sub.v(i) = 0.0;
          }
        }
        next.push_back(std::move(sub));
        t_prev = t_next;
      }
    }
    intervals = std::move(next);
  }

  LineScan scan;
  scan.a = a;
  scan.b = b;
  for (std::size_t i = 1; i < intervals.size(); ++i) scan.breakpoints.push_back(intervals[i].t0);
  return scan;
}

LineScanSummary scan_training_lines(const NetworkParams& params, const Dataset2D& data,
                                    int n_lines, std::uint64_t seed) {
  params.validate();
  LineScanSummary summary;
  if (n_lines == 0) return summary;
  if (data.size() == 0)
    throw std::invalid_argument("scan_training_lines: dataset is empty");
  if (params.spec.input_dim != 2)
    throw std::invalid_argument("scan_training_lines: input_dim must be 2");

  Rng rng(seed);
  const Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  for (int k = 0; k < n_lines; ++k) {
    const Eigen::Index idx = static_cast<Eigen::Index>(rng.below(data.size()));
    const Eigen::Vector2d p = data.points.col(idx);
    const double extent = std::max(std::abs(p.x()), std::abs(p.y()));
    // Extend the ray from the origin through p until it leaves [-1,1]^2.
    const Eigen::Vector2d end = extent > 1e-15 ? (p / extent).eval() : p;
    const LineScan scan = count_breakpoints_on_segment(params, origin, end);
    summary.counts.push_back(scan.count());
    summary.lengths.push_back((end - origin).norm());
  }
  double total = 0.0;
  for (long c : summary.counts) total += static_cast<double>(c);
  summary.mean_count = total / static_cast<double>(summary.counts.size());
  summary.ratio_to_neurons = summary.mean_count / params.spec.neuron_count();
  return summary;
}

std::vector<DecisionCell> decision_cells(const RegionArrangement& arr) {
  std::vector<DecisionCell> out;
  out.reserve(arr.regions.size());
  const GeomTolerance tol;
  for (const LinearRegion& region : arr.regions) {
    if (region.logit_affines.empty())
      throw std::invalid_argument("decision_cells: arrangement lacks logit maps");
    const int k = static_cast<int>(region.logit_affines.size());
    const Point2 ip = interior_point(region.cell);

    DecisionCell cell;
    double best = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      const double value = region.logit_affines[c](ip);
      if (value > best) {
        best = value;
        cell.winner = c;
      }
    }

    double radius = 0.0;
    for (const Point2& p : region.cell.vertices) radius = std::max(radius, p.norm());
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const Affine& fi = region.logit_affines[i];
        const Affine& fj = region.logit_affines[j];
        Affine diff{fi.a - fj.a, fi.b - fj.b};
        // Identical affines tie everywhere: no boundary, ties go to i.
        if (diff.a.norm() * radius + std::abs(diff.b) < 1e-12) continue;
        const auto chord = clip_line_to_polygon(region.cell, diff, tol);
        if (!chord) continue;

        // Keep only the part of the chord where classes i and j are on top.
        double lo = 0.0, hi = 1.0;
        bool empty = false;
        for (int other = 0; other < k && !empty; ++other) {
          if (other == i || other == j) continue;
          const Affine& fo = region.logit_affines[other];
          const double phi0 = fi(chord->first) - fo(chord->first);
          const double phi1 = fi(chord->second) - fo(chord->second);
          const double slope = phi1 - phi0;
          if (std::abs(slope) < 1e-14) {
            if (phi0 < -1e-12) empty = true;
            continue;
          }
          const double root = -phi0 / slope;
          if (slope > 0.0)
            lo = std::max(lo, root);
          else
            hi = std::min(hi, root);
        }
        if (empty || hi - lo < 1e-9) continue;
        const Point2 dir = chord->second - chord->first;
        cell.boundary.emplace_back(chord->first + lo * dir, chord->first + hi * dir);
      }
    }
    out.push_back(std::move(cell));
  }
  return out;
}

bool upper_bound_check(const RegionArrangement& arr, int neuron_count) {
  if (neuron_count < 0) throw std::invalid_argument("upper_bound_check: negative neuron count");
  const long count = static_cast<long>(arr.regions.size());
  if (neuron_count >= 63) return true;  // cap keeps counts far below 2^63
  return count <= (1L << neuron_count);
}

const LinearRegion* find_region(const RegionArrangement& arr, const Point2& p) {
  const LinearRegion* best = nullptr;
  double best_depth = -std::numeric_limits<double>::infinity();
  for (const LinearRegion& region : arr.regions) {
    const double depth = min_edge_distance(region.cell, p);
    if (depth > best_depth) {
      best_depth = depth;
      best = &region;
    }
  }
  return best_depth > -1e-9 ? best : nullptr;
}

}  // namespace relumap
