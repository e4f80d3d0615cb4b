#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "relumap/affine.hpp"

namespace relumap {

using Point2 = Eigen::Vector2d;

// Vertices in counter-clockwise order, no consecutive duplicates.
struct ConvexPolygon {
  std::vector<Point2> vertices;
};

// side_eps is a relative deadband factor: a vertex counts as on-line when
// |f(v)| < side_eps * (1 + |f.b| + |f.a| * radius), with radius the polygon's
// max vertex norm. merge_eps removes near-duplicate vertices; polygons whose
// area falls below min_area are dropped as numerical slivers.
struct GeomTolerance {
  double side_eps = 1e-10;
  double merge_eps = 1e-9;
  double min_area = 1e-12;
};

struct SplitResult {
  std::optional<ConvexPolygon> positive;  // closure of { f > 0 }
  std::optional<ConvexPolygon> negative;  // closure of { f <= 0 }
};

// Single-pass convex clip by the zero line of f. Vertices inside the deadband
// go to both children; children below min_area (or degenerate) come back
// absent. Children stay convex and CCW, and their areas sum to the parent's.
SplitResult split_polygon(const ConvexPolygon& poly, const Affine& f, const GeomTolerance& tol);

// Shoelace area; positive for CCW polygons.
double polygon_area(const ConvexPolygon& poly);

// Area centroid, nudged if the strict-inside test fails numerically.
Point2 interior_point(const ConvexPolygon& poly);

// Signed distance to the nearest edge line; positive strictly inside (CCW).
double min_edge_distance(const ConvexPolygon& poly, const Point2& p);

// Radius of the largest inscribed circle (Chebyshev radius).
double polygon_inradius(const ConvexPolygon& poly);

bool is_ccw_convex(const ConvexPolygon& poly, double eps = 1e-9);

// Root of f(t) = slope*t + intercept strictly inside (0,1). Slopes inside the
// deadband count as no root, as do endpoint values inside the deadband.
std::optional<double> segment_root(double slope, double intercept,
                                   const GeomTolerance& tol = GeomTolerance{});

ConvexPolygon make_rect(const Point2& lo, const Point2& hi);

}  // namespace relumap
