#include "relumap/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace relumap {

namespace {

double polygon_radius(const ConvexPolygon& poly) {
  double r = 0.0;
  for (const Point2& p : poly.vertices) r = std::max(r, p.norm());
  return r;
}

double cross2(const Point2& u, const Point2& v) { return u.x() * v.y() - u.y() * v.x(); }

// Drops consecutive near-duplicates (wrap-around included) and rejects
// degenerate results.
std::optional<ConvexPolygon> finalize(std::vector<Point2> verts, const GeomTolerance& tol) {
  std::vector<Point2> out;
  out.reserve(verts.size());
  for (const Point2& p : verts) {
    if (out.empty() || (p - out.back()).norm() > tol.merge_eps) out.push_back(p);
  }
  while (out.size() >= 2 && (out.front() - out.back()).norm() <= tol.merge_eps) out.pop_back();
  if (out.size() < 3) return std::nullopt;
  ConvexPolygon poly{std::move(out)};
  if (polygon_area(poly) < tol.min_area) return std::nullopt;
  return poly;
}

}  // namespace

double polygon_area(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  double twice = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % n];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * twice;
}

bool is_ccw_convex(const ConvexPolygon& poly, double eps) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  if (n < 3) return false;
  const double scale = std::max(1.0, polygon_radius(poly));
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e1 = v[(i + 1) % n] - v[i];
    const Point2 e2 = v[(i + 2) % n] - v[(i + 1) % n];
    if (cross2(e1, e2) < -eps * scale * scale) return false;
  }
  return polygon_area(poly) > 0.0;
}

SplitResult split_polygon(const ConvexPolygon& poly, const Affine& f, const GeomTolerance& tol) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  if (n < 3) throw std::invalid_argument("split_polygon: polygon needs >= 3 vertices");
  if (f.a.size() != 2) throw std::invalid_argument("split_polygon: affine must be 2D");

  const Point2 normal(f.a(0), f.a(1));
  const double eps = tol.side_eps * (1.0 + std::abs(f.b) + normal.norm() * polygon_radius(poly));

  std::vector<double> val(n);
  std::vector<int> side(n);
  bool any_pos = false, any_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    val[i] = normal.dot(v[i]) + f.b;
    side[i] = val[i] > eps ? 1 : (val[i] < -eps ? -1 : 0);
    any_pos |= side[i] > 0;
    any_neg |= side[i] < 0;
  }

  SplitResult res;
  if (!any_pos) {
    // everything on-line or negative: the closed negative part is the polygon
    res.negative = poly;
    return res;
  }
  if (!any_neg) {
    res.positive = poly;
    return res;
  }

  std::vector<Point2> pos, neg;
  pos.reserve(n + 2);
  neg.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (side[i] >= 0) pos.push_back(v[i]);
    if (side[i] <= 0) neg.push_back(v[i]);
    if (side[i] * side[j] < 0) {
      const double t = val[i] / (val[i] - val[j]);
      const Point2 w = v[i] + t * (v[j] - v[i]);
      pos.push_back(w);
      neg.push_back(w);
    }
  }
  res.positive = finalize(std::move(pos), tol);
  res.negative = finalize(std::move(neg), tol);
  return res;
}

double min_edge_distance(const ConvexPolygon& poly, const Point2& p) {
  const auto& v = poly.vertices;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2 e = v[(i + 1) % n] - v[i];
    const double len = e.norm();
    if (len == 0.0) continue;
    best = std::min(best, cross2(e, p - v[i]) / len);
  }
  return best;
}

Point2 interior_point(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  const double area = polygon_area(poly);
  if (v.size() < 3 || area <= 0.0)
    throw std::invalid_argument("interior_point: degenerate polygon");

  Point2 c = Point2::Zero();
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % n];
    c += (p + q) * cross2(p, q);
  }
  c /= 6.0 * area;
  if (min_edge_distance(poly, c) > 0.0) return c;

  // Numerically flat polygon: pull the centroid toward the farthest edge
  // midpoint and keep whichever candidate sits deepest.
  Point2 far_mid = c;
  double far_d = -1.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2 mid = 0.5 * (v[i] + v[(i + 1) % n]);
    const double d = (mid - c).norm();
    if (d > far_d) {
      far_d = d;
      far_mid = mid;
    }
  }
  const Point2 alt = 0.5 * (c + far_mid);
  return min_edge_distance(poly, alt) > min_edge_distance(poly, c) ? alt : c;
}

double polygon_inradius(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  if (n < 3) return 0.0;

  // Chebyshev center: maximize r s.t. n_i . x - d_i >= r for the inward unit
  // normal n_i of every edge. The optimum sits at a basic solution with three
  // active constraints, so trying all edge triples is exact for this size.
  std::vector<Point2> normals(n);
  std::vector<double> offsets(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e = v[(i + 1) % n] - v[i];
    const Point2 inward = Point2(-e.y(), e.x()).normalized();
    normals[i] = inward;
    offsets[i] = inward.dot(v[i]);
  }
  const auto feasible = [&](const Point2& x, double r) {
    for (std::size_t i = 0; i < n; ++i)
      if (normals[i].dot(x) - offsets[i] < r - 1e-12) return false;
    return true;
  };
  double best = 0.0;
  Eigen::Matrix3d m;
  Eigen::Vector3d rhs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        m << normals[i].x(), normals[i].y(), -1.0,
             normals[j].x(), normals[j].y(), -1.0,
             normals[k].x(), normals[k].y(), -1.0;
        rhs << offsets[i], offsets[j], offsets[k];
        if (std::abs(m.determinant()) < 1e-14) continue;
        const Eigen::Vector3d sol = m.partialPivLu().solve(rhs);
        const Point2 x(sol(0), sol(1));
        const double r = sol(2);
        if (r > best && feasible(x, r)) best = r;
      }
  return best;
}

std::optional<double> segment_root(double slope, double intercept, const GeomTolerance& tol) {
  if (!std::isfinite(slope) || !std::isfinite(intercept))
    throw std::invalid_argument("segment_root: non-finite coefficients");
  if (std::abs(slope) < tol.side_eps * (1.0 + std::abs(intercept))) return std::nullopt;
  const double eps = tol.side_eps * (1.0 + std::abs(intercept) + std::abs(slope));
  const double f0 = intercept;
  const double f1 = slope + intercept;
  if (std::abs(f0) <= eps || std::abs(f1) <= eps) return std::nullopt;
  if ((f0 > 0.0) == (f1 > 0.0)) return std::nullopt;
  const double t = -intercept / slope;
  if (t <= 0.0 || t >= 1.0) return std::nullopt;
  return t;
}

ConvexPolygon make_rect(const Point2& lo, const Point2& hi) {
  if (!(lo.x() < hi.x() && lo.y() < hi.y()))
    throw std::invalid_argument("make_rect: lo must be strictly below hi");
  return ConvexPolygon{{lo, Point2(hi.x(), lo.y()), hi, Point2(lo.x(), hi.y())}};
}

}  // namespace relumap
