#include "e2vem/geometry.hpp"

#include "e2vem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace e2vem {

namespace {

double cross(const Point& u, const Point& v) noexcept { return u.x() * v.y() - u.y() * v.x(); }

// Sign of the turn a -> b -> c, zeroed below `tol`.
int orientation(const Point& a, const Point& b, const Point& c, double tol) noexcept {
  const double v = cross(b - a, c - a);
  if (v > tol) return 1;
  if (v < -tol) return -1;
  return 0;
}

bool on_segment(const Point& a, const Point& b, const Point& p, double tol) noexcept {
  return p.x() <= std::max(a.x(), b.x()) + tol && p.x() >= std::min(a.x(), b.x()) - tol &&
         p.y() <= std::max(a.y(), b.y()) + tol && p.y() >= std::min(a.y(), b.y()) - tol;
}

bool segments_touch(const Point& p1, const Point& p2, const Point& q1, const Point& q2,
                    double tol) noexcept {
  const int o1 = orientation(p1, p2, q1, tol);
  const int o2 = orientation(p1, p2, q2, tol);
  const int o3 = orientation(q1, q2, p1, tol);
  const int o4 = orientation(q1, q2, p2, tol);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  const double lt = std::sqrt(tol);
  if (o1 == 0 && on_segment(p1, p2, q1, lt)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2, lt)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1, lt)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2, lt)) return true;
  return false;
}

// Keeps the part of the convex polygon `poly` on the left of the line a -> b.
std::vector<Point> clip_left(const std::vector<Point>& poly, const Point& a, const Point& b) {
  std::vector<Point> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  const Point d = b - a;
  auto side = [&](const Point& p) { return cross(d, p - a); };
  for (std::size_t i = 0; i < n; ++i) {
    const Point& cur = poly[i];
    const Point& nxt = poly[(i + 1) % n];
    const double sc = side(cur);
    const double sn = side(nxt);
    if (sc >= 0.0) out.push_back(cur);
    if ((sc >= 0.0) != (sn >= 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

// Coordinates are taken relative to the first point so that small polygons far
// from the origin do not lose digits to cancellation.
Point area_centroid(std::span<const Point> pts, double area) {
  Point c = Point::Zero();
  const std::size_t n = pts.size();
  const Point& o = pts[0];
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = pts[i] - o;
    const Point q = pts[(i + 1) % n] - o;
    const double w = cross(p, q);
    c += (p + q) * w;
  }
  return o + c / (6.0 * area);
}

}  // namespace

double signed_area(std::span<const Point> points) noexcept {
  double a = 0.0;
  const std::size_t n = points.size();
  if (n == 0) return 0.0;
  const Point& o = points[0];
  for (std::size_t i = 0; i < n; ++i) a += cross(points[i] - o, points[(i + 1) % n] - o);
  return 0.5 * a;
}

Polygon build_polygon(std::span<const Point> points, PolygonOptions options) {
  const std::size_t n = points.size();
  if (n < 3) throw Error(ErrorCode::NotSimple, "a polygon needs at least 3 vertices");

  Polygon poly;
  poly.vertices_.assign(points.begin(), points.end());
  for (const Point& p : poly.vertices_) {
    if (!p.allFinite()) throw Error(ErrorCode::NotSimple, "non-finite vertex coordinate");
  }

  double diam = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      diam = std::max(diam, (poly.vertices_[i] - poly.vertices_[j]).norm());
  if (!(diam > 0.0)) throw Error(ErrorCode::NotSimple, "all vertices coincide");
  poly.diameter_ = diam;

  double area = signed_area(poly.vertices_);
  if (std::abs(area) <= 1e-14 * diam * diam)
    throw Error(ErrorCode::NotSimple, "polygon has zero area");
  if (area < 0.0) {
    if (!options.normalize_orientation)
      throw Error(ErrorCode::ClockwiseOrientation, "vertices are ordered clockwise");
    std::reverse(poly.vertices_.begin(), poly.vertices_.end());
    poly.reoriented_ = true;
    area = -area;
  }
  poly.area_ = area;

  const auto& v = poly.vertices_;
  const double len_tol = 1e-13 * diam;
  const double turn_tol = 1e-14 * diam * diam;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    const Point& c = v[(i + 2) % n];
    if ((b - a).norm() <= len_tol) throw Error(ErrorCode::NotSimple, "repeated vertex");
    // Consecutive edges folding back on each other.
    if (std::abs(cross(b - a, c - b)) <= turn_tol && (b - a).dot(c - b) < 0.0)
      throw Error(ErrorCode::NotSimple, "edge folds back onto its predecessor");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_touch(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n], turn_tol))
        throw Error(ErrorCode::NotSimple,
                    "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
  }

  poly.edges_.reserve(n);
  poly.perimeter_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Edge e;
    e.a = v[i];
    e.b = v[(i + 1) % n];
    const Point t = e.b - e.a;
    e.length = t.norm();
    e.normal = Point(t.y(), -t.x()) / e.length;
    poly.perimeter_ += e.length;
    poly.edges_.push_back(e);
  }

  poly.centroid_ = area_centroid(v, area);

  // Kernel: intersection of the left half-planes of all edges.
  Point lo = v[0];
  Point hi = v[0];
  for (const Point& p : v) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  std::vector<Point> ker{lo, Point(hi.x(), lo.y()), hi, Point(lo.x(), hi.y())};
  for (const Edge& e : poly.edges_) ker = clip_left(ker, e.a, e.b);
  const double ker_area = ker.size() >= 3 ? signed_area(ker) : 0.0;
  if (!(ker_area > 1e-12 * area))
    throw Error(ErrorCode::NotStarShaped, "polygon kernel is empty");
  poly.kernel_ = std::move(ker);

  auto min_line_distance = [&](const Point& x) {
    double d = std::numeric_limits<double>::infinity();
    for (const Edge& e : poly.edges_) d = std::min(d, -(x - e.a).dot(e.normal));
    return d;
  };
  if (min_line_distance(poly.centroid_) > 1e-10 * diam) {
    poly.star_center_ = poly.centroid_;
  } else {
    poly.star_center_ = area_centroid(poly.kernel_, ker_area);
  }
  poly.kernel_inradius_ = min_line_distance(poly.star_center_);
  if (!(poly.kernel_inradius_ > 0.0))
    throw Error(ErrorCode::NotStarShaped, "no interior kernel point found");
  return poly;
}

double Polygon::min_edge_length() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (const Edge& e : edges_) m = std::min(m, e.length);
  return m;
}

bool Polygon::is_convex(double tol) const noexcept {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[(i + 1) % n];
    const Point& c = vertices_[(i + 2) % n];
    if (cross(b - a, c - b) < -tol * diameter_ * diameter_) return false;
  }
  return true;
}

Polygon transform_polygon(const Polygon& poly, double scale, double angle, const Point& shift) {
  Eigen::Matrix2d rot;
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  std::vector<Point> pts;
  pts.reserve(poly.num_vertices());
  for (const Point& p : poly.vertices()) pts.emplace_back(scale * (rot * p) + shift);
  return build_polygon(pts);
}

double Triangle::signed_area() const noexcept { return 0.5 * cross(b - a, c - a); }

double SubTriangulation::total_area() const noexcept {
  double s = 0.0;
  for (const Triangle& t : triangles) s += t.signed_area();
  return s;
}

SubTriangulation sub_triangulate(const Polygon& poly) {
  SubTriangulation st;
  const std::size_t n = poly.num_vertices();
  st.triangles.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    st.triangles.push_back({poly.star_center(), poly.vertex(i), poly.vertex((i + 1) % n)});
  return st;
}

}  // namespace e2vem
