#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

namespace e2vem {

using Point = Eigen::Vector2d;

/// Straight edge from `a` to `b` with its outward unit normal.
struct Edge {
  Point a;
  Point b;
  double length = 0.0;
  Point normal = Point::Zero();
};

struct PolygonOptions {
  /// Reverse clockwise input instead of rejecting it.
  bool normalize_orientation = true;
};

/// Simple, star-shaped, counter-clockwise polygon with cached geometric data.
///
/// Instances are immutable; construct through build_polygon(). Collinear
/// consecutive vertices are allowed, so edges split into aligned pieces stay
/// separate edges.
class Polygon {
 public:
  [[nodiscard]] const std::vector<Point>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] std::size_t num_vertices() const noexcept { return vertices_.size(); }
  [[nodiscard]] const Point& vertex(std::size_t i) const { return vertices_[i]; }

  /// Edge i joins vertex i to vertex (i + 1) mod N.
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

  [[nodiscard]] double area() const noexcept { return area_; }
  [[nodiscard]] double diameter() const noexcept { return diameter_; }
  [[nodiscard]] double perimeter() const noexcept { return perimeter_; }
  [[nodiscard]] const Point& centroid() const noexcept { return centroid_; }
  /// Point of the kernel used as the centre of the scaled monomials and the fan.
  [[nodiscard]] const Point& star_center() const noexcept { return star_center_; }
  /// Vertices of the (convex) kernel of the polygon.
  [[nodiscard]] const std::vector<Point>& kernel() const noexcept { return kernel_; }

  /// Radius of the largest disc centred at star_center() inside the kernel.
  [[nodiscard]] double kernel_inradius() const noexcept { return kernel_inradius_; }
  [[nodiscard]] double min_edge_length() const noexcept;
  [[nodiscard]] bool is_convex(double tol = 1e-12) const noexcept;
  /// True when the input had to be reversed to become counter-clockwise.
  [[nodiscard]] bool reoriented() const noexcept { return reoriented_; }

 private:
  friend Polygon build_polygon(std::span<const Point>, PolygonOptions);
  Polygon() = default;

  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  std::vector<Point> kernel_;
  double area_ = 0.0;
  double diameter_ = 0.0;
  double perimeter_ = 0.0;
  double kernel_inradius_ = 0.0;
  Point centroid_ = Point::Zero();
  Point star_center_ = Point::Zero();
  bool reoriented_ = false;
};

/// Validates `points` and derives every cached quantity.
/// Throws Error{NotSimple | NotStarShaped | ClockwiseOrientation}.
Polygon build_polygon(std::span<const Point> points, PolygonOptions options = {});

inline Polygon build_polygon(const std::vector<Point>& points, PolygonOptions options = {}) {
  return build_polygon(std::span<const Point>(points.data(), points.size()), options);
}

/// Signed shoelace area of a closed vertex chain (positive when CCW).
double signed_area(std::span<const Point> points) noexcept;

/// Image of `poly` under x -> scale * R(angle) x + shift.
Polygon transform_polygon(const Polygon& poly, double scale, double angle, const Point& shift);

struct Triangle {
  Point a;
  Point b;
  Point c;
  [[nodiscard]] double signed_area() const noexcept;
};

/// Fan of triangles (x_C, x_i, x_{i+1}) around the star centre.
struct SubTriangulation {
  std::vector<Triangle> triangles;
  [[nodiscard]] double total_area() const noexcept;
};

SubTriangulation sub_triangulate(const Polygon& poly);

}  // namespace e2vem
