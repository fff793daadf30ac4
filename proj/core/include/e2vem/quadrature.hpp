#pragma once

#include "e2vem/geometry.hpp"

#include <functional>
#include <vector>

namespace e2vem {

/// Nodes and weights on some integration domain, exact up to `exactness_degree`.
struct QuadratureRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
  int exactness_degree = 0;

  [[nodiscard]] std::size_t size() const noexcept { return weights.size(); }

  template <class F>
  [[nodiscard]] double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t q = 0; q < weights.size(); ++q) s += weights[q] * f(nodes[q]);
    return s;
  }
};

/// One-dimensional rule on [0, 1]; weights sum to 1.
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Largest polynomial degree any generated rule may be asked for.
inline constexpr int kMaxQuadratureDegree = 80;

/// n-point Gauss-Legendre rule mapped to [0, 1] (exact to degree 2n-1). Cached.
const LineRule& gauss_legendre(int n);

/// Gauss-Legendre rule with ceil((degree+1)/2) nodes on [0, 1].
const LineRule& line_rule(int degree);

/// Rule on the reference triangle {x, y >= 0, x + y <= 1}, exact to `degree`.
/// Collapsed Gauss product (Duffy map); weights are positive and sum to 1/2.
const QuadratureRule& reference_triangle_rule(int degree);

/// Rule on an arbitrary triangle.
QuadratureRule triangle_rule(const Triangle& tri, int degree);

/// Rule on the star-centred fan of `poly`, exact to `degree` on each triangle.
QuadratureRule polygon_rule(const Polygon& poly, int degree);

using ScalarField = std::function<double(const Point&)>;

double polygon_integrate(const Polygon& poly, const ScalarField& f, int degree);

/// Integral along the segment a -> b (arclength measure).
double edge_integrate(const Point& a, const Point& b, const ScalarField& f, int degree);
double edge_integrate(const Edge& e, const ScalarField& f, int degree);

}  // namespace e2vem
