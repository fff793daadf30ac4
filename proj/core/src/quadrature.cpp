#include "e2vem/quadrature.hpp"

#include "e2vem/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

namespace e2vem {

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree)
    throw Error(ErrorCode::UnsupportedDegree,
                "quadrature degree " + std::to_string(degree) + " outside [0, " +
                    std::to_string(kMaxQuadratureDegree) + "]");
}

// Returns (P_n(x), P_n'(x)) via the three-term recurrence.
std::pair<double, double> legendre(int n, double x) noexcept {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

LineRule compute_gauss_legendre(int n) {
  LineRule r;
  r.points.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // [-1, 1] -> [0, 1]
    r.points[i] = 0.5 * (1.0 - x);
    r.points[n - 1 - i] = 0.5 * (1.0 + x);
    r.weights[i] = 0.5 * w;
    r.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) r.points[n / 2] = 0.5;
  return r;
}

template <class T, class Make>
const T& cached(std::map<int, std::unique_ptr<T>>& cache, std::mutex& mtx, int key, Make&& make) {
  std::lock_guard lock(mtx);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<T>(make())).first;
  return *it->second;
}

}  // namespace

const LineRule& gauss_legendre(int n) {
  if (n < 1 || n > kMaxQuadratureDegree)
    throw Error(ErrorCode::UnsupportedDegree, "Gauss-Legendre with " + std::to_string(n) + " nodes");
  static std::map<int, std::unique_ptr<LineRule>> cache;
  static std::mutex mtx;
  return cached(cache, mtx, n, [n] { return compute_gauss_legendre(n); });
}

const LineRule& line_rule(int degree) {
  check_degree(degree);
  return gauss_legendre(std::max(1, (degree + 2) / 2));
}

const QuadratureRule& reference_triangle_rule(int degree) {
  check_degree(degree);
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex mtx;
  return cached(cache, mtx, degree, [degree] {
    // x = u, y = v (1 - u); Jacobian (1 - u) raises the degree in u by one.
    const LineRule& ru = gauss_legendre(std::max(1, (degree + 3) / 2));
    const LineRule& rv = gauss_legendre(std::max(1, (degree + 2) / 2));
    QuadratureRule rule;
    rule.exactness_degree = degree;
    rule.nodes.reserve(ru.points.size() * rv.points.size());
    rule.weights.reserve(ru.points.size() * rv.points.size());
    for (std::size_t i = 0; i < ru.points.size(); ++i) {
      const double u = ru.points[i];
      for (std::size_t j = 0; j < rv.points.size(); ++j) {
        const double v = rv.points[j];
        rule.nodes.emplace_back(u, v * (1.0 - u));
        rule.weights.push_back(ru.weights[i] * rv.weights[j] * (1.0 - u));
      }
    }
    return rule;
  });
}

QuadratureRule triangle_rule(const Triangle& tri, int degree) {
  const QuadratureRule& ref = reference_triangle_rule(degree);
  const Point e1 = tri.b - tri.a;
  const Point e2 = tri.c - tri.a;
  const double jac = std::abs(e1.x() * e2.y() - e1.y() * e2.x());
  QuadratureRule rule;
  rule.exactness_degree = degree;
  rule.nodes.reserve(ref.size());
  rule.weights.reserve(ref.size());
  for (std::size_t q = 0; q < ref.size(); ++q) {
    rule.nodes.emplace_back(tri.a + ref.nodes[q].x() * e1 + ref.nodes[q].y() * e2);
    rule.weights.push_back(ref.weights[q] * jac);
  }
  return rule;
}

QuadratureRule polygon_rule(const Polygon& poly, int degree) {
  const QuadratureRule& ref = reference_triangle_rule(degree);
  const SubTriangulation fan = sub_triangulate(poly);
  QuadratureRule rule;
  rule.exactness_degree = degree;
  rule.nodes.reserve(ref.size() * fan.triangles.size());
  rule.weights.reserve(ref.size() * fan.triangles.size());
  for (const Triangle& tri : fan.triangles) {
    const Point e1 = tri.b - tri.a;
    const Point e2 = tri.c - tri.a;
    const double jac = e1.x() * e2.y() - e1.y() * e2.x();
    for (std::size_t q = 0; q < ref.size(); ++q) {
      rule.nodes.emplace_back(tri.a + ref.nodes[q].x() * e1 + ref.nodes[q].y() * e2);
      rule.weights.push_back(ref.weights[q] * jac);
    }
  }
  return rule;
}

double polygon_integrate(const Polygon& poly, const ScalarField& f, int degree) {
  return polygon_rule(poly, degree).integrate(f);
}

double edge_integrate(const Point& a, const Point& b, const ScalarField& f, int degree) {
  const LineRule& r = line_rule(degree);
  const double len = (b - a).norm();
  double s = 0.0;
  for (std::size_t q = 0; q < r.points.size(); ++q)
    s += r.weights[q] * f(a + r.points[q] * (b - a));
  return s * len;
}

double edge_integrate(const Edge& e, const ScalarField& f, int degree) {
  return edge_integrate(e.a, e.b, f, degree);
}

}  // namespace e2vem
