#pragma once

// Reference computations that share no code with the library: exact polygon
// moments from Green's theorem, Monte Carlo integration, a classical P1 FEM
// assembler and a Simpson-rule construction of the bad-polynomial functional.

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Vec2 = Eigen::Vector2d;
using Loop = std::vector<Vec2>;

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double shoelace(const Loop& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % p.size()];
    s += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * s;
}

/// Exact integral of x^a y^b over a CCW polygon. Green's theorem turns it into
/// the boundary integral of x^(a+1) y^b / (a+1) dy, and each edge term expands
/// binomially into integrals of t^k over [0, 1].
inline double monomial_integral(const Loop& p, int a, int b) {
  double s = 0.0;
  for (std::size_t e = 0; e < p.size(); ++e) {
    const Vec2& q0 = p[e];
    const Vec2& q1 = p[(e + 1) % p.size()];
    const double dx = q1.x() - q0.x();
    const double dy = q1.y() - q0.y();
    if (dy == 0.0) continue;
    double edge = 0.0;
    for (int i = 0; i <= a + 1; ++i)
      for (int j = 0; j <= b; ++j)
        edge += binomial(a + 1, i) * binomial(b, j) * std::pow(q0.x(), a + 1 - i) * std::pow(dx, i) *
                std::pow(q0.y(), b - j) * std::pow(dy, j) / (i + j + 1);
    s += dy * edge;
  }
  return s / (a + 1);
}

inline bool inside(const Loop& p, const Vec2& x) {
  bool in = false;
  for (std::size_t i = 0, j = p.size() - 1; i < p.size(); j = i++) {
    if ((p[i].y() > x.y()) != (p[j].y() > x.y()) &&
        x.x() < (p[j].x() - p[i].x()) * (x.y() - p[i].y()) / (p[j].y() - p[i].y()) + p[i].x())
      in = !in;
  }
  return in;
}

/// Hit-or-miss estimate over the bounding box, with a fixed seed.
inline double monte_carlo(const Loop& p, const std::function<double(const Vec2&)>& f,
                          std::size_t samples, std::uint64_t seed = 12345) {
  Vec2 lo = p.front();
  Vec2 hi = p.front();
  for (const auto& q : p) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> ux(lo.x(), hi.x());
  std::uniform_real_distribution<double> uy(lo.y(), hi.y());
  double s = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Vec2 x(ux(gen), uy(gen));
    if (inside(p, x)) s += f(x);
  }
  return s * (hi - lo).prod() / static_cast<double>(samples);
}

/// Classical linear finite elements on a triangle mesh with Dirichlet data.
/// Returns the nodal solution; the load uses the three-point edge-midpoint rule,
/// exact for quadratics, on f times each hat function.
struct P1Result {
  Eigen::MatrixXd stiffness;  // full matrix before elimination
  Eigen::VectorXd solution;
};

inline P1Result p1_fem(const std::vector<Vec2>& nodes, const std::vector<std::array<int, 3>>& tris,
                       const std::vector<bool>& boundary, const std::function<double(const Vec2&)>& f,
                       const std::function<double(const Vec2&)>& g) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (const auto& t : tris) {
    const Vec2& p0 = nodes[t[0]];
    const Vec2& p1 = nodes[t[1]];
    const Vec2& p2 = nodes[t[2]];
    const double area2 = (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
    const double area = 0.5 * std::abs(area2);
    const double bx[3] = {p1.y() - p2.y(), p2.y() - p0.y(), p0.y() - p1.y()};
    const double by[3] = {p2.x() - p1.x(), p0.x() - p2.x(), p1.x() - p0.x()};
    const Vec2 mids[3] = {0.5 * (p0 + p1), 0.5 * (p1 + p2), 0.5 * (p2 + p0)};
    // hat i at midpoint m: 1/2 on the two edges touching vertex i, 0 otherwise
    const double hat[3][3] = {{0.5, 0.0, 0.5}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) k(t[i], t[j]) += (bx[i] * bx[j] + by[i] * by[j]) / (4.0 * area);
      double s = 0.0;
      for (int m = 0; m < 3; ++m) s += f(mids[m]) * hat[i][m];
      b[t[i]] += area * s / 3.0;
    }
  }
  std::vector<int> free;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    if (boundary[static_cast<std::size_t>(v)])
      u[v] = g(nodes[static_cast<std::size_t>(v)]);
    else
      free.push_back(static_cast<int>(v));
  }
  const auto nf = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd a(nf, nf);
  Eigen::VectorXd r(nf);
  for (Eigen::Index i = 0; i < nf; ++i) {
    r[i] = b[free[i]];
    for (Eigen::Index v = 0; v < n; ++v)
      if (boundary[static_cast<std::size_t>(v)]) r[i] -= k(free[i], v) * u[v];
    for (Eigen::Index j = 0; j < nf; ++j) a(i, j) = k(free[i], free[j]);
  }
  const Eigen::VectorXd x = a.ldlt().solve(r);
  for (Eigen::Index i = 0; i < nf; ++i) u[free[i]] = x[i];
  return {k, u};
}

/// Bad-polynomial functional built from raw (unscaled, uncentred) monomials and
/// composite Simpson integration along each edge. Row i pairs p . n with
/// phi_i - P0 phi_i; columns run over (x^a y^b, 0) then (0, x^a y^b).
inline Eigen::MatrixXd badpoly_matrix_simpson(const Loop& p, int l, int panels = 64) {
  std::vector<std::pair<int, int>> mono;
  for (int d = 0; d <= l; ++d)
    for (int a = d; a >= 0; --a) mono.emplace_back(a, d - a);
  const int np = static_cast<int>(mono.size());
  const int nv = static_cast<int>(p.size());
  double perimeter = 0.0;
  for (int e = 0; e < nv; ++e) perimeter += (p[(e + 1) % nv] - p[e]).norm();

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(nv - 1, 2 * np);
  for (int i = 0; i < nv - 1; ++i) {
    const double len_prev = (p[i] - p[(i + nv - 1) % nv]).norm();
    const double len_next = (p[(i + 1) % nv] - p[i]).norm();
    const double mean = 0.5 * (len_prev + len_next) / perimeter;
    for (int e = 0; e < nv; ++e) {
      const Vec2 a = p[e];
      const Vec2 b = p[(e + 1) % nv];
      const Vec2 t = b - a;
      const double len = t.norm();
      const Vec2 nrm(t.y() / len, -t.x() / len);
      for (int k = 0; k <= 2 * panels; ++k) {
        const double s = static_cast<double>(k) / (2 * panels);
        const double w = (k == 0 || k == 2 * panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        const Vec2 x = a + s * t;
        double phi = 0.0;
        if (e == i) phi = 1.0 - s;
        if ((e + 1) % nv == i) phi = s;
        const double weight = w * len / (6.0 * panels) * (phi - mean);
        for (int c = 0; c < np; ++c) {
          const double m = std::pow(x.x(), mono[c].first) * std::pow(x.y(), mono[c].second);
          d(i, c) += weight * m * nrm.x();
          d(i, np + c) += weight * m * nrm.y();
        }
      }
    }
  }
  return d;
}

/// Rank by SVD with a plain relative tolerance.
inline int rank(const Eigen::MatrixXd& a, double rel_tol = 1e-9) {
  if (a.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

}  // namespace oracle
