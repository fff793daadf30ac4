#include "e2vem/polyspace.hpp"

#include "e2vem/errors.hpp"
#include "e2vem/quadrature.hpp"

#include <Eigen/Cholesky>

#include <vector>

namespace e2vem {

MonomialBasis::MonomialBasis(Point center, double scale, int degree)
    : center_(std::move(center)), scale_(scale), degree_(degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative polynomial degree");
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "basis scale must be positive");
}

MonomialBasis MonomialBasis::for_polygon(const Polygon& poly, int degree) {
  return {poly.star_center(), poly.diameter(), degree};
}

Exponent MonomialBasis::exponent(int a) noexcept {
  int d = 0;
  while (dim_poly(d) <= a) ++d;
  const int py = a - dim_poly(d - 1);
  return {d - py, py};
}

int MonomialBasis::index(Exponent e) noexcept { return dim_poly(e.degree() - 1) + e.y; }

Eigen::VectorXd MonomialBasis::evaluate(const Point& x) const {
  const double sx = (x.x() - center_.x()) / scale_;
  const double sy = (x.y() - center_.y()) / scale_;
  std::vector<double> px(degree_ + 1, 1.0);
  std::vector<double> py(degree_ + 1, 1.0);
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * sx;
    py[i] = py[i - 1] * sy;
  }
  Eigen::VectorXd v(dim());
  int a = 0;
  for (int d = 0; d <= degree_; ++d)
    for (int j = 0; j <= d; ++j) v[a++] = px[d - j] * py[j];
  return v;
}

Eigen::MatrixX2d MonomialBasis::gradients(const Point& x) const {
  const double sx = (x.x() - center_.x()) / scale_;
  const double sy = (x.y() - center_.y()) / scale_;
  std::vector<double> px(degree_ + 1, 1.0);
  std::vector<double> py(degree_ + 1, 1.0);
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * sx;
    py[i] = py[i - 1] * sy;
  }
  Eigen::MatrixX2d g(dim(), 2);
  int a = 0;
  for (int d = 0; d <= degree_; ++d) {
    for (int j = 0; j <= d; ++j, ++a) {
      const int i = d - j;
      g(a, 0) = i > 0 ? i * px[i - 1] * py[j] / scale_ : 0.0;
      g(a, 1) = j > 0 ? j * px[i] * py[j - 1] / scale_ : 0.0;
    }
  }
  return g;
}

double MonomialBasis::evaluate(const Eigen::VectorXd& coeffs, const Point& x) const {
  return coeffs.dot(evaluate(x).head(coeffs.size()));
}

GradientCoefficients gradient_coefficients(const MonomialBasis& basis, int a) {
  const int n = dim_poly(std::max(basis.degree() - 1, 0));
  GradientCoefficients g{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  const Exponent e = MonomialBasis::exponent(a);
  if (e.x > 0) g.dx[MonomialBasis::index({e.x - 1, e.y})] = e.x / basis.scale();
  if (e.y > 0) g.dy[MonomialBasis::index({e.x, e.y - 1})] = e.y / basis.scale();
  return g;
}

Eigen::VectorXd divergence_coefficients(const VectorMonomialBasis& vbasis, int a) {
  const GradientCoefficients g = gradient_coefficients(vbasis.scalar(), vbasis.scalar_index(a));
  return vbasis.component(a) == 0 ? g.dx : g.dy;
}

MomentTable build_moment_table(const Polygon& poly, int k) {
  MomentTable t{MonomialBasis::for_polygon(poly, k), {}};
  const QuadratureRule rule = polygon_rule(poly, 2 * k);
  const int n = t.basis.dim();
  Eigen::MatrixXd V(static_cast<Eigen::Index>(rule.size()), n);
  for (std::size_t q = 0; q < rule.size(); ++q)
    V.row(static_cast<Eigen::Index>(q)) = t.basis.evaluate(rule.nodes[q]).transpose();
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.size()));
  t.H = V.transpose() * w.asDiagonal() * V;
  t.H = 0.5 * (t.H + t.H.transpose()).eval();
  if (Eigen::LLT<Eigen::MatrixXd>(t.H).info() != Eigen::Success)
    throw Error(ErrorCode::SingularSystem, "monomial Gram matrix is not positive definite");
  return t;
}

}  // namespace e2vem
