#include "e2vem/projectors.hpp"

#include "e2vem/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace e2vem {

namespace {

// Boundary sums of the Gauss-Green right-hand sides cancel heavily for high
// degree monomials on thin cells, so they are accumulated in extended precision.
using Wide = long double;
using WideMatrix = Eigen::Matrix<Wide, Eigen::Dynamic, Eigen::Dynamic>;
using WideVector = Eigen::Matrix<Wide, Eigen::Dynamic, 1>;

WideVector wide_monomials(const MonomialBasis& basis, const Point& x) {
  const int k = basis.degree();
  const Wide sx = (Wide(x.x()) - Wide(basis.center().x())) / Wide(basis.scale());
  const Wide sy = (Wide(x.y()) - Wide(basis.center().y())) / Wide(basis.scale());
  std::vector<Wide> px(static_cast<std::size_t>(k) + 1, 1.0L), py(static_cast<std::size_t>(k) + 1, 1.0L);
  for (std::size_t i = 1; i < px.size(); ++i) {
    px[i] = px[i - 1] * sx;
    py[i] = py[i - 1] * sy;
  }
  WideVector m(basis.dim());
  for (int a = 0; a < basis.dim(); ++a) {
    const Exponent e = MonomialBasis::exponent(a);
    m[a] = px[static_cast<std::size_t>(e.x)] * py[static_cast<std::size_t>(e.y)];
  }
  return m;
}

// (trace * (p_a . n)) integrated over the boundary, for every vector monomial a
// and every vertex hat function; the trace on edge i -> i+1 is (1 - t, t).
WideMatrix boundary_normal_moments(const Polygon& poly, const VectorMonomialBasis& vb) {
  const auto nv = static_cast<Eigen::Index>(poly.num_vertices());
  const int ns = vb.scalar().dim();
  WideMatrix out = WideMatrix::Zero(vb.dim(), nv);
  const LineRule& rule = line_rule(vb.scalar().degree() + 1);
  const auto& edges = poly.edges();
  for (Eigen::Index e = 0; e < nv; ++e) {
    const Edge& edge = edges[static_cast<std::size_t>(e)];
    const Eigen::Index next = (e + 1) % nv;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Wide t = rule.points[q];
      const Wide w = Wide(rule.weights[q]) * Wide(edge.length);
      const WideVector m = wide_monomials(vb.scalar(), edge.a + rule.points[q] * (edge.b - edge.a));
      for (int c = 0; c < 2; ++c) {
        const auto rows = Eigen::seqN(c * ns, ns);
        out(rows, e) += (w * (1.0L - t) * Wide(edge.normal[c])) * m;
        out(rows, next) += (w * t * Wide(edge.normal[c])) * m;
      }
    }
  }
  return out;
}

// Div(a, d): coefficient of m_d in div p_a, d in P_{max(l-1,0)}.
Eigen::MatrixXd divergence_matrix(const VectorMonomialBasis& vb) {
  const int nd = dim_poly(std::max(vb.scalar().degree() - 1, 0));
  Eigen::MatrixXd div(vb.dim(), nd);
  for (int a = 0; a < vb.dim(); ++a) div.row(a) = divergence_coefficients(vb, a).transpose();
  return div;
}

// Householder QR of the weighted Vandermonde matrix sqrt(w_q) m_a(x_q). Forming
// H_l and factoring it squares the condition number; on thin or deeply dented
// cells at l >= 3 that costs several digits, so solves go through R instead.
WideMatrix gram_factor(const Polygon& poly, const MonomialBasis& basis) {
  const QuadratureRule rule = polygon_rule(poly, 2 * basis.degree());
  const int n = basis.dim();
  WideMatrix v(static_cast<Eigen::Index>(rule.size()), n);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    if (!(rule.weights[q] > 0.0)) throw Error(ErrorCode::SingularSystem, "non-positive quadrature weight");
    v.row(static_cast<Eigen::Index>(q)) = std::sqrt(Wide(rule.weights[q])) * wide_monomials(basis, rule.nodes[q]).transpose();
  }
  Eigen::HouseholderQR<WideMatrix> qr(v);
  WideMatrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i)
    if (r(i, i) == 0.0L) throw Error(ErrorCode::SingularSystem, "vector monomial Gram matrix is singular");
  return r;
}

Eigen::MatrixXd block_gram(const Eigen::MatrixXd& r) {
  const Eigen::Index n = r.rows();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  const Eigen::MatrixXd h = r.transpose() * r;
  g.topLeftCorner(n, n) = h;
  g.bottomRightCorner(n, n) = h;
  return g;
}

// R^{-T} applied blockwise to a [P_l]^2 right-hand side.
template <typename M>
M half_solve(const M& r, const M& rhs) {
  const Eigen::Index n = r.rows();
  M s(rhs.rows(), rhs.cols());
  const auto rt = r.transpose().template triangularView<Eigen::Lower>();
  s.topRows(n) = rt.solve(rhs.topRows(n));
  s.bottomRows(n) = rt.solve(rhs.bottomRows(n));
  return s;
}

WideMatrix full_solve(const WideMatrix& r, const WideMatrix& rhs) {
  const Eigen::Index n = r.rows();
  WideMatrix s = half_solve(r, rhs);
  const auto up = r.triangularView<Eigen::Upper>();
  s.topRows(n) = up.solve(s.topRows(n));
  s.bottomRows(n) = up.solve(s.bottomRows(n));
  return s;
}

}  // namespace

Eigen::MatrixXd compute_pinabla(const Polygon& poly) {
  const auto nv = static_cast<Eigen::Index>(poly.num_vertices());
  const MonomialBasis basis = MonomialBasis::for_polygon(poly, 1);
  const double h = basis.scale();
  const double perim = poly.perimeter();
  const auto& edges = poly.edges();

  // Row 0 imposes P0(Pi u - u) = 0 with P0 the boundary mean; rows 1-2 are the
  // H1 orthogonality against x and y.
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, nv);
  const LineRule& rule = line_rule(1);
  for (Eigen::Index e = 0; e < nv; ++e) {
    const Edge& edge = edges[static_cast<std::size_t>(e)];
    const Eigen::Index next = (e + 1) % nv;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double t = rule.points[q];
      const double w = rule.weights[q] * edge.length;
      g.row(0) += (w / perim) * basis.evaluate(edge.a + t * (edge.b - edge.a)).transpose();
      b(0, e) += w * (1.0 - t) / perim;
      b(0, next) += w * t / perim;
      for (int c = 0; c < 2; ++c) {
        b(1 + c, e) += w * (1.0 - t) * edge.normal[c] / h;
        b(1 + c, next) += w * t * edge.normal[c] / h;
      }
    }
  }
  g(1, 1) = poly.area() / (h * h);
  g(2, 2) = poly.area() / (h * h);

  Eigen::FullPivLU<Eigen::Matrix3d> lu(g);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularSystem, "P1 projection system is singular");
  return lu.solve(b);
}

GradientProjection compute_pigrad(const Polygon& poly, int l, const Eigen::MatrixXd& pi_nabla) {
  if (l < 0) throw Error(ErrorCode::InvalidArgument, "projection degree must be non-negative");
  const MomentTable moments = build_moment_table(poly, std::max(l, 1));
  const VectorMonomialBasis vb(moments.basis.with_degree(l));

  GradientProjection gp;
  gp.l = l;
  const WideMatrix factor = gram_factor(poly, vb.scalar());
  gp.factor = factor.cast<double>();
  gp.gram = block_gram(gp.factor);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(gp.factor).singularValues();
  gp.condition = std::pow(sv[0] / sv[sv.size() - 1], 2);

  // (grad phi_i, p_a) = int_dE phi_i p_a.n - (Pi^nabla phi_i, div p_a)
  const Eigen::MatrixXd div = divergence_matrix(vb);
  const Eigen::MatrixXd p1_moments = moments.H.topLeftCorner(3, div.cols());
  const Eigen::MatrixXd volume = div * p1_moments.transpose() * pi_nabla;
  WideMatrix rhs = boundary_normal_moments(poly, vb) - volume.cast<Wide>();
  // Constants have zero gradient, so the exact rows sum to zero. Far from the
  // origin the two terms above cancel to ~eps |x|, and the Gram solve would
  // amplify that residue; it is removed here and again after the solve.
  rhs.colwise() -= rhs.rowwise().mean();
  gp.rhs = rhs.cast<double>();
  gp.pi_grad = full_solve(factor, rhs).cast<double>();
  gp.pi_grad.colwise() -= gp.pi_grad.rowwise().mean();
  return gp;
}

Eigen::RowVectorXd compute_pizero(const Polygon& poly, const Eigen::MatrixXd& pi_nabla) {
  // Mean of m_0, m_1, m_2 over E.
  const MomentTable moments = build_moment_table(poly, 1);
  const Eigen::RowVector3d means = moments.H.row(0) / poly.area();
  return means * pi_nabla;
}

Eigen::MatrixXd compute_pione(const Polygon& poly, const Eigen::MatrixXd& pi_nabla,
                              const MomentTable& moments) {
  (void)poly;
  const Eigen::Matrix3d h1 = moments.block(1);
  // (phi_i, m_b) = (Pi^nabla phi_i, m_b) for b in P1, by the enhancement.
  const Eigen::MatrixXd rhs = h1 * pi_nabla;
  return Eigen::LLT<Eigen::Matrix3d>(h1).solve(rhs);
}

Eigen::VectorXd project_gradient_from_data(const Polygon& poly, int l, const ScalarField& trace,
                                           int trace_degree, const Eigen::VectorXd& moments) {
  const MomentTable table = build_moment_table(poly, std::max(l, 1));
  const VectorMonomialBasis vb(table.basis.with_degree(l));
  const Eigen::MatrixXd div = divergence_matrix(vb);
  if (moments.size() < div.cols() && l > 0)
    throw Error(ErrorCode::InvalidArgument, "need interior moments up to degree l-1");

  WideVector wide = WideVector::Zero(vb.dim());
  const int ns = vb.scalar().dim();
  const LineRule& rule = line_rule(trace_degree + l);
  for (const Edge& edge : poly.edges()) {
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Point x = edge.a + rule.points[q] * (edge.b - edge.a);
      const Wide w = Wide(rule.weights[q]) * Wide(edge.length) * Wide(trace(x));
      const WideVector m = wide_monomials(vb.scalar(), x);
      wide.head(ns) += (w * Wide(edge.normal.x())) * m;
      wide.tail(ns) += (w * Wide(edge.normal.y())) * m;
    }
  }
  if (l > 0) wide -= (div * moments.head(div.cols())).cast<Wide>();
  return full_solve(gram_factor(poly, vb.scalar()), wide).cast<double>();
}

ElementProjectors compute_element_projectors(const Polygon& poly, int l) {
  Eigen::MatrixXd pi_nabla = compute_pinabla(poly);
  GradientProjection grad = compute_pigrad(poly, l, pi_nabla);
  const MomentTable m1 = build_moment_table(poly, 1);
  Eigen::RowVectorXd pi_zero = (m1.H.row(0) / poly.area()) * pi_nabla;
  Eigen::MatrixXd pi_one = compute_pione(poly, pi_nabla, m1);
  return ElementProjectors{l, MonomialBasis::for_polygon(poly, 1), std::move(pi_nabla),
                           std::move(grad), std::move(pi_zero), std::move(pi_one)};
}

Eigen::MatrixXd local_stiffness(const ElementProjectors& proj) {
  const Eigen::MatrixXd s = half_solve(proj.grad.factor, proj.grad.rhs);
  Eigen::MatrixXd k = s.transpose() * s;
  return 0.5 * (k + k.transpose());
}

Eigen::MatrixXd local_stiffness(const Polygon& poly, int l) {
  return local_stiffness(compute_element_projectors(poly, l));
}

RankInfo stiffness_rank(const ElementProjectors& proj, const Eigen::MatrixXd& stiffness) {
  const Eigen::Index factor = std::max<Eigen::Index>(stiffness.rows(), proj.grad.gram.rows());
  return numerical_rank(stiffness, factor);
}

Eigen::MatrixXd local_reaction(const Polygon& poly, const Eigen::RowVectorXd& pi_zero) {
  return poly.area() * pi_zero.transpose() * pi_zero;
}

Eigen::VectorXd local_load(const Polygon& poly, const ElementProjectors& proj, const ScalarField& f,
                           LoadMode mode, int quad_degree) {
  if (quad_degree < 0) quad_degree = default_load_degree(proj.l);
  const QuadratureRule rule = polygon_rule(poly, quad_degree);
  if (mode == LoadMode::Mean) {
    const double total = rule.integrate(f);
    return total * proj.pi_zero.transpose();
  }
  Eigen::Vector3d fm = Eigen::Vector3d::Zero();
  for (std::size_t q = 0; q < rule.size(); ++q)
    fm += rule.weights[q] * f(rule.nodes[q]) * proj.p1_basis.evaluate(rule.nodes[q]);
  return proj.pi_one.transpose() * fm;
}

}  // namespace e2vem
