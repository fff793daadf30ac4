#include "e2vem/errors.hpp"
#include "e2vem/meshgen.hpp"
#include "e2vem/polyspace.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace e2vem {
namespace {

TEST(Polyspace, Dimensions) {
  EXPECT_EQ(dim_poly(-1), 0);
  EXPECT_EQ(dim_poly(0), 1);
  EXPECT_EQ(dim_poly(1), 3);
  EXPECT_EQ(dim_poly(4), 15);
  EXPECT_EQ(MonomialBasis({0, 0}, 1.0, 3).dim(), 10);
  EXPECT_EQ(VectorMonomialBasis(MonomialBasis({0, 0}, 1.0, 2)).dim(), 12);
}

TEST(Polyspace, GradedOrdering) {
  const int expected[][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};
  for (int a = 0; a < 10; ++a) {
    const Exponent e = MonomialBasis::exponent(a);
    EXPECT_EQ(e.x, expected[a][0]);
    EXPECT_EQ(e.y, expected[a][1]);
    EXPECT_EQ(MonomialBasis::index(e), a);
  }
}

TEST(Polyspace, Evaluation) {
  const MonomialBasis basis(Point(1.0, 2.0), 0.5, 2);
  const Eigen::VectorXd v = basis.evaluate(Point(1.5, 1.0));
  // scaled coordinates (1, -2)
  const double expected[] = {1, 1, -2, 1, -2, 4};  // sum 3
  for (int a = 0; a < 6; ++a) EXPECT_DOUBLE_EQ(v[a], expected[a]);
  EXPECT_DOUBLE_EQ(basis.evaluate(Eigen::VectorXd::Ones(6), Point(1.5, 1.0)), 3.0);
  const Eigen::VectorXd at_center = basis.evaluate(basis.center());
  EXPECT_DOUBLE_EQ(at_center[0], 1.0);
  EXPECT_DOUBLE_EQ(at_center.tail(5).norm(), 0.0);
}

TEST(Polyspace, GradientsMatchFiniteDifferences) {
  const MonomialBasis basis(Point(0.3, -0.1), 0.7, 4);
  const Point x(0.55, 0.2);
  const double step = 1e-6;
  const Eigen::MatrixX2d g = basis.gradients(x);
  const Eigen::VectorXd fx = (basis.evaluate(Point(x.x() + step, x.y())) - basis.evaluate(Point(x.x() - step, x.y()))) / (2 * step);
  const Eigen::VectorXd fy = (basis.evaluate(Point(x.x(), x.y() + step)) - basis.evaluate(Point(x.x(), x.y() - step))) / (2 * step);
  EXPECT_LT((g.col(0) - fx).norm(), 1e-8);
  EXPECT_LT((g.col(1) - fy).norm(), 1e-8);

  const MonomialBasis lower = basis.with_degree(3);
  for (int a = 0; a < basis.dim(); ++a) {
    const GradientCoefficients c = gradient_coefficients(basis, a);
    EXPECT_NEAR(lower.evaluate(c.dx, x), g(a, 0), 1e-12);
    EXPECT_NEAR(lower.evaluate(c.dy, x), g(a, 1), 1e-12);
  }
}

TEST(Polyspace, DivergenceMatchesFiniteDifferences) {
  const MonomialBasis scalar(Point(0.1, 0.4), 1.3, 3);
  const VectorMonomialBasis vbasis(scalar);
  const MonomialBasis lower = scalar.with_degree(2);
  const double step = 1e-5;
  for (const Point& x : {Point(0.0, 0.0), Point(0.7, -0.3), Point(-0.2, 1.1)}) {
    for (int a = 0; a < vbasis.dim(); ++a) {
      const int s = vbasis.scalar_index(a);
      const int comp = vbasis.component(a);
      const Point e = comp == 0 ? Point(step, 0) : Point(0, step);
      const double fd = (scalar.evaluate(x + e)[s] - scalar.evaluate(x - e)[s]) / (2 * step);
      EXPECT_NEAR(lower.evaluate(divergence_coefficients(vbasis, a), x), fd, 1e-8);
    }
  }
}

TEST(Polyspace, SquareMomentsByHand) {
  const Polygon sq = build_polygon(std::vector<Point>{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  const MomentTable t = build_moment_table(sq, 2);
  // h = 2 sqrt 2, m_(1,0) = x / h, so int m_(1,0)^2 = (4/3) / 8
  EXPECT_NEAR(t.H(0, 0), 4.0, 1e-14);
  EXPECT_NEAR(t.H(1, 1), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(t.H(2, 2), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(t.H(1, 2), 0.0, 1e-15);
  EXPECT_NEAR(t.H(0, 1), 0.0, 1e-15);
  EXPECT_EQ(t.block(1).rows(), 3);
  EXPECT_NEAR((t.H - t.H.transpose()).norm(), 0.0, 0.0);
}

TEST(Polyspace, MomentsMatchIndependentIntegrals) {
  const auto loop = polygon_points(ConcaveOctagonSpec{0.4, std::nullopt, 8});
  const Polygon poly = build_polygon(loop);
  const MomentTable t = build_moment_table(poly, 3);
  const Point c = t.basis.center();
  const double h = t.basis.scale();
  // Translate the loop so the basis centre sits at the origin; then
  // H(a, b) is a plain monomial integral divided by h^(|a| + |b|).
  oracle::Loop shifted;
  for (const auto& p : loop) shifted.push_back(p - c);
  for (int a = 0; a < t.basis.dim(); ++a)
    for (int b = 0; b < t.basis.dim(); ++b) {
      const Exponent ea = MonomialBasis::exponent(a);
      const Exponent eb = MonomialBasis::exponent(b);
      const double exact = oracle::monomial_integral(shifted, ea.x + eb.x, ea.y + eb.y) /
                           std::pow(h, ea.degree() + eb.degree());
      EXPECT_NEAR(t.H(a, b), exact, 1e-14);
    }
  const double mc = oracle::monte_carlo(loop, [&](const Point& x) { return t.basis.evaluate(x)[4]; }, 2'000'000);
  EXPECT_NEAR(t.H(0, 4), mc, 2e-3);
}

TEST(Polyspace, MomentTableScaleInvariant) {
  const Polygon p = make_polygon(RandomConvexSpec{6, 21, 0.1});
  const Polygon q = transform_polygon(p, 1e-3, 0.0, Point(5.0, 5.0));
  const Eigen::MatrixXd np = build_moment_table(p, 4).H / p.area();
  const Eigen::MatrixXd nq = build_moment_table(q, 4).H / q.area();
  EXPECT_LT((np - nq).cwiseAbs().maxCoeff(), 1e-10);

  // A rotation acts orthogonally on the linear block, so its trace survives.
  const Polygon r = transform_polygon(p, 1.0, 1.1, Point(0.0, 0.0));
  const Eigen::MatrixXd nr = build_moment_table(r, 1).H / r.area();
  EXPECT_NEAR(np.block(1, 1, 2, 2).trace(), nr.block(1, 1, 2, 2).trace(), 1e-12);
}

TEST(Polyspace, GramIsPositiveDefinite) {
  for (int n : {3, 6, 12, 20}) {
    const MomentTable t = build_moment_table(make_polygon(RegularSpec{n}), 8);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t.H);
    EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0) << n;
  }
}

TEST(Polyspace, InvalidArguments) {
  EXPECT_THROW(MonomialBasis(Point(0, 0), 1.0, -1), Error);
  EXPECT_THROW(MonomialBasis(Point(0, 0), 0.0, 1), Error);
}

}  // namespace
}  // namespace e2vem
