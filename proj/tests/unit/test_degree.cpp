#include "e2vem/degree.hpp"
#include "e2vem/errors.hpp"
#include "e2vem/meshgen.hpp"
#include "e2vem/polyspace.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <map>
#include <set>

namespace e2vem {
namespace {

TEST(Degree, Bounds) {
  const int hat[] = {0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9};
  const int check[] = {0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3};
  for (int n = 3; n <= 20; ++n) {
    EXPECT_EQ(ell_hat(n), hat[n - 3]) << n;
    EXPECT_EQ(ell_check(n), check[n - 3]) << n;
    EXPECT_LE(ell_check(n), ell_hat(n));
  }
  EXPECT_EQ(ell_hat(24), 11);
  EXPECT_EQ(ell_check(24), 4);
  EXPECT_THROW((void)ell_hat(2), Error);
  EXPECT_THROW((void)ell_check(2), Error);
}

TEST(Degree, BadPolynomialsOfSimpleShapes) {
  EXPECT_EQ(dim_badpoly(make_polygon(RegularSpec{6}), 1).dimension, 2);
  EXPECT_EQ(dim_badpoly(make_polygon(RegularSpec{3}), 0).dimension, 0);
  EXPECT_EQ(dim_badpoly(make_polygon(RandomConvexSpec{3, 8, 0.1}), 0).dimension, 0);
  const Polygon sq = build_polygon(std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_EQ(dim_badpoly(sq, 0).dimension, 0);
  EXPECT_EQ(dim_badpoly(sq, 1).dimension, 3);
}

TEST(Degree, BadPolynomialRankAgreesWithSimpsonOracle) {
  std::vector<std::vector<Point>> shapes{
      {{0, 0}, {1, 0}, {1, 1}, {0, 1}},
      polygon_points(RegularSpec{6}),
      polygon_points(RegularSpec{7}),
      polygon_points(SplitTriangleSpec{5}),
      polygon_points(ConcaveOctagonSpec{0.4, std::nullopt, 2}),
  };
  for (const auto& loop : shapes) {
    const Polygon p = build_polygon(loop);
    for (int l = 0; l <= 2; ++l) {
      const Eigen::MatrixXd d = oracle::badpoly_matrix_simpson(loop, l);
      const int expected = 2 * dim_poly(l) - oracle::rank(d);
      EXPECT_EQ(dim_badpoly(p, l).dimension, expected) << "N=" << loop.size() << " l=" << l;
    }
  }
}

TEST(Degree, HexagonBadSpaceIsTheRotationPair) {
  // For the regular hexagon B_1 is spanned by (x, y) and (y, -x) about the centre.
  const Polygon hex = make_polygon(RegularSpec{6});
  const BadPolySpace b = dim_badpoly(hex, 1);
  ASSERT_EQ(b.dimension, 2);
  // vector basis order: (1,0),(m_x,0),(m_y,0),(0,1),(0,m_x),(0,m_y)
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(6, 2);
  expected(1, 0) = 1.0;
  expected(5, 0) = 1.0;
  expected(2, 1) = 1.0;
  expected(4, 1) = -1.0;
  // each expected vector lies in span(b.basis)
  const Eigen::MatrixXd proj = b.basis * (b.basis.transpose() * b.basis).ldlt().solve(b.basis.transpose());
  EXPECT_LT((proj * expected - expected).norm(), 1e-10);
}

TEST(Degree, CorrectedUpperBound) {
  for (int n : {3, 4, 5, 6, 8, 12}) {
    const Polygon p = make_polygon(RandomConvexSpec{n, 31, 0.1});
    for (int l = 0; l <= 6; ++l) {
      const int dim = dim_badpoly(p, l).dimension;
      const int counting = dim_poly(l) * 2 - (n - 1);
      EXPECT_LE(dim, std::max(l * (l + 1), counting)) << n << " " << l;
      EXPECT_GE(dim, std::max(0, counting));
      if (2 * (l + 1) <= n - 1) {
        EXPECT_LE(dim, l * (l + 1));
      }
    }
  }
}

TEST(Degree, MinimalDegreeOfNamedPolygons) {
  EXPECT_EQ(min_admissible_l(make_polygon(RegularSpec{12})).l, 5);
  EXPECT_EQ(min_admissible_l(make_polygon(SplitTriangleSpec{9})).l, 4);
  EXPECT_EQ(min_admissible_l(make_polygon(ConcaveOctagonSpec{0.2, std::nullopt, 1})).l, 2);
  const DegreeEvidence ev = min_admissible_l(make_polygon(RegularSpec{6}), true);
  EXPECT_EQ(ev.l, 2);
  EXPECT_TRUE(ev.admissible());
  EXPECT_TRUE(ev.within_bounds());
  ASSERT_TRUE(ev.dim_badpoly.has_value());
  EXPECT_EQ(*ev.dim_badpoly, 7);
  // admissibility criterion (l+1)(l+2) - dim B_l >= N_V - 1 holds at the minimum
  EXPECT_GE(2 * dim_poly(ev.l) - *ev.dim_badpoly, ev.n_vertices - 1);
}

TEST(Degree, CertificateAgreesWithBadPolynomialCount) {
  for (int n = 3; n <= 12; ++n) {
    const Polygon p = make_polygon(RegularSpec{n});
    for (int l = ell_check(n); l <= ell_hat(n); ++l) {
      const DegreeEvidence ev = certify_degree(p, l, true);
      ASSERT_TRUE(ev.dim_badpoly.has_value());
      EXPECT_EQ(ev.admissible(), 2 * dim_poly(l) - *ev.dim_badpoly >= n - 1) << n << " " << l;
    }
  }
}

TEST(Degree, MinimalDegreeIsSimilarityInvariant) {
  const Polygon p = make_polygon(SplitHexagonSpec{7});
  const Polygon q = transform_polygon(p, 1e-2, -0.8, Point(3.0, 1.0));
  EXPECT_EQ(min_admissible_l(p).l, min_admissible_l(q).l);
  EXPECT_EQ(congruence_key(p), congruence_key(q));
  EXPECT_NE(congruence_key(p), congruence_key(make_polygon(SplitHexagonSpec{8})));
}

TEST(Degree, StrategyParsing) {
  EXPECT_EQ(parse_strategy("minimal").kind, StrategyKind::Minimal);
  EXPECT_EQ(parse_strategy("ell_hat").kind, StrategyKind::EllHat);
  EXPECT_EQ(parse_strategy("ell-check").kind, StrategyKind::EllCheck);
  const DegreeStrategy f = parse_strategy("fixed:3");
  EXPECT_EQ(f.kind, StrategyKind::Fixed);
  EXPECT_EQ(f.fixed_l, 3);
  EXPECT_EQ(to_string(f), "fixed:3");
  for (const char* bad : {"", "fixed", "fixed:-1", "fixed:x", "maximal"}) EXPECT_THROW((void)parse_strategy(bad), Error) << bad;
}

TEST(Degree, AssignmentsOnMeshes) {
  const PolygonalMesh tri = make_mesh({MeshFamily::Triangulation, 0, 4});
  for (const char* s : {"minimal", "ell-hat", "ell-check"}) {
    const DegreeAssignment a = assign_degrees(tri, parse_strategy(s));
    EXPECT_EQ(a.max_degree(), 0) << s;
    EXPECT_TRUE(a.admissible());
  }

  const PolygonalMesh cut = make_mesh({MeshFamily::CutCornerOctagon, 0, 4});
  const DegreeAssignment a = assign_degrees(cut, {});
  std::map<std::size_t, std::set<int>> by_size;
  for (std::size_t c = 0; c < cut.num_cells(); ++c) by_size[cut.cells()[c].size()].insert(a.l[c]);
  EXPECT_EQ(by_size[3], std::set<int>{0});
  EXPECT_EQ(by_size[4], std::set<int>{1});
  EXPECT_EQ(by_size[8], std::set<int>{2});

  const PolygonalMesh hc = make_mesh({MeshFamily::Honeycomb, 0, 6});
  const DegreeAssignment hat = assign_degrees(hc, parse_strategy("ell-hat"));
  const DegreeAssignment low = assign_degrees(hc, parse_strategy("fixed:1"));
  EXPECT_TRUE(hat.admissible());
  EXPECT_FALSE(low.admissible());
  for (std::size_t c = 0; c < hc.num_cells(); ++c)
    if (hc.cells()[c].size() == 6) {
      EXPECT_EQ(hat.l[c], 2);
      EXPECT_FALSE(low.evidence[c].admissible());
    }
}

TEST(Degree, CacheAndThreadsDoNotChangeResults) {
  const PolygonalMesh mesh = make_mesh({MeshFamily::ConcaveStar, 0, 6, 0.3});
  ::setenv("E2VEM_THREADS", "1", 1);
  const DegreeAssignment serial = assign_degrees(mesh, {});
  ::setenv("E2VEM_THREADS", "4", 1);
  DegreeCache cache;
  const DegreeAssignment threaded = assign_degrees(mesh, {}, &cache);
  const DegreeAssignment cached = assign_degrees(mesh, {}, &cache);
  ::unsetenv("E2VEM_THREADS");
  EXPECT_EQ(serial.l, threaded.l);
  EXPECT_EQ(serial.l, cached.l);
  EXPECT_GT(cache.size(), 0U);
  EXPECT_LT(cache.size(), mesh.num_cells());
}

TEST(Degree, FixedDegreeRange) {
  EXPECT_EQ(parse_strategy("fixed:30").fixed_l, 30);
  try {
    (void)parse_strategy("fixed:31");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

}  // namespace
}  // namespace e2vem
