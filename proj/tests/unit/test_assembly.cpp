#include "e2vem/assembly.hpp"
#include "e2vem/errors.hpp"
#include "e2vem/meshgen.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace e2vem {
namespace {

TEST(Problems, ManufacturedDataSatisfiesThePde) {
  for (ProblemKind k : {ProblemKind::Poisson, ProblemKind::DiffusionReaction}) {
    EXPECT_LT(residual_check(sine_problem(k)), 1e-6) << to_string(k);
    EXPECT_LT(residual_check(linear_problem(k, 1.0, 2.0, -3.0)), 1e-6);
    EXPECT_LT(residual_check(zero_problem(k)), 1e-12);
  }
  EXPECT_EQ(parse_problem_kind("diffusion-reaction"), ProblemKind::DiffusionReaction);
  EXPECT_EQ(to_string(ProblemKind::DiffusionReaction), "diffreact");
  EXPECT_THROW((void)parse_problem_kind("heat"), Error);
  const ProblemSpec s = sine_problem(ProblemKind::Poisson);
  EXPECT_NEAR(s.f(Point(0.25, 0.25)), 8.0 * M_PI * M_PI, 1e-12);
  EXPECT_EQ(s.dirichlet(Point(0.0, 0.3)), 0.0);
}

TEST(Assembly, ConstantsAreInTheKernelBeforeElimination) {
  const PolygonalMesh m = make_mesh({MeshFamily::Honeycomb, 0, 6});
  const GlobalMatrices g = assemble_global(m, assign_degrees(m, {}), sine_problem(ProblemKind::Poisson));
  const Eigen::VectorXd r = g.matrix * Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m.num_vertices()));
  EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::MatrixXd dense(g.matrix);
  EXPECT_LT((dense - dense.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Assembly, SingleInteriorDofByHand) {
  std::vector<Point> v;
  for (int j = 0; j <= 2; ++j)
    for (int i = 0; i <= 2; ++i) v.emplace_back(0.5 * i, 0.5 * j);
  const PolygonalMesh m(v, {{0, 1, 4, 3}, {1, 2, 5, 4}, {3, 4, 7, 6}, {4, 5, 8, 7}});
  const ProblemSpec p = sine_problem(ProblemKind::Poisson);
  const DegreeAssignment d = assign_degrees(m, {});
  const LinearSystem sys = assemble(m, d, p);
  ASSERT_EQ(sys.num_dofs(), 1);
  EXPECT_EQ(sys.vertex_of_dof[0], 4);

  // hand elimination: the centre vertex sits at local position (2, 3, 1, 0)
  const int local_of_centre[] = {2, 3, 1, 0};
  double a = 0.0, b = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    const LocalMatrices lm = local_matrices(m.polygons()[c], d.l[c], p);
    const int i = local_of_centre[c];
    ASSERT_EQ(m.cells()[c][static_cast<std::size_t>(i)], 4);
    a += lm.stiffness(i, i);
    b += lm.load[i];
  }
  EXPECT_NEAR(sys.matrix.coeff(0, 0), a, 1e-14);
  EXPECT_NEAR(sys.rhs[0], b, 1e-14);
  const SolveResult r = solve(sys);
  EXPECT_NEAR(r.x[0], b / a, 1e-14);
}

TEST(Assembly, SolversOnHandMatrix) {
  LinearSystem sys;
  sys.matrix.resize(3, 3);
  std::vector<Eigen::Triplet<double>> t{{0, 0, 4}, {0, 1, 1}, {1, 0, 1}, {1, 1, 3}, {1, 2, 1}, {2, 1, 1}, {2, 2, 2}};
  sys.matrix.setFromTriplets(t.begin(), t.end());
  sys.rhs = Eigen::Vector3d(1, 2, 3);
  // inverse of [[4,1,0],[1,3,1],[0,1,2]] is [[5,-2,1],[-2,8,-4],[1,-4,11]] / 18
  const Eigen::Vector3d expected = Eigen::Vector3d(5 - 4 + 3, -2 + 16 - 12, 1 - 8 + 33) / 18.0;
  for (SolverKind k : {SolverKind::Cholesky, SolverKind::CG}) {
    const SolveResult r = solve(sys, {k, 1e-14, 0});
    EXPECT_LT((r.x - expected).norm(), 1e-13) << to_string(k);
    EXPECT_LT(r.stats.relative_residual, 1e-13);
  }
  EXPECT_EQ(parse_solver("cg"), SolverKind::CG);
  EXPECT_THROW((void)parse_solver("lu"), Error);

  sys.matrix.coeffRef(2, 2) = -5.0;
  try {
    (void)solve(sys);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSPD);
  }
}

TEST(Assembly, TriangleMeshMatchesLinearFem) {
  const PolygonalMesh m = make_mesh({MeshFamily::Triangulation, 0, 6});
  const ProblemSpec p = sine_problem(ProblemKind::Poisson);
  std::vector<std::array<int, 3>> tris;
  for (const auto& c : m.cells()) tris.push_back({c[0], c[1], c[2]});
  const oracle::P1Result fem = oracle::p1_fem(m.vertices(), tris, m.boundary_vertex_flags(), p.f, p.dirichlet);
  const GlobalMatrices g = assemble_global(m, assign_degrees(m, {}), p);
  EXPECT_LT((Eigen::MatrixXd(g.matrix) - fem.stiffness).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Assembly, CgAgreesWithCholesky) {
  const PolygonalMesh m = make_mesh({MeshFamily::Honeycomb, 0, 8});
  const ProblemSpec p = sine_problem(ProblemKind::DiffusionReaction);
  const DiscreteSolution a = solve_problem(m, {}, p, {}, {SolverKind::Cholesky});
  const DiscreteSolution b = solve_problem(m, {}, p, {}, {SolverKind::CG, 1e-12, 0});
  EXPECT_LE(b.stats.relative_residual, 1e-12);
  EXPECT_GT(b.stats.iterations, 1);
  EXPECT_LT((a.vertex_values - b.vertex_values).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Assembly, PatchTestOnPolygonalMeshes) {
  for (MeshFamily f : {MeshFamily::Honeycomb, MeshFamily::CutCornerOctagon, MeshFamily::ConcaveStar}) {
    const PolygonalMesh m = make_mesh({f, 0, 4, 0.3});
    for (ProblemKind k : {ProblemKind::Poisson, ProblemKind::DiffusionReaction}) {
      const ProblemSpec p = linear_problem(k, 1.0, 2.0, -3.0);
      const DiscreteSolution s = solve_problem(m, {}, p);
      for (std::size_t v = 0; v < m.num_vertices(); ++v)
        EXPECT_NEAR(s.vertex_values[static_cast<Eigen::Index>(v)], p.exact->value(m.vertices()[v]), 1e-10)
            << to_string(f) << " vertex " << v;
    }
  }
}

TEST(Assembly, InadmissibleDegreesAreRejected) {
  const PolygonalMesh m = make_mesh({MeshFamily::Honeycomb, 0, 6});
  try {
    (void)solve_problem(m, parse_strategy("fixed:1"), sine_problem(ProblemKind::Poisson));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InadmissibleDegrees);
    ASSERT_TRUE(e.cell().has_value());
    EXPECT_EQ(m.cells()[*e.cell()].size(), 6U);
  }
}

TEST(Assembly, ResultsIndependentOfThreadsAndCellOrder) {
  const PolygonalMesh m = make_mesh({MeshFamily::CutCornerOctagon, 0, 6});
  const ProblemSpec p = sine_problem(ProblemKind::Poisson);
  ::setenv("E2VEM_THREADS", "1", 1);
  const DiscreteSolution one = solve_problem(m, {}, p);
  ::setenv("E2VEM_THREADS", "5", 1);
  const DiscreteSolution five = solve_problem(m, {}, p);
  ::unsetenv("E2VEM_THREADS");
  EXPECT_EQ(one.vertex_values, five.vertex_values);

  std::vector<std::vector<int>> reversed(m.cells().rbegin(), m.cells().rend());
  const PolygonalMesh r(m.vertices(), reversed);
  const DiscreteSolution back = solve_problem(r, {}, p);
  EXPECT_LT((back.vertex_values - one.vertex_values).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Assembly, OutputFormats) {
  const PolygonalMesh m = make_mesh({MeshFamily::SquareGrid, 0, 2});
  const ProblemSpec p = zero_problem(ProblemKind::DiffusionReaction);
  const DiscreteSolution s = solve_problem(m, {}, p);
  EXPECT_EQ(s.vertex_values.norm(), 0.0);
  const std::string json = solution_to_json(m, s);
  EXPECT_NE(json.find("\"vertex_values\": [0, 0, 0"), std::string::npos) << json;
  EXPECT_NE(json.find("\"degrees\": [1, 1, 1, 1]"), std::string::npos) << json;

  std::ostringstream csv;
  dump_element_matrices(m, s.degrees, p, {}, csv);
  const std::string text = csv.str();
  EXPECT_EQ(text.rfind("cell,matrix,row,col,value\n", 0), 0U);
  EXPECT_NE(text.find("\n0,M0,0,0,"), std::string::npos);
  EXPECT_NE(text.find("\n3,F,3,0,0\n"), std::string::npos);
}

}  // namespace
}  // namespace e2vem
