#pragma once

#include "e2vem/degree.hpp"
#include "e2vem/mesh.hpp"
#include "e2vem/problems.hpp"
#include "e2vem/projectors.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <iosfwd>
#include <string>
#include <vector>

namespace e2vem {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct AssemblyOptions {
  LoadMode load_mode = LoadMode::Mean;
  /// Quadrature exactness for load integrals; negative picks 2(l+1)+2 per cell.
  int load_degree = -1;
  /// When false, rank-deficient cells are assembled anyway (diagnostics only).
  bool enforce_admissibility = true;
};

struct LocalMatrices {
  Eigen::MatrixXd stiffness;
  Eigen::MatrixXd reaction;  // empty for Poisson
  Eigen::VectorXd load;
};

LocalMatrices local_matrices(const Polygon& poly, int l, const ProblemSpec& problem,
                             const AssemblyOptions& options = {});

/// Sum of the element contributions over every vertex, before boundary
/// elimination.
struct GlobalMatrices {
  SparseMatrix matrix;
  Eigen::VectorXd load;
};

GlobalMatrices assemble_global(const PolygonalMesh& mesh, const DegreeAssignment& degrees,
                               const ProblemSpec& problem, const AssemblyOptions& options = {});

/// Free (interior) unknowns after Dirichlet elimination.
struct LinearSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
  std::vector<int> dof_of_vertex;    // -1 on boundary vertices
  std::vector<int> vertex_of_dof;
  Eigen::VectorXd boundary_values;   // g at boundary vertices, 0 elsewhere

  [[nodiscard]] Eigen::Index num_dofs() const noexcept { return matrix.rows(); }
  /// Vertex values from free unknowns plus the boundary data.
  [[nodiscard]] Eigen::VectorXd expand(const Eigen::VectorXd& free_values) const;
};

/// Throws Error{InadmissibleDegrees} naming the first rank-deficient cell
/// unless options.enforce_admissibility is false.
LinearSystem assemble(const PolygonalMesh& mesh, const DegreeAssignment& degrees,
                      const ProblemSpec& problem, const AssemblyOptions& options = {});

enum class SolverKind { Cholesky, CG };
SolverKind parse_solver(const std::string& text);
std::string to_string(SolverKind kind);

struct SolverOptions {
  SolverKind kind = SolverKind::Cholesky;
  double tol = 1e-12;         // relative residual target for CG
  int max_iterations = 0;     // 0 means 10 * n
};

struct SolveStats {
  SolverKind kind = SolverKind::Cholesky;
  int iterations = 0;
  double relative_residual = 0.0;
};

struct SolveResult {
  Eigen::VectorXd x;
  SolveStats stats;
};

/// Sparse Cholesky or Jacobi-preconditioned CG. Throws Error{NotSPD} on a
/// Cholesky breakdown or when CG misses the tolerance.
SolveResult solve(const LinearSystem& system, const SolverOptions& options = {});

struct DiscreteSolution {
  Eigen::VectorXd vertex_values;
  DegreeAssignment degrees;
  double h = 0.0;
  std::size_t num_cells = 0;
  Eigen::Index num_dofs = 0;
  SolveStats stats;
};

DiscreteSolution solve_problem(const PolygonalMesh& mesh, const DegreeStrategy& strategy,
                               const ProblemSpec& problem, const AssemblyOptions& assembly = {},
                               const SolverOptions& solver = {}, DegreeCache* cache = nullptr);

/// {"mesh": name, "vertex_values": [...], "degrees": [...]} with 17-digit doubles.
std::string solution_to_json(const PolygonalMesh& mesh, const DiscreteSolution& solution);

/// CSV rows "cell,matrix,row,col,value" for K, M0 (reaction problems) and F.
void dump_element_matrices(const PolygonalMesh& mesh, const DegreeAssignment& degrees,
                           const ProblemSpec& problem, const AssemblyOptions& options,
                           std::ostream& out);

}  // namespace e2vem
