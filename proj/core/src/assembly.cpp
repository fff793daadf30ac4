#include "e2vem/assembly.hpp"

#include "e2vem/errors.hpp"
#include "e2vem/mesh_io.hpp"
#include "e2vem/parallel.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include <nlohmann/json.hpp>

#include <ostream>

namespace e2vem {

LocalMatrices local_matrices(const Polygon& poly, int l, const ProblemSpec& problem,
                             const AssemblyOptions& options) {
  const ElementProjectors proj = compute_element_projectors(poly, l);
  LocalMatrices out;
  out.stiffness = local_stiffness(proj);
  if (problem.kind == ProblemKind::DiffusionReaction) out.reaction = local_reaction(poly, proj.pi_zero);
  out.load = local_load(poly, proj, problem.f, options.load_mode, options.load_degree);
  return out;
}

namespace {

void check_admissible(const DegreeAssignment& degrees, std::size_t num_cells) {
  if (degrees.l.size() != num_cells || degrees.evidence.size() != num_cells)
    throw Error(ErrorCode::InvalidArgument, "degree assignment does not match the mesh");
  const auto bad = degrees.inadmissible_cells();
  if (bad.empty()) return;
  const DegreeEvidence& ev = degrees.evidence[bad.front()];
  throw Error(ErrorCode::InadmissibleDegrees,
              std::to_string(bad.size()) + " cell(s) rank-deficient; first has N_V = " +
                  std::to_string(ev.n_vertices) + ", l = " + std::to_string(ev.l) + ", rank " +
                  std::to_string(ev.rank) + " < " + std::to_string(ev.n_vertices - 1),
              bad.front());
}

std::vector<LocalMatrices> all_local_matrices(const PolygonalMesh& mesh, const DegreeAssignment& degrees,
                                              const ProblemSpec& problem, const AssemblyOptions& options) {
  std::vector<LocalMatrices> locals(mesh.num_cells());
  parallel_for(mesh.num_cells(), [&](std::size_t c) {
    locals[c] = local_matrices(mesh.polygons()[c], degrees.l[c], problem, options);
  });
  return locals;
}

}  // namespace

GlobalMatrices assemble_global(const PolygonalMesh& mesh, const DegreeAssignment& degrees,
                               const ProblemSpec& problem, const AssemblyOptions& options) {
  if (options.enforce_admissibility) check_admissible(degrees, mesh.num_cells());
  const auto locals = all_local_matrices(mesh, degrees, problem, options);
  const auto nv = static_cast<Eigen::Index>(mesh.num_vertices());

  // Scatter in cell order so the floating-point sums never depend on threading.
  std::vector<Eigen::Triplet<double>> triplets;
  GlobalMatrices out;
  out.load = Eigen::VectorXd::Zero(nv);
  for (std::size_t c = 0; c < locals.size(); ++c) {
    const auto& cell = mesh.cells()[c];
    Eigen::MatrixXd k = locals[c].stiffness;
    if (locals[c].reaction.size()) k += locals[c].reaction;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      out.load[cell[i]] += locals[c].load[static_cast<Eigen::Index>(i)];
      for (std::size_t j = 0; j < cell.size(); ++j)
        triplets.emplace_back(cell[i], cell[j], k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
  out.matrix.resize(nv, nv);
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Eigen::VectorXd LinearSystem::expand(const Eigen::VectorXd& free_values) const {
  Eigen::VectorXd out = boundary_values;
  for (std::size_t d = 0; d < vertex_of_dof.size(); ++d)
    out[vertex_of_dof[d]] = free_values[static_cast<Eigen::Index>(d)];
  return out;
}

LinearSystem assemble(const PolygonalMesh& mesh, const DegreeAssignment& degrees,
                      const ProblemSpec& problem, const AssemblyOptions& options) {
  const GlobalMatrices global = assemble_global(mesh, degrees, problem, options);
  const auto& flags = mesh.boundary_vertex_flags();
  const auto nv = static_cast<Eigen::Index>(mesh.num_vertices());

  LinearSystem sys;
  sys.dof_of_vertex.assign(mesh.num_vertices(), -1);
  sys.boundary_values = Eigen::VectorXd::Zero(nv);
  for (Eigen::Index v = 0; v < nv; ++v) {
    if (flags[static_cast<std::size_t>(v)]) {
      sys.boundary_values[v] = problem.dirichlet(mesh.vertices()[static_cast<std::size_t>(v)]);
    } else {
      sys.dof_of_vertex[static_cast<std::size_t>(v)] = static_cast<int>(sys.vertex_of_dof.size());
      sys.vertex_of_dof.push_back(static_cast<int>(v));
    }
  }

  const auto nd = static_cast<Eigen::Index>(sys.vertex_of_dof.size());
  sys.rhs = Eigen::VectorXd::Zero(nd);
  for (Eigen::Index d = 0; d < nd; ++d) sys.rhs[d] = global.load[sys.vertex_of_dof[static_cast<std::size_t>(d)]];

  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index col = 0; col < global.matrix.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(global.matrix, col); it; ++it) {
      const int r = sys.dof_of_vertex[static_cast<std::size_t>(it.row())];
      const int c = sys.dof_of_vertex[static_cast<std::size_t>(it.col())];
      if (r < 0) continue;
      if (c >= 0) {
        triplets.emplace_back(r, c, it.value());
      } else {
        sys.rhs[r] -= it.value() * sys.boundary_values[it.col()];
      }
    }
  }
  sys.matrix.resize(nd, nd);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

SolverKind parse_solver(const std::string& text) {
  if (text == "cholesky") return SolverKind::Cholesky;
  if (text == "cg") return SolverKind::CG;
  throw Error(ErrorCode::InvalidArgument, "unknown solver '" + text + "' (expected cg or cholesky)");
}

std::string to_string(SolverKind kind) { return kind == SolverKind::CG ? "cg" : "cholesky"; }

SolveResult solve(const LinearSystem& system, const SolverOptions& options) {
  SolveResult out;
  out.stats.kind = options.kind;
  const Eigen::Index n = system.num_dofs();
  if (n == 0) {
    out.x = Eigen::VectorXd::Zero(0);
    return out;
  }
  const double bnorm = system.rhs.norm();
  if (options.kind == SolverKind::Cholesky) {
    Eigen::SimplicialLLT<SparseMatrix> llt(system.matrix);
    if (llt.info() != Eigen::Success)
      throw Error(ErrorCode::NotSPD, "sparse Cholesky factorization broke down");
    out.x = llt.solve(system.rhs);
    out.stats.iterations = 1;
  } else {
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
    cg.setTolerance(options.tol);
    cg.setMaxIterations(options.max_iterations > 0 ? options.max_iterations : static_cast<int>(10 * n));
    cg.compute(system.matrix);
    out.x = cg.solve(system.rhs);
    out.stats.iterations = static_cast<int>(cg.iterations());
    if (cg.info() != Eigen::Success)
      throw Error(ErrorCode::NotSPD, "conjugate gradients did not reach relative residual " +
                                         format_double(options.tol) + " in " +
                                         std::to_string(cg.iterations()) + " iterations");
  }
  const double rnorm = (system.matrix * out.x - system.rhs).norm();
  out.stats.relative_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  return out;
}

DiscreteSolution solve_problem(const PolygonalMesh& mesh, const DegreeStrategy& strategy,
                               const ProblemSpec& problem, const AssemblyOptions& assembly,
                               const SolverOptions& solver, DegreeCache* cache) {
  DiscreteSolution out;
  out.degrees = assign_degrees(mesh, strategy, cache);
  const LinearSystem sys = e2vem::assemble(mesh, out.degrees, problem, assembly);
  const SolveResult res = solve(sys, solver);
  out.vertex_values = sys.expand(res.x);
  out.stats = res.stats;
  out.h = mesh.h();
  out.num_cells = mesh.num_cells();
  out.num_dofs = sys.num_dofs();
  return out;
}

std::string solution_to_json(const PolygonalMesh& mesh, const DiscreteSolution& solution) {
  std::string out = "{\n  \"mesh\": " + nlohmann::json(mesh.name()).dump() + ",\n  \"vertex_values\": [";
  for (Eigen::Index i = 0; i < solution.vertex_values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(solution.vertex_values[i]);
  }
  out += "],\n  \"degrees\": [";
  for (std::size_t c = 0; c < solution.degrees.l.size(); ++c) {
    if (c) out += ", ";
    out += std::to_string(solution.degrees.l[c]);
  }
  out += "]\n}\n";
  return out;
}

void dump_element_matrices(const PolygonalMesh& mesh, const DegreeAssignment& degrees,
                           const ProblemSpec& problem, const AssemblyOptions& options, std::ostream& out) {
  const auto locals = all_local_matrices(mesh, degrees, problem, options);
  out << "cell,matrix,row,col,value\n";
  auto dump = [&](std::size_t c, const char* tag, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        out << c << ',' << tag << ',' << i << ',' << j << ',' << format_double(m(i, j)) << '\n';
  };
  for (std::size_t c = 0; c < locals.size(); ++c) {
    dump(c, "K", locals[c].stiffness);
    if (locals[c].reaction.size()) dump(c, "M0", locals[c].reaction);
    dump(c, "F", locals[c].load);
  }
}

}  // namespace e2vem
