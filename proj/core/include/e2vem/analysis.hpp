#pragma once

#include "e2vem/assembly.hpp"
#include "e2vem/meshgen.hpp"

#include <string>
#include <vector>

namespace e2vem {

// ---------------------------------------------------------------------------
// Error norms. Each element compares the P1 projection of the discrete
// solution with the exact one.
// ---------------------------------------------------------------------------

inline constexpr int kDefaultErrorQuadrature = 8;

struct ErrorNorms {
  double l2 = 0.0;  // sqrt(sum_E ||Pi u - U||^2)
  double h1 = 0.0;  // sqrt(sum_E ||grad Pi u - grad U||^2)
};

/// Throws Error{MissingExactSolution} when `exact` is empty.
ErrorNorms compute_errors(const PolygonalMesh& mesh, const Eigen::VectorXd& vertex_values,
                          const std::optional<ExactSolution>& exact,
                          int quad_degree = kDefaultErrorQuadrature);
double l2_error(const PolygonalMesh& mesh, const Eigen::VectorXd& vertex_values,
                const std::optional<ExactSolution>& exact, int quad_degree = kDefaultErrorQuadrature);
double h1_error(const PolygonalMesh& mesh, const Eigen::VectorXd& vertex_values,
                const std::optional<ExactSolution>& exact, int quad_degree = kDefaultErrorQuadrature);

// ---------------------------------------------------------------------------
// Empirical orders of convergence
// ---------------------------------------------------------------------------

struct RateFit {
  double fitted = 0.0;            // least-squares slope of log(err) against log(h)
  std::vector<double> per_step;   // log(e_i / e_{i+1}) / log(h_i / h_{i+1})
};

/// Throws Error{InsufficientLevels} for fewer than two points and
/// Error{DegenerateData} for non-positive values or repeated h.
RateFit eoc_rates(const std::vector<double>& hs, const std::vector<double>& errs);

struct StudyRow {
  double h = 0.0;
  std::size_t num_cells = 0;
  Eigen::Index dofs = 0;
  double err_l2 = 0.0;
  double err_h1 = 0.0;
  int solve_iterations = 0;
};

struct StudyReport {
  std::vector<StudyRow> rows;
  RateFit rate_l2;
  RateFit rate_h1;

  /// Header "h,ncells,dofs,err_l2,err_h1,rate_l2,rate_h1". Per-step rates sit on
  /// the finer row of each pair; the fitted rates follow as a comment line.
  /// A non-empty `config_json` is written first as "# config: ...".
  [[nodiscard]] std::string to_csv(const std::string& config_json = {}) const;
};

struct StudyOptions {
  MeshFamilySpec mesh;       // level is the first level of the study
  int levels = 4;
  DegreeStrategy strategy;
  ProblemKind problem = ProblemKind::Poisson;
  AssemblyOptions assembly;
  SolverOptions solver;
  int error_quadrature = kDefaultErrorQuadrature;
};

/// Sine problem on `levels` successive refinements; one degree cache is shared
/// across levels.
StudyReport run_convergence_study(const StudyOptions& options);

// ---------------------------------------------------------------------------
// Coercivity scans
// ---------------------------------------------------------------------------

struct CoercivityRow {
  int n_vertices = 0;
  int ell_hat = 0;
  int ell_check = 0;
  int minimal_l = 0;
  int dim_badpoly = 0;  // at minimal_l
};

/// One row per polygon. Throws Error{AdmissibilityNotReached} as
/// min_admissible_l does.
std::vector<CoercivityRow> coercivity_scan(const std::vector<PolygonFamilySpec>& polygons);

/// Header "n_vertices,ell_hat,ell_check,minimal_l,dim_badpoly_at_minimal".
std::string coercivity_csv(const std::vector<CoercivityRow>& rows, const std::string& config_json = {});

}  // namespace e2vem
