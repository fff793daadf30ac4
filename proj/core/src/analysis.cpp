#include "e2vem/analysis.hpp"

#include "e2vem/errors.hpp"
#include "e2vem/mesh_io.hpp"
#include "e2vem/parallel.hpp"

#include <cmath>
#include <sstream>

namespace e2vem {

ErrorNorms compute_errors(const PolygonalMesh& mesh, const Eigen::VectorXd& vertex_values,
                          const std::optional<ExactSolution>& exact, int quad_degree) {
  if (!exact) throw Error(ErrorCode::MissingExactSolution, "error norms need an exact solution");
  if (vertex_values.size() != static_cast<Eigen::Index>(mesh.num_vertices()))
    throw Error(ErrorCode::InvalidArgument, "solution size does not match the mesh");

  std::vector<ErrorNorms> local(mesh.num_cells());
  parallel_for(mesh.num_cells(), [&](std::size_t c) {
    const Polygon& poly = mesh.polygons()[c];
    const auto& cell = mesh.cells()[c];
    Eigen::VectorXd u(static_cast<Eigen::Index>(cell.size()));
    for (std::size_t i = 0; i < cell.size(); ++i) u[static_cast<Eigen::Index>(i)] = vertex_values[cell[i]];
    const Eigen::VectorXd coeffs = compute_pinabla(poly) * u;
    const MonomialBasis basis = MonomialBasis::for_polygon(poly, 1);
    const Point grad(coeffs[1] / basis.scale(), coeffs[2] / basis.scale());
    const QuadratureRule rule = polygon_rule(poly, quad_degree);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point& x = rule.nodes[q];
      const double du = basis.evaluate(coeffs, x) - exact->value(x);
      local[c].l2 += rule.weights[q] * du * du;
      local[c].h1 += rule.weights[q] * (grad - exact->gradient(x)).squaredNorm();
    }
  });

  ErrorNorms total;
  for (const ErrorNorms& e : local) {
    total.l2 += e.l2;
    total.h1 += e.h1;
  }
  total.l2 = std::sqrt(total.l2);
  total.h1 = std::sqrt(total.h1);
  return total;
}

double l2_error(const PolygonalMesh& mesh, const Eigen::VectorXd& vertex_values,
                const std::optional<ExactSolution>& exact, int quad_degree) {
  return compute_errors(mesh, vertex_values, exact, quad_degree).l2;
}

double h1_error(const PolygonalMesh& mesh, const Eigen::VectorXd& vertex_values,
                const std::optional<ExactSolution>& exact, int quad_degree) {
  return compute_errors(mesh, vertex_values, exact, quad_degree).h1;
}

RateFit eoc_rates(const std::vector<double>& hs, const std::vector<double>& errs) {
  if (hs.size() != errs.size()) throw Error(ErrorCode::InvalidArgument, "h and error lists differ in length");
  if (hs.size() < 2) throw Error(ErrorCode::InsufficientLevels, "rates need at least two levels");
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (!(hs[i] > 0.0) || !(errs[i] > 0.0) || !std::isfinite(errs[i]))
      throw Error(ErrorCode::DegenerateData, "h and errors must be positive and finite");

  const auto n = static_cast<double>(hs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    sx += std::log(hs[i]);
    sy += std::log(errs[i]);
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double dx = std::log(hs[i]) - sx / n;
    sxx += dx * dx;
    sxy += dx * (std::log(errs[i]) - sy / n);
  }
  if (sxx <= 0.0) throw Error(ErrorCode::DegenerateData, "all mesh sizes are equal");

  RateFit fit;
  fit.fitted = sxy / sxx;
  for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
    if (hs[i] == hs[i + 1]) throw Error(ErrorCode::DegenerateData, "repeated mesh size");
    fit.per_step.push_back(std::log(errs[i] / errs[i + 1]) / std::log(hs[i] / hs[i + 1]));
  }
  return fit;
}

std::string StudyReport::to_csv(const std::string& config_json) const {
  std::ostringstream out;
  if (!config_json.empty()) out << "# config: " << config_json << '\n';
  out << "h,ncells,dofs,err_l2,err_h1,rate_l2,rate_h1\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const StudyRow& r = rows[i];
    out << format_double(r.h) << ',' << r.num_cells << ',' << r.dofs << ',' << format_double(r.err_l2) << ','
        << format_double(r.err_h1) << ',';
    if (i > 0 && i - 1 < rate_l2.per_step.size())
      out << format_double(rate_l2.per_step[i - 1]) << ',' << format_double(rate_h1.per_step[i - 1]);
    else
      out << ',';
    out << '\n';
  }
  if (rows.size() >= 2)
    out << "# fitted rate_l2=" << format_double(rate_l2.fitted) << " rate_h1=" << format_double(rate_h1.fitted)
        << '\n';
  return out.str();
}

StudyReport run_convergence_study(const StudyOptions& options) {
  if (options.levels < 2) throw Error(ErrorCode::InsufficientLevels, "a convergence study needs at least 2 levels");
  const ProblemSpec problem = sine_problem(options.problem);
  DegreeCache cache;
  StudyReport report;
  std::vector<double> hs, e0, e1;
  for (int k = 0; k < options.levels; ++k) {
    MeshFamilySpec spec = options.mesh;
    spec.level = options.mesh.level + k;
    const PolygonalMesh mesh = make_mesh(spec);
    const DiscreteSolution sol =
        solve_problem(mesh, options.strategy, problem, options.assembly, options.solver, &cache);
    const ErrorNorms err = compute_errors(mesh, sol.vertex_values, problem.exact, options.error_quadrature);
    report.rows.push_back({mesh.h(), mesh.num_cells(), sol.num_dofs, err.l2, err.h1, sol.stats.iterations});
    hs.push_back(mesh.h());
    e0.push_back(err.l2);
    e1.push_back(err.h1);
  }
  report.rate_l2 = eoc_rates(hs, e0);
  report.rate_h1 = eoc_rates(hs, e1);
  return report;
}

std::vector<CoercivityRow> coercivity_scan(const std::vector<PolygonFamilySpec>& polygons) {
  std::vector<CoercivityRow> rows(polygons.size());
  parallel_for(polygons.size(), [&](std::size_t i) {
    const Polygon poly = make_polygon(polygons[i]);
    const DegreeEvidence ev = min_admissible_l(poly, true);
    rows[i] = {ev.n_vertices, ev.ell_hat, ev.ell_check, ev.l, ev.dim_badpoly.value_or(0)};
  });
  return rows;
}

std::string coercivity_csv(const std::vector<CoercivityRow>& rows, const std::string& config_json) {
  std::ostringstream out;
  if (!config_json.empty()) out << "# config: " << config_json << '\n';
  out << "n_vertices,ell_hat,ell_check,minimal_l,dim_badpoly_at_minimal\n";
  for (const CoercivityRow& r : rows)
    out << r.n_vertices << ',' << r.ell_hat << ',' << r.ell_check << ',' << r.minimal_l << ',' << r.dim_badpoly
        << '\n';
  return out.str();
}

}  // namespace e2vem
