#include "cli.hpp"

#include "e2vem/analysis.hpp"
#include "e2vem/errors.hpp"
#include "e2vem/mesh_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace e2vem::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kCommands{"coercivity", "convergence", "solve", "meshgen", "validate"};

std::string normalize(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

std::pair<double, double> parse_band(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  try {
    if (colon != std::string::npos) {
      std::size_t a = 0, b = 0;
      const double lo = std::stod(text.substr(0, colon), &a);
      const double hi = std::stod(text.substr(colon + 1), &b);
      if (a == colon && b == text.size() - colon - 1 && lo <= hi) return {lo, hi};
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, std::string(what) + " must look like LO:HI, got '" + text + "'");
}

std::pair<int, int> parse_range(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      const int n = std::stoi(text, &used);
      if (used == text.size()) return {n, n};
    } else {
      const int lo = std::stoi(text.substr(0, colon), &used);
      std::size_t used2 = 0;
      const int hi = std::stoi(text.substr(colon + 1), &used2);
      if (used == colon && used2 == text.size() - colon - 1 && lo <= hi) return {lo, hi};
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, "--n-range must look like A:B or N, got '" + text + "'");
}

std::string default_n_range(const std::string& family) {
  if (family == "regular") return "3:20";
  if (family == "random_convex") return "4:20";
  if (family == "split_triangle") return "3:12";
  if (family == "split_hexagon") return "7:24";
  return "";
}

std::vector<PolygonFamilySpec> polygon_specs(const RunConfig& cfg) {
  const std::string family = normalize(cfg.family);
  std::vector<PolygonFamilySpec> specs;
  if (family == "concave_octagon") {
    for (int s = 0; s < cfg.seeds; ++s)
      for (double a : cfg.alphas) specs.emplace_back(ConcaveOctagonSpec{a, std::nullopt, cfg.seed + s});
    return specs;
  }
  const auto [lo, hi] = parse_range(cfg.n_range.empty() ? default_n_range(family) : cfg.n_range);
  for (int n = lo; n <= hi; ++n) {
    if (family == "regular") {
      specs.emplace_back(RegularSpec{n});
    } else if (family == "random_convex") {
      for (int s = 0; s < cfg.seeds; ++s)
        specs.emplace_back(RandomConvexSpec{n, cfg.seed + static_cast<std::uint64_t>(s), cfg.min_edge_ratio});
    } else if (family == "split_triangle") {
      specs.emplace_back(SplitTriangleSpec{n - 3});
    } else if (family == "split_hexagon") {
      specs.emplace_back(SplitHexagonSpec{n - 6});
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "unknown polygon family '" + cfg.family +
                      "' (expected regular, random_convex, split_triangle, split_hexagon or concave_octagon)");
    }
  }
  return specs;
}

LoadMode parse_load_mode(const std::string& text) {
  if (text == "mean") return LoadMode::Mean;
  if (text == "p1") return LoadMode::P1;
  throw Error(ErrorCode::InvalidArgument, "unknown load mode '" + text + "' (expected mean or p1)");
}

ProblemSpec make_problem(const RunConfig& cfg) {
  const ProblemKind kind = parse_problem_kind(cfg.problem);
  if (cfg.data == "sine") return sine_problem(kind);
  if (cfg.data == "zero") return zero_problem(kind);
  if (cfg.data == "linear") return linear_problem(kind, 1.0, 2.0, -3.0);
  throw Error(ErrorCode::InvalidArgument, "unknown data '" + cfg.data + "' (expected sine, zero or linear)");
}

MeshFamilySpec mesh_spec(const RunConfig& cfg) {
  if (cfg.family.empty()) throw Error(ErrorCode::InvalidArgument, "--family is required");
  return MeshFamilySpec{parse_mesh_family(cfg.family), cfg.level, cfg.base, cfg.alpha};
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

/// Inserts a "config" member right after the opening brace of a JSON object.
std::string with_config(const std::string& object_text, const std::string& config_json) {
  return "{\n  \"config\": " + config_json + "," + object_text.substr(1);
}

// ---------------------------------------------------------------------------

int cmd_coercivity(const RunConfig& cfg, std::ostream& out) {
  const auto rows = coercivity_scan(polygon_specs(cfg));
  write_output(cfg.out, coercivity_csv(rows, cfg.to_json()), out);
  if (!cfg.out.empty()) out << "coercivity: " << rows.size() << " polygons written to " << cfg.out << '\n';
  return kOk;
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto band_l2 = parse_band(cfg.rate_l2, "--rate-l2");
  const auto band_h1 = parse_band(cfg.rate_h1, "--rate-h1");
  StudyOptions opt;
  opt.mesh = mesh_spec(cfg);
  opt.levels = cfg.levels;
  opt.strategy = parse_strategy(cfg.strategy);
  opt.problem = parse_problem_kind(cfg.problem);
  opt.assembly.load_mode = parse_load_mode(cfg.load_mode);
  opt.solver = {parse_solver(cfg.solver), cfg.tol, 0};
  const StudyReport report = run_convergence_study(opt);
  write_output(cfg.out, report.to_csv(cfg.to_json()), out);

  out << "convergence: rate_l2=" << format_double(report.rate_l2.fitted)
      << " rate_h1=" << format_double(report.rate_h1.fitted) << '\n';
  int status = kOk;
  auto check = [&](const char* name, double rate, std::pair<double, double> band) {
    if (rate < band.first || rate > band.second) {
      err << "error: " << name << " = " << format_double(rate) << " outside [" << format_double(band.first)
          << ", " << format_double(band.second) << "]\n";
      status = kRateBandFailure;
    }
  };
  check("rate_l2", report.rate_l2.fitted, band_l2);
  check("rate_h1", report.rate_h1.fitted, band_h1);
  return status;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const PolygonalMesh mesh = cfg.mesh.empty() ? make_mesh(mesh_spec(cfg)) : load_mesh(cfg.mesh);
  const ProblemSpec problem = make_problem(cfg);
  AssemblyOptions assembly;
  assembly.load_mode = parse_load_mode(cfg.load_mode);
  const DiscreteSolution sol = solve_problem(mesh, parse_strategy(cfg.strategy), problem, assembly,
                                             {parse_solver(cfg.solver), cfg.tol, 0});
  if (!cfg.dump_matrices.empty()) {
    std::ostringstream csv;
    dump_element_matrices(mesh, sol.degrees, problem, assembly, csv);
    write_output(cfg.dump_matrices, csv.str(), out);
  }
  write_output(cfg.out, with_config(solution_to_json(mesh, sol), cfg.to_json()), out);

  std::ostringstream report;
  report << "solve: cells=" << sol.num_cells << " dofs=" << sol.num_dofs << " h=" << format_double(sol.h)
         << " solver=" << to_string(sol.stats.kind) << " iterations=" << sol.stats.iterations
         << " residual=" << format_double(sol.stats.relative_residual);
  if (problem.exact) {
    const ErrorNorms e = compute_errors(mesh, sol.vertex_values, problem.exact);
    report << " err_l2=" << format_double(e.l2) << " err_h1=" << format_double(e.h1);
  }
  // Keep stdout a clean JSON document when the solution goes there.
  if (!cfg.out.empty() && cfg.out != "-") out << report.str() << '\n';
  return kOk;
}

int cmd_meshgen(const RunConfig& cfg, std::ostream& out) {
  const PolygonalMesh mesh = make_mesh(mesh_spec(cfg));
  write_output(cfg.out, with_config(mesh_to_json(mesh), cfg.to_json()), out);
  if (!cfg.out.empty() && cfg.out != "-") {
    out << "meshgen: " << mesh.name() << " cells=" << mesh.num_cells() << " vertices=" << mesh.num_vertices();
    for (const auto& [n, count] : cell_census(mesh)) out << " n" << n << '=' << count;
    out << '\n';
  }
  return kOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.mesh.empty()) throw Error(ErrorCode::InvalidArgument, "--mesh is required");
  const PolygonalMesh mesh = load_mesh(cfg.mesh);
  const MeshQuality q = validate_mesh(mesh, cfg.kappa_min);
  std::ostringstream report;
  report << "mesh: " << (mesh.name().empty() ? cfg.mesh : mesh.name()) << '\n'
         << "cells: " << mesh.num_cells() << '\n'
         << "vertices: " << mesh.num_vertices() << " (boundary " << mesh.num_boundary_vertices() << ")\n"
         << "h: " << format_double(mesh.h()) << '\n'
         << "kappa: " << format_double(q.kappa) << '\n'
         << "min_rho_over_h: " << format_double(q.min_rho_over_h) << '\n'
         << "min_edge_over_h: " << format_double(q.min_edge_over_h) << '\n'
         << "max_vertices: " << q.max_vertices << '\n'
         << "kappa_min: " << format_double(cfg.kappa_min) << '\n'
         << "result: " << (q.pass ? "pass" : "fail") << '\n';
  write_output(cfg.out, report.str(), out);
  if (!q.pass) {
    err << "error: kappa " << format_double(q.kappa) << " below kappa_min " << format_double(cfg.kappa_min) << '\n';
    return kConfigError;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::AdmissibilityNotReached:
    case ErrorCode::InadmissibleDegrees: return kAdmissibilityError;
    case ErrorCode::NotSPD:
    case ErrorCode::SingularSystem: return kSolverError;
    case ErrorCode::DegenerateData: return kOtherFailure;
    default: return kConfigError;
  }
}

bool flag_present(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

/// Expands "--config file.json" into ordinary flags. Keys mirror the long flag
/// names (underscores or dashes); "command" selects the subcommand. Flags given
/// on the command line take precedence over the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(ErrorCode::InvalidArgument, "--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::ParseError, "cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "config file '" + path + "' must hold a JSON object");

  auto cmd_it = std::find_if(rest.begin() + (rest.empty() ? 0 : 1), rest.end(), [](const std::string& a) {
    return std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end();
  });
  std::string command = cmd_it != rest.end() ? *cmd_it : "";
  if (doc.contains("command")) {
    if (!doc["command"].is_string()) throw Error(ErrorCode::ParseError, "config 'command' must be a string");
    const std::string from_file = doc["command"].get<std::string>();
    if (!command.empty() && command != from_file)
      throw Error(ErrorCode::InvalidArgument, "config file is for '" + from_file + "' but '" + command + "' was requested");
    command = from_file;
  }
  if (command.empty()) throw Error(ErrorCode::InvalidArgument, "no subcommand given on the command line or in the config");

  std::vector<std::string> expanded;
  expanded.push_back(rest.empty() ? "e2vem" : rest.front());
  expanded.push_back(command);
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") continue;
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (flag_present(rest, flag)) continue;
    auto scalar = [&](const json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
      if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
      if (v.is_number_float()) return format_double(v.get<double>());
      throw Error(ErrorCode::ParseError, "config key '" + key + "' has an unsupported value type");
    };
    if (value.is_boolean()) {
      if (value.get<bool>()) expanded.push_back(flag);
    } else if (value.is_array()) {
      expanded.push_back(flag);
      for (const json& v : value) expanded.push_back(scalar(v));
    } else {
      expanded.push_back(flag);
      expanded.push_back(scalar(value));
    }
  }
  for (auto it = rest.begin() + (rest.empty() ? 0 : 1); it != rest.end(); ++it)
    if (it != cmd_it) expanded.push_back(*it);
  return expanded;
}

}  // namespace

std::string RunConfig::to_json() const {
  json j;
  j["command"] = command;
  const bool mesh_cmd = command == "convergence" || command == "solve" || command == "meshgen";
  if (command == "coercivity") {
    j["family"] = normalize(family);
    if (normalize(family) == "concave_octagon") {
      j["alphas"] = alphas;
    } else {
      j["n_range"] = n_range.empty() ? default_n_range(normalize(family)) : n_range;
    }
    j["seed"] = seed;
    j["seeds"] = seeds;
    j["min_edge_ratio"] = min_edge_ratio;
  }
  if (mesh_cmd && (command != "solve" || mesh.empty())) {
    j["family"] = family.empty() ? family : to_string(parse_mesh_family(family));
    j["base"] = base;
    j["alpha"] = alpha;
    if (command == "convergence") j["levels"] = levels;
    else j["level"] = level;
  }
  if (command == "solve" || command == "validate") {
    if (!mesh.empty()) j["mesh"] = mesh;
  }
  if (command == "convergence" || command == "solve") {
    j["strategy"] = strategy;
    j["problem"] = problem;
    j["load_mode"] = load_mode;
    j["solver"] = solver;
    j["tol"] = tol;
  }
  if (command == "solve") j["data"] = data;
  if (command == "convergence") {
    j["rate_l2"] = rate_l2;
    j["rate_h1"] = rate_h1;
  }
  if (command == "validate") j["kappa_min"] = kappa_min;
  return j.dump();
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Stabilization-free first-order virtual element solver", "e2vem"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "e2vem 0.1.0");

  auto* coer = app.add_subcommand("coercivity", "Minimal projection degree for families of polygons (CSV)");
  coer->add_option("--family", cfg.family,
                   "regular | random_convex | split_triangle | split_hexagon | concave_octagon")
      ->required();
  coer->add_option("--n-range", cfg.n_range, "Vertex counts A:B (family default when omitted)");
  coer->add_option("--seeds", cfg.seeds, "Number of seeds, starting at --seed")->check(CLI::Range(1, 100000));
  coer->add_option("--seed", cfg.seed, "First seed");
  coer->add_option("--alphas", cfg.alphas, "Midpoint pulls for concave_octagon")->expected(1, 100);
  coer->add_option("--min-edge-ratio", cfg.min_edge_ratio, "random_convex edge/diameter lower bound");
  coer->add_option("--out", cfg.out, "Output CSV (stdout when omitted)");

  auto add_mesh_opts = [&](CLI::App* sub, bool required) {
    auto* fam = sub->add_option("--family", cfg.family,
                                "honeycomb | cut_corner_octagon | concave_star | triangulation | square_grid");
    if (required) fam->required();
    sub->add_option("--base", cfg.base, "Cells per side at level 0 (0: family default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--alpha", cfg.alpha, "concave_star midpoint pull");
  };
  auto add_discretization = [&](CLI::App* sub) {
    sub->add_option("--strategy", cfg.strategy, "minimal | ell-hat | ell-check | fixed:L");
    sub->add_option("--problem", cfg.problem, "poisson | diffreact");
    sub->add_option("--load-mode", cfg.load_mode, "mean | p1");
    sub->add_option("--solver", cfg.solver, "cholesky | cg");
    sub->add_option("--tol", cfg.tol, "CG relative residual");
  };

  auto* conv = app.add_subcommand("convergence", "Error table and rates on successive refinements (CSV)");
  add_mesh_opts(conv, true);
  conv->add_option("--levels", cfg.levels, "Number of refinement levels");
  conv->add_option("--level", cfg.level, "First level")->check(CLI::NonNegativeNumber);
  add_discretization(conv);
  conv->add_option("--rate-l2", cfg.rate_l2, "Accepted band LO:HI for the fitted L2 rate");
  conv->add_option("--rate-h1", cfg.rate_h1, "Accepted band LO:HI for the fitted H1 rate");
  conv->add_option("--out", cfg.out, "Output CSV (stdout when omitted)");

  auto* solve_cmd = app.add_subcommand("solve", "Solve on one mesh (JSON vertex values)");
  solve_cmd->add_option("--mesh", cfg.mesh, "Mesh JSON file (otherwise generated from --family)");
  add_mesh_opts(solve_cmd, false);
  solve_cmd->add_option("--level", cfg.level, "Refinement level")->check(CLI::NonNegativeNumber);
  add_discretization(solve_cmd);
  solve_cmd->add_option("--data", cfg.data, "sine | zero | linear (U = 1 + 2x - 3y)");
  solve_cmd->add_option("--dump-matrices", cfg.dump_matrices, "Write element matrices as CSV");
  solve_cmd->add_option("--out", cfg.out, "Output JSON (stdout when omitted)");

  auto* gen = app.add_subcommand("meshgen", "Generate a mesh of the unit square (JSON)");
  add_mesh_opts(gen, true);
  gen->add_option("--level", cfg.level, "Refinement level")->check(CLI::NonNegativeNumber);
  gen->add_option("--out", cfg.out, "Output JSON (stdout when omitted)");

  auto* val = app.add_subcommand("validate", "Check a mesh file and print quality metrics");
  val->add_option("--mesh", cfg.mesh, "Mesh JSON file")->required();
  val->add_option("--kappa-min", cfg.kappa_min, "Fail below this shape-regularity constant");
  val->add_option("--out", cfg.out, "Write the report here instead of stdout");

  try {
    const std::vector<std::string> args = expand_config(raw_args);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kConfigError;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    if (cfg.command == "coercivity") return cmd_coercivity(cfg, out);
    if (cfg.command == "convergence") return cmd_convergence(cfg, out, err);
    if (cfg.command == "solve") return cmd_solve(cfg, out);
    if (cfg.command == "meshgen") return cmd_meshgen(cfg, out);
    return cmd_validate(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kOtherFailure;
  }
}

}  // namespace e2vem::cli
