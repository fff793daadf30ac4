#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace e2vem::cli {

/// Process exit statuses.
enum ExitCode : int {
  kOk = 0,
  kOtherFailure = 1,
  kConfigError = 2,         // bad flags, config file, input files or meshes
  kAdmissibilityError = 3,  // AdmissibilityNotReached, InadmissibleDegrees
  kSolverError = 4,         // NotSPD, SingularSystem
  kRateBandFailure = 5,
};

/// Every option of every subcommand after flag and config-file resolution.
/// Serialized into each output file.
struct RunConfig {
  std::string command;
  // shared
  std::string family;
  std::uint64_t seed = 1;
  std::string out;
  // coercivity
  std::string n_range;
  int seeds = 1;
  std::vector<double> alphas{0.0, 0.2, 0.4, 0.6};
  double min_edge_ratio = 0.15;
  // meshes
  int level = 0;
  int levels = 4;
  int base = 0;
  double alpha = 0.3;
  std::string mesh;
  double kappa_min = 0.0;
  // discretization
  std::string strategy = "minimal";
  std::string problem = "poisson";
  std::string data = "sine";
  std::string load_mode = "mean";
  std::string solver = "cholesky";
  double tol = 1e-12;
  std::string rate_l2 = "1.9:2.1";
  std::string rate_h1 = "0.9:1.1";
  std::string dump_matrices;

  /// Canonical JSON (sorted keys) of the fields relevant to `command`.
  [[nodiscard]] std::string to_json() const;
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Reports go to `out`, diagnostics to `err`; files are written as requested.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace e2vem::cli
