#pragma once

#include "e2vem/geometry.hpp"
#include "e2vem/mesh.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace e2vem {

/// Smallest l with 2(l+1) >= n-1. Always admissible.
int ell_hat(int n);
/// Smallest l with (l+1)(l+2) >= n-1. No smaller l can be admissible.
int ell_check(int n);

/// Vector polynomials of degree l whose normal moments against every
/// zero-boundary-mean piecewise linear trace vanish.
struct BadPolySpace {
  int l = 0;
  int dimension = 0;
  Eigen::MatrixXd basis;  // columns: coefficients in the vector monomial basis
};

/// D(i, a) = int_dE (p_a . n)(phi_i - P0 phi_i) for i < N_V - 1; the space is
/// the numerical null space of D.
Eigen::MatrixXd badpoly_functional_matrix(const Polygon& poly, int l);
BadPolySpace dim_badpoly(const Polygon& poly, int l);

/// Rank certificate of one polygon at one degree.
struct DegreeEvidence {
  int l = 0;
  int n_vertices = 0;
  int rank = 0;
  int ell_check = 0;
  int ell_hat = 0;
  double gram_condition = 1.0;
  std::optional<int> dim_badpoly;

  [[nodiscard]] bool admissible() const noexcept { return rank == n_vertices - 1; }
  [[nodiscard]] bool within_bounds() const noexcept { return ell_check <= l && l <= ell_hat; }
};

/// Builds K_E at degree l and records its numerical rank.
DegreeEvidence certify_degree(const Polygon& poly, int l, bool with_badpoly = false);

/// Smallest l in [ell_check, ell_hat] whose stiffness has rank N_V - 1.
/// Throws Error{AdmissibilityNotReached} when even ell_hat fails.
DegreeEvidence min_admissible_l(const Polygon& poly, bool with_badpoly = false);

/// Shape signature invariant under rotation, translation and uniform scaling:
/// the cyclic sequence of (edge length / diameter, turning angle), quantized at
/// 1e-9 and rotated to its lexicographically smallest start.
std::vector<std::int64_t> congruence_key(const Polygon& poly);

/// Thread-safe memo of certificates keyed by congruence class and degree.
/// Concurrent writers store identical values, so the last write wins.
class DegreeCache {
 public:
  std::optional<DegreeEvidence> find(const std::vector<std::int64_t>& key, int l) const;
  void store(const std::vector<std::int64_t>& key, const DegreeEvidence& evidence);
  /// Minimal degree for the class, or nullopt when not yet searched.
  std::optional<int> find_minimal(const std::vector<std::int64_t>& key) const;
  void store_minimal(const std::vector<std::int64_t>& key, int l);
  [[nodiscard]] std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<std::vector<std::int64_t>, int>, DegreeEvidence> entries_;
  std::map<std::vector<std::int64_t>, int> minimal_;
};

enum class StrategyKind { Minimal, EllHat, EllCheck, Fixed };

struct DegreeStrategy {
  StrategyKind kind = StrategyKind::Minimal;
  int fixed_l = 0;
};

/// "minimal", "ell-hat", "ell-check" or "fixed:L" (underscores accepted).
DegreeStrategy parse_strategy(const std::string& text);
std::string to_string(const DegreeStrategy& strategy);

struct DegreeAssignment {
  DegreeStrategy strategy;
  std::vector<int> l;
  std::vector<DegreeEvidence> evidence;

  [[nodiscard]] bool admissible() const noexcept;
  [[nodiscard]] std::vector<std::size_t> inadmissible_cells() const;
  [[nodiscard]] int max_degree() const noexcept;
};

/// Degree per cell with rank evidence. Formula strategies never throw on a
/// rank-deficient cell; the evidence records it and assembly rejects it. The
/// minimal strategy throws Error{AdmissibilityNotReached} with the cell index.
DegreeAssignment assign_degrees(const PolygonalMesh& mesh, const DegreeStrategy& strategy,
                                DegreeCache* cache = nullptr);

}  // namespace e2vem
