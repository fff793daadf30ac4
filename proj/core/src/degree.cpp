#include "e2vem/degree.hpp"

#include "e2vem/errors.hpp"
#include "e2vem/linalg.hpp"
#include "e2vem/parallel.hpp"
#include "e2vem/polyspace.hpp"
#include "e2vem/projectors.hpp"
#include "e2vem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace e2vem {

int ell_hat(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 vertices");
  int l = 0;
  while (2 * (l + 1) < n - 1) ++l;
  return l;
}

int ell_check(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 vertices");
  int l = 0;
  while ((l + 1) * (l + 2) < n - 1) ++l;
  return l;
}

Eigen::MatrixXd badpoly_functional_matrix(const Polygon& poly, int l) {
  if (l < 0) throw Error(ErrorCode::InvalidArgument, "degree must be non-negative");
  const auto nv = static_cast<Eigen::Index>(poly.num_vertices());
  const MonomialBasis basis = MonomialBasis::for_polygon(poly, l);
  const int ns = basis.dim();
  const auto& edges = poly.edges();
  const double perim = poly.perimeter();
  const LineRule& rule = line_rule(l + 1);

  // Columns: hat functions; rows: vector monomials. Transposed at the end.
  Eigen::MatrixXd flux = Eigen::MatrixXd::Zero(2 * ns, nv);
  Eigen::VectorXd total = Eigen::VectorXd::Zero(2 * ns);
  for (Eigen::Index e = 0; e < nv; ++e) {
    const Edge& edge = edges[static_cast<std::size_t>(e)];
    const Eigen::Index next = (e + 1) % nv;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double t = rule.points[q];
      const double w = rule.weights[q] * edge.length;
      const Eigen::VectorXd m = basis.evaluate(edge.a + t * (edge.b - edge.a));
      for (int c = 0; c < 2; ++c) {
        const auto rows = Eigen::seqN(c * ns, ns);
        const Eigen::VectorXd pn = (w * edge.normal[c]) * m;
        flux(rows, e) += (1.0 - t) * pn;
        flux(rows, next) += t * pn;
        total(rows) += pn;
      }
    }
  }
  // P0 phi_i = (|e_{i-1}| + |e_i|) / (2 |dE|).
  Eigen::MatrixXd d(nv - 1, 2 * ns);
  for (Eigen::Index i = 0; i + 1 < nv; ++i) {
    const double prev = edges[static_cast<std::size_t>((i + nv - 1) % nv)].length;
    const double mean = (prev + edges[static_cast<std::size_t>(i)].length) / (2.0 * perim);
    d.row(i) = (flux.col(i) - mean * total).transpose();
  }
  return d;
}

BadPolySpace dim_badpoly(const Polygon& poly, int l) {
  const Eigen::MatrixXd d = badpoly_functional_matrix(poly, l);
  BadPolySpace out;
  out.l = l;
  out.basis = null_space(d);
  out.dimension = static_cast<int>(out.basis.cols());
  return out;
}

DegreeEvidence certify_degree(const Polygon& poly, int l, bool with_badpoly) {
  const int n = static_cast<int>(poly.num_vertices());
  const ElementProjectors proj = compute_element_projectors(poly, l);
  const Eigen::MatrixXd k = local_stiffness(proj);
  DegreeEvidence ev;
  ev.l = l;
  ev.n_vertices = n;
  ev.rank = stiffness_rank(proj, k).rank;
  ev.ell_check = ell_check(n);
  ev.ell_hat = ell_hat(n);
  ev.gram_condition = proj.grad.condition;
  if (with_badpoly) ev.dim_badpoly = dim_badpoly(poly, l).dimension;
  return ev;
}

DegreeEvidence min_admissible_l(const Polygon& poly, bool with_badpoly) {
  const int n = static_cast<int>(poly.num_vertices());
  const int hi = ell_hat(n);
  for (int l = ell_check(n); l <= hi; ++l) {
    DegreeEvidence ev = certify_degree(poly, l, false);
    if (ev.admissible()) {
      if (with_badpoly) ev.dim_badpoly = dim_badpoly(poly, l).dimension;
      return ev;
    }
  }
  throw Error(ErrorCode::AdmissibilityNotReached,
              "stiffness rank stays below N_V - 1 = " + std::to_string(n - 1) + " up to l = " +
                  std::to_string(hi));
}

std::vector<std::int64_t> congruence_key(const Polygon& poly) {
  const auto& edges = poly.edges();
  const std::size_t n = edges.size();
  const double diam = poly.diameter();
  auto quantize = [](double x) { return static_cast<std::int64_t>(std::llround(x * 1e9)); };

  std::vector<std::int64_t> seq;
  seq.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point u = edges[(i + n - 1) % n].b - edges[(i + n - 1) % n].a;
    const Point v = edges[i].b - edges[i].a;
    const double turn = std::atan2(u.x() * v.y() - u.y() * v.x(), u.dot(v));
    seq.push_back(quantize(edges[i].length / diam));
    seq.push_back(quantize(turn));
  }

  std::vector<std::int64_t> best = seq;
  std::vector<std::int64_t> cand(seq.size());
  for (std::size_t s = 1; s < n; ++s) {
    std::rotate_copy(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(2 * s), seq.end(),
                     cand.begin());
    if (cand < best) best = cand;
  }
  return best;
}

std::optional<DegreeEvidence> DegreeCache::find(const std::vector<std::int64_t>& key, int l) const {
  std::lock_guard lock(mutex_);
  const auto it = entries_.find({key, l});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void DegreeCache::store(const std::vector<std::int64_t>& key, const DegreeEvidence& evidence) {
  std::lock_guard lock(mutex_);
  entries_[{key, evidence.l}] = evidence;
}

std::optional<int> DegreeCache::find_minimal(const std::vector<std::int64_t>& key) const {
  std::lock_guard lock(mutex_);
  const auto it = minimal_.find(key);
  if (it == minimal_.end()) return std::nullopt;
  return it->second;
}

void DegreeCache::store_minimal(const std::vector<std::int64_t>& key, int l) {
  std::lock_guard lock(mutex_);
  minimal_[key] = l;
}

std::size_t DegreeCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

DegreeStrategy parse_strategy(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "minimal") return {StrategyKind::Minimal, 0};
  if (s == "ell-hat") return {StrategyKind::EllHat, 0};
  if (s == "ell-check") return {StrategyKind::EllCheck, 0};
  if (s.rfind("fixed:", 0) == 0) {
    const std::string num = s.substr(6);
    std::size_t used = 0;
    int l = -1;
    try {
      l = std::stoi(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == num.size() && !num.empty() && l >= 0 && l <= 30) return {StrategyKind::Fixed, l};
    throw Error(ErrorCode::InvalidArgument, "fixed degree must be an integer in [0, 30]: '" + text + "'");
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown strategy '" + text + "' (expected minimal, ell-hat, ell-check or fixed:L)");
}

std::string to_string(const DegreeStrategy& strategy) {
  switch (strategy.kind) {
    case StrategyKind::Minimal: return "minimal";
    case StrategyKind::EllHat: return "ell-hat";
    case StrategyKind::EllCheck: return "ell-check";
    case StrategyKind::Fixed: return "fixed:" + std::to_string(strategy.fixed_l);
  }
  return "unknown";
}

bool DegreeAssignment::admissible() const noexcept {
  return std::all_of(evidence.begin(), evidence.end(), [](const DegreeEvidence& e) { return e.admissible(); });
}

std::vector<std::size_t> DegreeAssignment::inadmissible_cells() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < evidence.size(); ++c)
    if (!evidence[c].admissible()) out.push_back(c);
  return out;
}

int DegreeAssignment::max_degree() const noexcept {
  return l.empty() ? 0 : *std::max_element(l.begin(), l.end());
}

DegreeAssignment assign_degrees(const PolygonalMesh& mesh, const DegreeStrategy& strategy,
                                DegreeCache* cache) {
  DegreeCache local_cache;
  DegreeCache& memo = cache ? *cache : local_cache;
  const auto& polys = mesh.polygons();

  DegreeAssignment out;
  out.strategy = strategy;
  out.l.assign(polys.size(), 0);
  out.evidence.assign(polys.size(), DegreeEvidence{});

  auto certified = [&](const Polygon& poly, const std::vector<std::int64_t>& key, int l) {
    if (auto hit = memo.find(key, l)) return *hit;
    DegreeEvidence ev = certify_degree(poly, l);
    memo.store(key, ev);
    return ev;
  };

  parallel_for(polys.size(), [&](std::size_t c) {
    const Polygon& poly = polys[c];
    const int n = static_cast<int>(poly.num_vertices());
    const auto key = congruence_key(poly);
    DegreeEvidence ev;
    switch (strategy.kind) {
      case StrategyKind::Minimal: {
        if (auto l = memo.find_minimal(key)) {
          ev = certified(poly, key, *l);
          break;
        }
        try {
          ev = min_admissible_l(poly);
        } catch (const Error& err) {
          throw Error(err.code(), err.detail(), c);
        }
        memo.store(key, ev);
        memo.store_minimal(key, ev.l);
        break;
      }
      case StrategyKind::EllHat: ev = certified(poly, key, ell_hat(n)); break;
      case StrategyKind::EllCheck: ev = certified(poly, key, ell_check(n)); break;
      case StrategyKind::Fixed: ev = certified(poly, key, strategy.fixed_l); break;
    }
    out.l[c] = ev.l;
    out.evidence[c] = ev;
  });
  return out;
}

}  // namespace e2vem
