#include "e2vem/mesh.hpp"

#include "e2vem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace e2vem {

namespace {

struct EdgeUse {
  std::size_t cell;
  bool forward;  // traversed from the smaller to the larger vertex index
};

}  // namespace

PolygonalMesh::PolygonalMesh(std::vector<Point> vertices, std::vector<std::vector<int>> cells,
                             std::string name)
    : name_(std::move(name)), vertices_(std::move(vertices)), cells_(std::move(cells)) {
  const auto nv = static_cast<int>(vertices_.size());
  if (cells_.empty()) throw Error(ErrorCode::StructuralDefect, "mesh has no cells");

  polygons_.reserve(cells_.size());
  std::vector<int> used(vertices_.size(), 0);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    auto& cell = cells_[c];
    if (cell.size() < 3) throw Error(ErrorCode::StructuralDefect, "cell has fewer than 3 vertices", c);
    std::set<int> seen;
    for (int v : cell) {
      if (v < 0 || v >= nv)
        throw Error(ErrorCode::StructuralDefect, "vertex index " + std::to_string(v) + " out of range", c);
      if (!seen.insert(v).second)
        throw Error(ErrorCode::StructuralDefect, "vertex " + std::to_string(v) + " repeated", c);
      ++used[static_cast<std::size_t>(v)];
    }
    std::vector<Point> pts;
    pts.reserve(cell.size());
    for (int v : cell) pts.push_back(vertices_[static_cast<std::size_t>(v)]);
    try {
      polygons_.push_back(build_polygon(pts));
    } catch (const Error& e) {
      throw Error(ErrorCode::StructuralDefect, e.what(), c);
    }
    if (polygons_.back().reoriented()) std::reverse(cell.begin(), cell.end());
    h_ = std::max(h_, polygons_.back().diameter());
  }
  for (std::size_t v = 0; v < used.size(); ++v) {
    if (used[v] == 0)
      throw Error(ErrorCode::StructuralDefect, "vertex " + std::to_string(v) + " belongs to no cell");
  }

  std::map<std::pair<int, int>, std::vector<EdgeUse>> edges;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& cell = cells_[c];
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const int a = cell[i];
      const int b = cell[(i + 1) % cell.size()];
      edges[{std::min(a, b), std::max(a, b)}].push_back({c, a < b});
    }
  }

  boundary_.assign(vertices_.size(), false);
  std::vector<std::pair<int, int>> boundary_edges;  // oriented as in their cell
  for (const auto& [key, uses] : edges) {
    if (uses.size() > 2)
      throw Error(ErrorCode::StructuralDefect, "edge shared by more than two cells", uses[2].cell);
    if (uses.size() == 2 && uses[0].forward == uses[1].forward)
      throw Error(ErrorCode::StructuralDefect,
                  "edge traversed twice in the same direction (duplicated or overlapping cell)",
                  uses[1].cell);
    if (uses.size() == 1) {
      boundary_[static_cast<std::size_t>(key.first)] = true;
      boundary_[static_cast<std::size_t>(key.second)] = true;
      boundary_edges.push_back(uses[0].forward ? key : std::pair{key.second, key.first});
    }
  }

  // Hanging nodes show up as vertices lying inside a single-use edge.
  double mean_len = 0.0;
  for (const auto& [a, b] : boundary_edges)
    mean_len += (vertices_[static_cast<std::size_t>(a)] - vertices_[static_cast<std::size_t>(b)]).norm();
  mean_len /= static_cast<double>(std::max<std::size_t>(1, boundary_edges.size()));
  const double bucket = std::max(mean_len, 1e-300);
  std::map<std::pair<long long, long long>, std::vector<int>> grid;
  auto key_of = [bucket](const Point& p) {
    return std::pair{static_cast<long long>(std::floor(p.x() / bucket)),
                     static_cast<long long>(std::floor(p.y() / bucket))};
  };
  for (int v = 0; v < nv; ++v) {
    if (boundary_[static_cast<std::size_t>(v)]) grid[key_of(vertices_[static_cast<std::size_t>(v)])].push_back(v);
  }
  for (const auto& [a, b] : boundary_edges) {
    const Point& pa = vertices_[static_cast<std::size_t>(a)];
    const Point& pb = vertices_[static_cast<std::size_t>(b)];
    const auto lo = key_of(pa.cwiseMin(pb));
    const auto hi = key_of(pa.cwiseMax(pb));
    const double len = (pb - pa).norm();
    for (long long i = lo.first; i <= hi.first; ++i) {
      for (long long j = lo.second; j <= hi.second; ++j) {
        auto it = grid.find({i, j});
        if (it == grid.end()) continue;
        for (int v : it->second) {
          if (v == a || v == b) continue;
          const Point& p = vertices_[static_cast<std::size_t>(v)];
          const double t = (p - pa).dot(pb - pa) / (len * len);
          const Point d = p - pa;
          const double dist = std::abs(d.x() * (pb - pa).y() - d.y() * (pb - pa).x()) / len;
          if (t > 1e-9 && t < 1.0 - 1e-9 && dist < 1e-9 * len)
            throw Error(ErrorCode::StructuralDefect,
                        "vertex " + std::to_string(v) + " hangs on a boundary edge (non-conforming)");
        }
      }
    }
  }

  for (const auto& [a, b] : boundary_edges) {
    const Point& p = vertices_[static_cast<std::size_t>(a)];
    const Point& q = vertices_[static_cast<std::size_t>(b)];
    domain_area_ += 0.5 * (p.x() * q.y() - p.y() * q.x());
  }
  const double total = total_area();
  if (std::abs(total - domain_area_) > 1e-10 * std::abs(domain_area_))
    throw Error(ErrorCode::StructuralDefect, "cells do not tile the domain (overlap or gap)");
}

std::size_t PolygonalMesh::num_boundary_vertices() const noexcept {
  return static_cast<std::size_t>(std::count(boundary_.begin(), boundary_.end(), true));
}

double PolygonalMesh::total_area() const noexcept {
  double s = 0.0;
  for (const Polygon& p : polygons_) s += p.area();
  return s;
}

MeshQuality validate_mesh(const PolygonalMesh& mesh, double kappa_min) {
  MeshQuality q;
  q.kappa_min = kappa_min;
  q.min_rho_over_h = std::numeric_limits<double>::infinity();
  q.min_edge_over_h = std::numeric_limits<double>::infinity();
  q.cells.reserve(mesh.num_cells());
  for (const Polygon& p : mesh.polygons()) {
    CellQuality c;
    c.rho_over_h = p.kernel_inradius() / p.diameter();
    c.min_edge_over_h = p.min_edge_length() / p.diameter();
    c.num_vertices = p.num_vertices();
    q.min_rho_over_h = std::min(q.min_rho_over_h, c.rho_over_h);
    q.min_edge_over_h = std::min(q.min_edge_over_h, c.min_edge_over_h);
    q.max_vertices = std::max(q.max_vertices, c.num_vertices);
    q.cells.push_back(c);
  }
  q.kappa = std::min(q.min_rho_over_h, q.min_edge_over_h);
  q.pass = q.kappa > 0.0 && q.kappa >= kappa_min;
  return q;
}

std::vector<std::pair<std::size_t, std::size_t>> cell_census(const PolygonalMesh& mesh) {
  std::map<std::size_t, std::size_t> counts;
  for (const auto& c : mesh.cells()) ++counts[c.size()];
  return {counts.begin(), counts.end()};
}

int MeshBuilder::add_vertex(const Point& p) {
  const auto ki = static_cast<long long>(std::floor(p.x() / tol_));
  const auto kj = static_cast<long long>(std::floor(p.y() / tol_));
  for (long long i = ki - 1; i <= ki + 1; ++i) {
    for (long long j = kj - 1; j <= kj + 1; ++j) {
      auto it = grid_.find({i, j});
      if (it == grid_.end()) continue;
      for (int v : it->second) {
        if ((vertices_[static_cast<std::size_t>(v)] - p).norm() <= tol_) return v;
      }
    }
  }
  const int id = static_cast<int>(vertices_.size());
  vertices_.push_back(p);
  grid_[{ki, kj}].push_back(id);
  return id;
}

void MeshBuilder::add_cell(const std::vector<Point>& loop) {
  std::vector<int> cell;
  cell.reserve(loop.size());
  for (const Point& p : loop) {
    const int v = add_vertex(p);
    if (cell.empty() || cell.back() != v) cell.push_back(v);
  }
  if (cell.size() > 1 && cell.front() == cell.back()) cell.pop_back();
  cells_.push_back(std::move(cell));
}

PolygonalMesh MeshBuilder::build(std::string name) && {
  return PolygonalMesh(std::move(vertices_), std::move(cells_), std::move(name));
}

}  // namespace e2vem
