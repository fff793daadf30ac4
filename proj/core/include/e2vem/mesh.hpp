#pragma once

#include "e2vem/geometry.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace e2vem {

/// Conforming polygonal tessellation. Cells are counter-clockwise vertex loops.
class PolygonalMesh {
 public:
  /// Checks structure (index ranges, edge multiplicities, conformity) and
  /// builds every cell polygon. Clockwise cells are reversed on ingest.
  /// Throws Error{StructuralDefect} naming the offending cell.
  PolygonalMesh(std::vector<Point> vertices, std::vector<std::vector<int>> cells,
                std::string name = {});

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::vector<Point>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<std::vector<int>>& cells() const noexcept { return cells_; }
  [[nodiscard]] const std::vector<Polygon>& polygons() const noexcept { return polygons_; }
  [[nodiscard]] const std::vector<bool>& boundary_vertex_flags() const noexcept { return boundary_; }

  [[nodiscard]] std::size_t num_vertices() const noexcept { return vertices_.size(); }
  [[nodiscard]] std::size_t num_cells() const noexcept { return cells_.size(); }
  [[nodiscard]] std::size_t num_boundary_vertices() const noexcept;

  /// Maximum cell diameter.
  [[nodiscard]] double h() const noexcept { return h_; }
  [[nodiscard]] double total_area() const noexcept;
  /// Area enclosed by the boundary edge loops.
  [[nodiscard]] double domain_area() const noexcept { return domain_area_; }

 private:
  std::string name_;
  std::vector<Point> vertices_;
  std::vector<std::vector<int>> cells_;
  std::vector<Polygon> polygons_;
  std::vector<bool> boundary_;
  double h_ = 0.0;
  double domain_area_ = 0.0;
};

struct CellQuality {
  double rho_over_h = 0.0;       // kernel inradius about x_C over diameter
  double min_edge_over_h = 0.0;  // shortest edge over diameter
  std::size_t num_vertices = 0;
};

struct MeshQuality {
  std::vector<CellQuality> cells;
  double kappa = 0.0;  // min over cells of rho/h_E and |e|/h_E
  double min_rho_over_h = 0.0;
  double min_edge_over_h = 0.0;
  std::size_t max_vertices = 0;
  double kappa_min = 0.0;
  bool pass = false;
};

MeshQuality validate_mesh(const PolygonalMesh& mesh, double kappa_min = 0.0);

/// Counts of cells grouped by vertex number, e.g. {3: 40, 6: 280}.
std::vector<std::pair<std::size_t, std::size_t>> cell_census(const PolygonalMesh& mesh);

/// Merges coincident points (within `tol`) while building a mesh from loose
/// polygons given as coordinate loops.
class MeshBuilder {
 public:
  explicit MeshBuilder(double tol = 1e-10) : tol_(tol) {}
  int add_vertex(const Point& p);
  void add_cell(const std::vector<Point>& loop);
  PolygonalMesh build(std::string name = {}) &&;

 private:
  double tol_;
  std::vector<Point> vertices_;
  std::vector<std::vector<int>> cells_;
  std::map<std::pair<long long, long long>, std::vector<int>> grid_;
};

}  // namespace e2vem
