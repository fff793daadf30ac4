#pragma once

#include "e2vem/geometry.hpp"
#include "e2vem/mesh.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace e2vem {

// ---------------------------------------------------------------------------
// Single polygons for coercivity scans
// ---------------------------------------------------------------------------

/// Vertices at angles 2 pi i / n on the unit circle.
struct RegularSpec {
  int n = 3;
};

/// n points on the unit circle with every edge at least min_edge_ratio times
/// the circle diameter, sorted by angle.
struct RandomConvexSpec {
  int n = 4;
  std::uint64_t seed = 1;
  double min_edge_ratio = 0.15;
};

/// Fixed non-equilateral triangle whose edges receive equally spaced points
/// one edge at a time: step s has 3 + s vertices, s in [0, 9].
struct SplitTriangleSpec {
  int step = 0;
};

/// Same construction from a fixed non-regular hexagon: 6 + s vertices, s in [0, 18].
struct SplitHexagonSpec {
  int step = 0;
};

/// Quadrilateral plus its edge midpoints, the midpoints moved by
/// S(x) = (1 - alpha) x + alpha x_C with x_C the quadrilateral centroid.
/// Without an explicit base the quadrilateral is RandomConvexSpec{4, seed}.
struct ConcaveOctagonSpec {
  double alpha = 0.0;
  std::optional<std::array<Point, 4>> base;
  std::uint64_t seed = 1;
};

using PolygonFamilySpec =
    std::variant<RegularSpec, RandomConvexSpec, SplitTriangleSpec, SplitHexagonSpec, ConcaveOctagonSpec>;

/// Vertex loop of the requested polygon (CCW). Throws Error{InvalidArgument |
/// RejectionBudgetExceeded}.
std::vector<Point> polygon_points(const PolygonFamilySpec& spec);
Polygon make_polygon(const PolygonFamilySpec& spec);

/// Corner loop with `splits[k]` equally spaced points inserted on edge k.
std::vector<Point> split_edges(const std::vector<Point>& corners, const std::vector<int>& splits);

/// Per-edge split counts after `step` single-edge refinements of an m-gon:
/// refinement j raises edge (j mod m) by one point.
std::vector<int> split_schedule(int num_edges, int step);

/// Fixed bases used by the split families.
const std::vector<Point>& split_triangle_base();
const std::vector<Point>& split_hexagon_base();

// ---------------------------------------------------------------------------
// Meshes of the unit square for convergence studies
// ---------------------------------------------------------------------------

enum class MeshFamily { Honeycomb, CutCornerOctagon, ConcaveStar, Triangulation, SquareGrid };

std::string to_string(MeshFamily family);
/// Accepts snake_case or kebab-case names. Throws Error{InvalidArgument}.
MeshFamily parse_mesh_family(const std::string& name);

struct MeshFamilySpec {
  MeshFamily kind = MeshFamily::SquareGrid;
  int level = 0;
  /// Cells per side at level 0; 0 picks the family default.
  int base_resolution = 0;
  /// Midpoint pull for ConcaveStar.
  double alpha = 0.3;
};

/// Default level-0 resolution of each family.
int default_base_resolution(MeshFamily family);

/// Resolution doubles with each level, so cell counts grow by about 4.
PolygonalMesh make_mesh(const MeshFamilySpec& spec);

/// Cut fraction of the CutCornerOctagon family (fraction of the cell side).
inline constexpr double kCutCornerFraction = 0.25;

}  // namespace e2vem
