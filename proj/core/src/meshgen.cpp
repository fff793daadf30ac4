#include "e2vem/meshgen.hpp"

#include "e2vem/errors.hpp"
#include "e2vem/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace e2vem {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<Point> regular_points(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "regular polygon needs n >= 3");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * kPi * i / n;
    pts.emplace_back(std::cos(a), std::sin(a));
  }
  return pts;
}

// Uniform points on the circle conditioned on every angular gap being at least
// `min_gap`: shift the spacings of n uniform points on a circle shortened by
// n * min_gap. This is exactly the law rejection sampling would produce.
std::vector<Point> random_convex_points(const RandomConvexSpec& spec) {
  if (spec.n < 3) throw Error(ErrorCode::InvalidArgument, "random polygon needs n >= 3");
  if (!(spec.min_edge_ratio >= 0.0 && spec.min_edge_ratio < 0.5))
    throw Error(ErrorCode::InvalidArgument, "min_edge_ratio must lie in [0, 0.5)");
  // Edge / circle diameter >= r  <=>  2 sin(gap / 2) >= 2 r.
  const double min_gap = 2.0 * std::asin(spec.min_edge_ratio);
  const double slack = 2.0 * kPi - spec.n * min_gap;
  if (slack <= 0.0)
    throw Error(ErrorCode::RejectionBudgetExceeded,
                std::to_string(spec.n) + " edges of relative length " +
                    std::to_string(spec.min_edge_ratio) + " do not fit on the circle");

  SplitMix64 rng(spec.seed);
  std::vector<double> u(static_cast<std::size_t>(spec.n));
  for (double& x : u) x = rng.uniform();
  std::sort(u.begin(), u.end());
  const double offset = 2.0 * kPi * rng.uniform();

  std::vector<Point> pts;
  pts.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = offset + static_cast<double>(i) * min_gap + (u[i] - u[0]) * slack;
    pts.emplace_back(std::cos(a), std::sin(a));
  }
  return pts;
}

std::vector<Point> concave_octagon_points(const ConcaveOctagonSpec& spec) {
  if (!(spec.alpha >= 0.0 && spec.alpha <= 0.8))
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 0.8]");
  std::vector<Point> quad;
  if (spec.base) {
    quad.assign(spec.base->begin(), spec.base->end());
  } else {
    quad = random_convex_points({4, spec.seed, 0.15});
  }
  const Point center = build_polygon(quad).centroid();
  std::vector<Point> pts;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point mid = 0.5 * (quad[i] + quad[(i + 1) % 4]);
    pts.push_back(quad[i]);
    pts.push_back((1.0 - spec.alpha) * mid + spec.alpha * center);
  }
  return pts;
}

}  // namespace

const std::vector<Point>& split_triangle_base() {
  static const std::vector<Point> base{{0.0, 0.0}, {1.0, 0.0}, {0.3, 0.8}};
  return base;
}

const std::vector<Point>& split_hexagon_base() {
  static const std::vector<Point> base{{1.0, 0.0},   {0.55, 0.8}, {-0.45, 0.9},
                                       {-1.0, 0.1}, {-0.5, -0.8}, {0.45, -0.85}};
  return base;
}

std::vector<int> split_schedule(int num_edges, int step) {
  std::vector<int> splits(static_cast<std::size_t>(num_edges), 0);
  for (int j = 0; j < step; ++j) ++splits[static_cast<std::size_t>(j % num_edges)];
  return splits;
}

std::vector<Point> split_edges(const std::vector<Point>& corners, const std::vector<int>& splits) {
  std::vector<Point> pts;
  const std::size_t m = corners.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Point& a = corners[k];
    const Point& b = corners[(k + 1) % m];
    const int s = k < splits.size() ? splits[k] : 0;
    pts.push_back(a);
    for (int j = 1; j <= s; ++j) pts.push_back(a + (static_cast<double>(j) / (s + 1)) * (b - a));
  }
  return pts;
}

std::vector<Point> polygon_points(const PolygonFamilySpec& spec) {
  return std::visit(
      Overloaded{
          [](const RegularSpec& s) { return regular_points(s.n); },
          [](const RandomConvexSpec& s) { return random_convex_points(s); },
          [](const SplitTriangleSpec& s) {
            if (s.step < 0 || s.step > 9) throw Error(ErrorCode::InvalidArgument, "split_triangle step in [0, 9]");
            return split_edges(split_triangle_base(), split_schedule(3, s.step));
          },
          [](const SplitHexagonSpec& s) {
            if (s.step < 0 || s.step > 18) throw Error(ErrorCode::InvalidArgument, "split_hexagon step in [0, 18]");
            return split_edges(split_hexagon_base(), split_schedule(6, s.step));
          },
          [](const ConcaveOctagonSpec& s) { return concave_octagon_points(s); },
      },
      spec);
}

Polygon make_polygon(const PolygonFamilySpec& spec) { return build_polygon(polygon_points(spec)); }

// ---------------------------------------------------------------------------

std::string to_string(MeshFamily family) {
  switch (family) {
    case MeshFamily::Honeycomb: return "honeycomb";
    case MeshFamily::CutCornerOctagon: return "cut_corner_octagon";
    case MeshFamily::ConcaveStar: return "concave_star";
    case MeshFamily::Triangulation: return "triangulation";
    case MeshFamily::SquareGrid: return "square_grid";
  }
  return "unknown";
}

MeshFamily parse_mesh_family(const std::string& name) {
  std::string n = name;
  std::replace(n.begin(), n.end(), '-', '_');
  for (MeshFamily f : {MeshFamily::Honeycomb, MeshFamily::CutCornerOctagon, MeshFamily::ConcaveStar,
                       MeshFamily::Triangulation, MeshFamily::SquareGrid}) {
    if (n == to_string(f)) return f;
  }
  if (n == "cut_corner") return MeshFamily::CutCornerOctagon;
  throw Error(ErrorCode::InvalidArgument, "unknown mesh family '" + name + "'");
}

int default_base_resolution(MeshFamily family) {
  switch (family) {
    case MeshFamily::Honeycomb: return 18;
    case MeshFamily::CutCornerOctagon: return 10;
    case MeshFamily::ConcaveStar: return 18;
    case MeshFamily::Triangulation: return 8;
    case MeshFamily::SquareGrid: return 4;
  }
  return 4;
}

namespace {

std::vector<Point> clip_to_box(std::vector<Point> poly, double x0, double y0, double x1, double y1) {
  auto clip = [](const std::vector<Point>& in, auto inside, auto cut) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Point& a = in[i];
      const Point& b = in[(i + 1) % in.size()];
      const bool ia = inside(a);
      const bool ib = inside(b);
      if (ia) out.push_back(a);
      if (ia != ib) out.push_back(cut(a, b));
    }
    return out;
  };
  auto vcut = [](double x) {
    return [x](const Point& a, const Point& b) {
      const double t = (x - a.x()) / (b.x() - a.x());
      return Point(x, a.y() + t * (b.y() - a.y()));
    };
  };
  auto hcut = [](double y) {
    return [y](const Point& a, const Point& b) {
      const double t = (y - a.y()) / (b.y() - a.y());
      return Point(a.x() + t * (b.x() - a.x()), y);
    };
  };
  poly = clip(poly, [x0](const Point& p) { return p.x() >= x0; }, vcut(x0));
  poly = clip(poly, [x1](const Point& p) { return p.x() <= x1; }, vcut(x1));
  poly = clip(poly, [y0](const Point& p) { return p.y() >= y0; }, hcut(y0));
  poly = clip(poly, [y1](const Point& p) { return p.y() <= y1; }, hcut(y1));
  return poly;
}

// Flat-topped hexagons on a lattice commensurate with the square: the outer
// columns and the first/last rows are cut through hexagon centres, so the
// boundary cells are half (pentagon) or quarter (quadrilateral) hexagons.
// Lattice units: x in steps of s/2, y in steps of h; the hexagons are regular up
// to the small stretch needed to fit whole rows.
PolygonalMesh honeycomb(int columns, int rows) {
  const int xmax = 3 * columns;  // centres at x = 3 i
  const int ymax = 2 * rows;     // even-column centres at y = 2 j
  MeshBuilder builder;
  for (int i = 0; i <= columns; ++i) {
    const bool odd = i % 2 == 1;
    for (int j = -1; j <= rows; ++j) {
      const double cx = 3.0 * i;
      const double cy = 2.0 * j + (odd ? 1.0 : 0.0);
      std::vector<Point> hex{{cx + 2, cy},     {cx + 1, cy + 1}, {cx - 1, cy + 1},
                             {cx - 2, cy},     {cx - 1, cy - 1}, {cx + 1, cy - 1}};
      auto clipped = clip_to_box(hex, 0.0, 0.0, xmax, ymax);
      if (clipped.size() < 3 || signed_area(clipped) < 1e-9) continue;
      for (Point& p : clipped) p = Point(p.x() / xmax, p.y() / ymax);
      builder.add_cell(clipped);
    }
  }
  return std::move(builder).build();
}

PolygonalMesh cut_corner_octagons(int n, double c) {
  const double L = 1.0 / n;
  const double d = c * L;
  auto X = [n](int i) { return static_cast<double>(i) / n; };
  MeshBuilder builder;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x0 = X(i), x1 = X(i + 1), y0 = X(j), y1 = X(j + 1);
      builder.add_cell({{x0 + d, y0}, {x1 - d, y0}, {x1, y0 + d}, {x1, y1 - d},
                        {x1 - d, y1}, {x0 + d, y1}, {x0, y1 - d}, {x0, y0 + d}});
    }
  }
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const double x = X(i), y = X(j);
      const bool left = i == 0, right = i == n, bottom = j == 0, top = j == n;
      std::vector<Point> loop;
      if (!left && !right && !bottom && !top) {
        loop = {{x, y - d}, {x + d, y}, {x, y + d}, {x - d, y}};
      } else if ((left || right) && (bottom || top)) {
        const double sx = left ? 1.0 : -1.0;
        const double sy = bottom ? 1.0 : -1.0;
        loop = {{x, y}, {x + sx * d, y}, {x, y + sy * d}};
      } else if (bottom || top) {
        const double sy = bottom ? 1.0 : -1.0;
        loop = {{x - d, y}, {x + d, y}, {x, y + sy * d}};
      } else {
        const double sx = left ? 1.0 : -1.0;
        loop = {{x, y - d}, {x, y + d}, {x + sx * d, y}};
      }
      if (signed_area(loop) < 0.0) std::reverse(loop.begin(), loop.end());
      builder.add_cell(loop);
    }
  }
  return std::move(builder).build();
}

// Checkerboard of octagons on a square grid: every interior edge midpoint is
// pulled towards the centre of its "black" neighbour (i + j even), which turns
// the black cells into concave stars and bulges the white cells outward.
// Midpoints on the domain boundary stay in place.
PolygonalMesh concave_star(int n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::InvalidArgument, "concave_star alpha must lie in (0, 1)");
  const double L = 1.0 / n;
  auto X = [n](int i) { return static_cast<double>(i) / n; };
  // Midpoint of the vertical grid segment x = X(i), y in [X(j), X(j+1)].
  auto vmid = [&](int i, int j) {
    Point m(X(i), 0.5 * (X(j) + X(j + 1)));
    if (i > 0 && i < n) m.x() += ((i + j) % 2 == 0 ? 1.0 : -1.0) * alpha * 0.5 * L;
    return m;
  };
  // Midpoint of the horizontal grid segment y = X(j), x in [X(i), X(i+1)].
  auto hmid = [&](int i, int j) {
    Point m(0.5 * (X(i) + X(i + 1)), X(j));
    if (j > 0 && j < n) m.y() += ((i + j) % 2 == 0 ? 1.0 : -1.0) * alpha * 0.5 * L;
    return m;
  };
  MeshBuilder builder;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x0 = X(i), x1 = X(i + 1), y0 = X(j), y1 = X(j + 1);
      builder.add_cell({{x0, y0}, hmid(i, j), {x1, y0}, vmid(i + 1, j),
                        {x1, y1}, hmid(i, j + 1), {x0, y1}, vmid(i, j)});
    }
  }
  return std::move(builder).build();
}

PolygonalMesh square_grid(int n, bool split) {
  auto X = [n](int i) { return static_cast<double>(i) / n; };
  MeshBuilder builder;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point a(X(i), X(j)), b(X(i + 1), X(j)), c(X(i + 1), X(j + 1)), d(X(i), X(j + 1));
      if (split) {
        builder.add_cell({a, b, c});
        builder.add_cell({a, c, d});
      } else {
        builder.add_cell({a, b, c, d});
      }
    }
  }
  return std::move(builder).build();
}

}  // namespace

PolygonalMesh make_mesh(const MeshFamilySpec& spec) {
  if (spec.level < 0 || spec.level > 8) throw Error(ErrorCode::InvalidArgument, "mesh level in [0, 8]");
  const int base = spec.base_resolution > 0 ? spec.base_resolution : default_base_resolution(spec.kind);
  const int n = base << spec.level;
  PolygonalMesh mesh = [&] {
    switch (spec.kind) {
      case MeshFamily::Honeycomb: {
        // Rows chosen so the hexagons are as close to regular as the lattice allows.
        const int rows = std::max(1, static_cast<int>(std::lround(base * std::sqrt(3.0) / 2.0))) << spec.level;
        return honeycomb(n, rows);
      }
      case MeshFamily::CutCornerOctagon: return cut_corner_octagons(n, kCutCornerFraction);
      case MeshFamily::ConcaveStar: return concave_star(n, spec.alpha);
      case MeshFamily::Triangulation: return square_grid(n, true);
      case MeshFamily::SquareGrid: return square_grid(n, false);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown mesh family");
  }();
  return PolygonalMesh(mesh.vertices(), mesh.cells(),
                       to_string(spec.kind) + "_L" + std::to_string(spec.level));
}

}  // namespace e2vem
