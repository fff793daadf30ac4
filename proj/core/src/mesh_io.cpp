#include "e2vem/mesh_io.hpp"

#include "e2vem/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace e2vem {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string mesh_to_json(const PolygonalMesh& mesh) {
  std::string out = "{\n";
  if (!mesh.name().empty()) out += "  \"name\": " + nlohmann::json(mesh.name()).dump() + ",\n";
  out += "  \"vertices\": [";
  const auto& vs = mesh.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out += i == 0 ? "\n    [" : ",\n    [";
    out += format_double(vs[i].x()) + ", " + format_double(vs[i].y()) + "]";
  }
  out += "\n  ],\n  \"cells\": [";
  const auto& cs = mesh.cells();
  for (std::size_t c = 0; c < cs.size(); ++c) {
    out += c == 0 ? "\n    [" : ",\n    [";
    for (std::size_t k = 0; k < cs[c].size(); ++k) {
      if (k) out += ", ";
      out += std::to_string(cs[c][k]);
    }
    out += "]";
  }
  out += "\n  ]\n}\n";
  return out;
}

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

PolygonalMesh mesh_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "malformed JSON at " + line_col(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw Error(ErrorCode::ParseError, "field \"vertices\" missing or not an array");
  if (!doc.contains("cells") || !doc["cells"].is_array())
    throw Error(ErrorCode::ParseError, "field \"cells\" missing or not an array");

  std::vector<Point> vertices;
  const auto& jv = doc["vertices"];
  vertices.reserve(jv.size());
  for (std::size_t i = 0; i < jv.size(); ++i) {
    const auto& p = jv[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw Error(ErrorCode::ParseError, "vertices[" + std::to_string(i) + "] is not a [x, y] pair");
    vertices.emplace_back(p[0].get<double>(), p[1].get<double>());
  }

  std::vector<std::vector<int>> cells;
  const auto& jc = doc["cells"];
  cells.reserve(jc.size());
  for (std::size_t c = 0; c < jc.size(); ++c) {
    const auto& cell = jc[c];
    if (!cell.is_array())
      throw Error(ErrorCode::ParseError, "cells[" + std::to_string(c) + "] is not an array");
    std::vector<int> idx;
    for (const auto& v : cell) {
      if (!v.is_number_integer())
        throw Error(ErrorCode::ParseError, "cells[" + std::to_string(c) + "] has a non-integer index");
      const auto k = v.get<long long>();
      if (k < 0 || k >= static_cast<long long>(vertices.size()))
        throw Error(ErrorCode::ParseError, "cells[" + std::to_string(c) + "] references vertex " +
                                               std::to_string(k) + " out of range");
      idx.push_back(static_cast<int>(k));
    }
    cells.push_back(std::move(idx));
  }
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw Error(ErrorCode::ParseError, "field \"name\" must be a string");
    name = doc["name"].get<std::string>();
  }
  return PolygonalMesh(std::move(vertices), std::move(cells), std::move(name));
}

void save_mesh(const PolygonalMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string() + " for writing");
  out << mesh_to_json(mesh);
}

PolygonalMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return mesh_from_json(ss.str());
}

}  // namespace e2vem
