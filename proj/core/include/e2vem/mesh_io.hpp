#pragma once

#include "e2vem/mesh.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace e2vem {

/// Mesh JSON: {"name": str?, "vertices": [[x, y], ...], "cells": [[i, j, k, ...], ...]}
/// with 0-based CCW cells. Doubles are written with 17 significant digits so a
/// save/load round trip is bit-exact.
std::string mesh_to_json(const PolygonalMesh& mesh);

/// Throws Error{ParseError} with line/field context on malformed input.
PolygonalMesh mesh_from_json(std::string_view text);

void save_mesh(const PolygonalMesh& mesh, const std::filesystem::path& path);
PolygonalMesh load_mesh(const std::filesystem::path& path);

/// "%.17g" rendering used by every writer in the project.
std::string format_double(double x);

}  // namespace e2vem
