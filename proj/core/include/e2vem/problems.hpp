#pragma once

#include "e2vem/geometry.hpp"
#include "e2vem/quadrature.hpp"

#include <functional>
#include <optional>
#include <string>

namespace e2vem {

enum class ProblemKind { Poisson, DiffusionReaction };

using VectorField = std::function<Point(const Point&)>;

struct ExactSolution {
  ScalarField value;
  VectorField gradient;
  /// Laplacian, used only by residual checks.
  ScalarField laplacian;
};

/// -div grad U (+ U for diffusion-reaction) = f on the unit square, U = g on
/// the boundary.
struct ProblemSpec {
  std::string name;
  ProblemKind kind = ProblemKind::Poisson;
  ScalarField f;
  ScalarField dirichlet;
  std::optional<ExactSolution> exact;
};

/// U = sin(2 pi x) sin(2 pi y), homogeneous boundary data.
ProblemSpec sine_problem(ProblemKind kind);
/// U = a + b x + c y with matching boundary data and f = (reaction ? U : 0).
ProblemSpec linear_problem(ProblemKind kind, double a, double b, double c);
/// f = 0, g = 0, U = 0.
ProblemSpec zero_problem(ProblemKind kind);

/// "poisson" / "diffreact" (also "diffusion_reaction").
ProblemKind parse_problem_kind(const std::string& text);
std::string to_string(ProblemKind kind);

/// Largest |f + Lap U - c U| at `samples` pseudo-random interior points, with
/// the Laplacian taken by fourth-order central differences of step `step`.
double residual_check(const ProblemSpec& problem, int samples = 20, double step = 1e-3,
                      unsigned long long seed = 7);

}  // namespace e2vem
