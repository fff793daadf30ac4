#include "e2vem/problems.hpp"

#include "e2vem/errors.hpp"
#include "e2vem/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace e2vem {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reaction(ProblemKind kind) { return kind == ProblemKind::DiffusionReaction ? 1.0 : 0.0; }
}  // namespace

ProblemSpec sine_problem(ProblemKind kind) {
  const double c = reaction(kind);
  ExactSolution u;
  u.value = [](const Point& p) { return std::sin(kTwoPi * p.x()) * std::sin(kTwoPi * p.y()); };
  u.gradient = [](const Point& p) {
    return Point(kTwoPi * std::cos(kTwoPi * p.x()) * std::sin(kTwoPi * p.y()),
                 kTwoPi * std::sin(kTwoPi * p.x()) * std::cos(kTwoPi * p.y()));
  };
  u.laplacian = [](const Point& p) {
    return -2.0 * kTwoPi * kTwoPi * std::sin(kTwoPi * p.x()) * std::sin(kTwoPi * p.y());
  };
  ProblemSpec spec;
  spec.name = "sine";
  spec.kind = kind;
  spec.f = [c](const Point& p) {
    return (2.0 * kTwoPi * kTwoPi + c) * std::sin(kTwoPi * p.x()) * std::sin(kTwoPi * p.y());
  };
  spec.dirichlet = [](const Point&) { return 0.0; };
  spec.exact = std::move(u);
  return spec;
}

ProblemSpec linear_problem(ProblemKind kind, double a, double b, double c) {
  const double r = reaction(kind);
  auto value = [a, b, c](const Point& p) { return a + b * p.x() + c * p.y(); };
  ProblemSpec spec;
  spec.name = "linear";
  spec.kind = kind;
  spec.f = [value, r](const Point& p) { return r * value(p); };
  spec.dirichlet = value;
  spec.exact = ExactSolution{value, [b, c](const Point&) { return Point(b, c); },
                             [](const Point&) { return 0.0; }};
  return spec;
}

ProblemSpec zero_problem(ProblemKind kind) {
  ProblemSpec spec = linear_problem(kind, 0.0, 0.0, 0.0);
  spec.name = "zero";
  return spec;
}

ProblemKind parse_problem_kind(const std::string& text) {
  if (text == "poisson") return ProblemKind::Poisson;
  if (text == "diffreact" || text == "diffusion_reaction" || text == "diffusion-reaction")
    return ProblemKind::DiffusionReaction;
  throw Error(ErrorCode::InvalidArgument, "unknown problem '" + text + "' (expected poisson or diffreact)");
}

std::string to_string(ProblemKind kind) {
  return kind == ProblemKind::Poisson ? "poisson" : "diffreact";
}

double residual_check(const ProblemSpec& problem, int samples, double step, unsigned long long seed) {
  if (!problem.exact) throw Error(ErrorCode::MissingExactSolution, "problem has no exact solution");
  const ScalarField& u = problem.exact->value;
  const double c = reaction(problem.kind);
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point p(0.05 + 0.9 * rng.uniform(), 0.05 + 0.9 * rng.uniform());
    double lap = 0.0;
    for (const Point& d : {Point(step, 0.0), Point(0.0, step)}) {
      lap += (-u(p + 2.0 * d) + 16.0 * u(p + d) - 30.0 * u(p) + 16.0 * u(p - d) - u(p - 2.0 * d)) /
             (12.0 * step * step);
    }
    worst = std::max(worst, std::abs(problem.f(p) + lap - c * u(p)));
  }
  return worst;
}

}  // namespace e2vem
