#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gns/geometry.hpp"

namespace gns {

// Gradient map that is affine on each cell of a polyhedral subdivision:
// grad(z) = jacobians[k] z + offsets[k] on cells[k]. Cells are closed and the
// formulas agree on overlaps.
struct PiecewiseAffineGradient {
  std::vector<Polyhedron> cells;
  std::vector<Matrix> jacobians;
  std::vector<Vector> offsets;
};

// Minimization problem with a continuous, piecewise-smooth gradient. Either a
// polyhedral graph of the gradient is available (pwa + graph), or pointwise
// oracles supply Newton directions and limiting Hessian candidates.
struct C11Problem {
  std::string name;
  int n = 0;
  std::function<double(const Vector&)> phi;  // null when no value oracle exists
  std::function<Vector(const Vector&)> grad;
  std::optional<PiecewiseAffineGradient> pwa;
  std::optional<PolyhedralUnion> graph;  // gph grad when pwa is present
  std::function<std::vector<Vector>(const Vector&)> direction_candidates;
  std::function<std::vector<Matrix>(const Vector&)> hessian_candidates;
  std::optional<Vector> solution;
};

// Prox-regular (possibly nonconvex) problem posed through its subgradient
// graph. prox_ref is the exact proximal map; r and epsilon are the
// prox-regularity constants (r = 0 for convex). in_start_region tests
// membership in the range of I + lambda * subgradient (null = everywhere).
struct ProxRegularProblem {
  std::string name;
  int n = 0;
  std::function<double(const Vector&)> phi;  // extended-real valued
  PolyhedralUnion subgradient_graph;
  std::function<Vector(const Vector&, double)> prox_ref;
  bool convex = false;
  double r = 0.0;
  double epsilon = 1.0;
  std::function<bool(const Vector&, double)> in_start_region;
  std::optional<Vector> solution;
};

PolyhedralUnion graph_of_pwa(const PiecewiseAffineGradient& pwa);

// Eight conic sectors at 45-degree spacing with a quadratic on each; the
// gradient is continuous, piecewise linear, with four distinct Jacobians
// meeting at the origin. Minimizer (0, 0).
C11Problem klatte_kummer();

// phi(x, y) = x|x|/2 + y|y|/2, gradient (|x|, |y|). Minimizer (0, 0).
C11Problem abs_square_2d();

// One-dimensional gradient psi(x) = x^2 sin(1/x) + 2x (0 at x = 0). No value
// oracle; Newton directions and Hessian candidates come from pointwise
// formulas. Stationary point 0.
C11Problem oscillatory();

// phi = <Qx, x>/2 - <q, x> on a single cell. Q must be symmetric positive
// definite; minimizer solves Qx = q.
C11Problem quadratic_problem(const Matrix& Q, const Vector& q);

// Nonconvex one-dimensional potential on [-1, 1] whose subgradient graph has
// five branches; prox-regular with r = 1. Equilibrium at 0.
ProxRegularProblem mechanical_equilibrium();

// Convex quadratic posed as a prox-regular problem (r = 0, any lambda > 0).
ProxRegularProblem quadratic_prox_problem(const Matrix& Q, const Vector& q);

// Constant interval map: graph R x [0, 1].
PolyhedralUnion fixture_interval_constant();

// Isolated point plus a halfplane: {(0,0)} u (R x [1, inf)).
PolyhedralUnion fixture_isolated_union();

// Named problem as exposed by the CLI. Exactly one computational facet is
// guaranteed: a smooth problem, a prox problem, or a bare graph to query.
struct NamedProblem {
  std::string name;
  std::optional<C11Problem> smooth;
  std::optional<ProxRegularProblem> prox;
  std::optional<PolyhedralUnion> graph;
};

std::vector<std::string> problem_names();
NamedProblem find_problem(const std::string& name);

}  // namespace gns
