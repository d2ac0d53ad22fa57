#pragma once

#include <optional>
#include <string>
#include <utility>

#include "gns/geometry.hpp"
#include "gns/solver_prox.hpp"

namespace gns {

// min_x 0.5 ||A x - b||^2 + mu ||x||_1
struct LassoInstance {
  Matrix A;
  Vector b;
  double mu = 1.0;

  int n() const { return static_cast<int>(A.cols()); }
  int m() const { return static_cast<int>(A.rows()); }
};

// Parses {"A": [[...], ...], "b": [...], "mu": number}.
LassoInstance lasso_instance_from_json(const std::string& text);

double lasso_objective(const LassoInstance& inst, const Vector& x);

// Subdifferential at x as a coordinate box around the smooth part.
struct LassoSubdifferential {
  Vector smooth;  // A^T (A x - b)
  Vector lo, hi;  // componentwise bounds of the subdifferential
  bool contains_zero(double tol = 0.0) const;
  double distance_to_zero() const;
};
LassoSubdifferential lasso_subdifferential(const LassoInstance& inst, const Vector& x);

// Limiting normal cone to the graph of the unit soft-threshold residual map
// t -> sign interval, at the point (t, p). Empty union when (t, p) is not on
// the graph.
ConeUnion lasso_G(double t, double p, double tol = kMembershipTol);

// Membership test w in the second-order set at (x, y) applied to v, checked
// coordinatewise through lasso_G. Throws PointNotOnGraph when y is not a
// subgradient at x.
bool lasso_second_order_contains(const LassoInstance& inst, const Vector& x, const Vector& y,
                                 const Vector& v, const Vector& w, double tol = 1e-9);

// Closed-form proximal map for diagonal A (any lambda > 0).
Vector lasso_prox_diagonal(const LassoInstance& inst, const Vector& x, double lambda);

// Exact proximal map by sign-pattern enumeration; any A with n <= 12.
Vector lasso_prox_enumerated(const LassoInstance& inst, const Vector& x, double lambda);

// Equivalent instance with diagonal matrix: A~ = diag(sqrt of Gram diagonal),
// b~ matched so the objective changes by a constant. Requires a diagonal Gram
// matrix with positive diagonal.
LassoInstance lasso_diagonalize(const LassoInstance& inst);

// One Newton step at lambda = 1 for diagonal A: returns (v, d) with
// v = x - prox(x) and the per-coordinate closed-form direction.
std::pair<Vector, Vector> lasso_newton_step_diagonal(const LassoInstance& inst, const Vector& x);

// Newton direction by branch enumeration for general A: (x - lambda v, v)
// must lie on the subgradient graph; returns the minimum-norm feasible step,
// nullopt when every branch is infeasible. Capped at n <= 12.
std::optional<Vector> lasso_direction_general(const LassoInstance& inst, const Vector& x,
                                              const Vector& v, double lambda);

// Prox-driven Newton solve. Uses the diagonal closed form when the Gram
// matrix is diagonal and lambda = 1, otherwise the general enumeration path.
SolveTrace lasso_solve(const LassoInstance& inst, const Vector& x0, const ProxConfig& cfg);

}  // namespace gns
