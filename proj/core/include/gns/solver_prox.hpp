#pragma once

#include <optional>

#include "gns/problems.hpp"
#include "gns/solver_c11.hpp"

namespace gns {

struct ProxConfig {
  std::optional<double> lambda;  // problem default when unset
  double tol = 1e-10;
  int max_iter = 100;
  SelectionRule selection{};
  int cycle_window = 8;
};

// 1 for convex problems, 1/(2r) otherwise.
double default_lambda(const ProxRegularProblem& p);

// Any lambda > 0 is valid for convex problems, lambda in (0, 1/r) otherwise.
void validate_lambda(const ProxRegularProblem& p, double lambda);

// Exact proximal point; throws OutsideStartRegion when x is not in the range
// of I + lambda * subgradient.
Vector prox(const ProxRegularProblem& p, const Vector& x, double lambda);

// phi(prox(x)) + ||x - prox(x)||^2 / (2 lambda). Needs a value oracle.
double moreau_envelope(const ProxRegularProblem& p, const Vector& x, double lambda);

// (x - prox(x)) / lambda.
Vector moreau_gradient(const ProxRegularProblem& p, const Vector& x, double lambda);

bool check_start_region(const ProxRegularProblem& p, const Vector& x, double lambda);

// Newton iteration on the subgradient inclusion: with v = (x - prox(x))/lambda
// pick w with (-v, -w) in the normal cone to the subgradient graph at
// (prox(x), v), step d = w - lambda v. Stops when ||v|| <= tol. The selection
// rule acts on the step set Gamma' - lambda v, which matches running the
// smooth solver on the envelope problem.
SolveTrace newton_prox(const ProxRegularProblem& p, const Vector& x0, const ProxConfig& cfg);

// The Moreau envelope as a smooth problem; its gradient graph is the image of
// the subgradient graph under (p, v) -> (p + lambda v, v).
C11Problem moreau_envelope_problem(const ProxRegularProblem& p, double lambda);

}  // namespace gns
