#include "gns/solver_prox.hpp"

#include <algorithm>
#include <cmath>

namespace gns {

namespace {

Polyhedron translate(const Polyhedron& p, const Vector& shift) {
  Polyhedron q(p.dim());
  for (const Halfspace& h : p.inequalities())
    q.add_inequality(h.normal, h.offset + h.normal.dot(shift));
  for (const Hyperplane& e : p.equalities())
    q.add_equality(e.normal, e.offset + e.normal.dot(shift));
  return q;
}

bool cycles_back(const std::vector<IterateRecord>& hist, const Vector& x, int window) {
  int k = static_cast<int>(hist.size());
  for (int j = std::max(0, k - window); j < k; ++j)
    if ((x - hist[static_cast<std::size_t>(j)].x).norm() <= 1e-12) return true;
  return false;
}

void finalize_ratios(SolveTrace& t, const std::optional<Vector>& sol) {
  if (!sol) return;
  std::vector<double> errs;
  errs.reserve(t.iterates.size());
  for (const IterateRecord& r : t.iterates) errs.push_back((r.x - *sol).norm());
  for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
    if (errs[k] <= 1e-15) break;
    t.ratios.push_back(errs[k + 1] / errs[k]);
  }
}

}  // namespace

double default_lambda(const ProxRegularProblem& p) {
  return p.convex ? 1.0 : 1.0 / (2.0 * p.r);
}

void validate_lambda(const ProxRegularProblem& p, double lambda) {
  if (!(lambda > 0.0)) throw Error("lambda must be positive");
  if (!p.convex && !(lambda < 1.0 / p.r))
    throw Error("lambda must be below 1/r for this problem");
}

bool check_start_region(const ProxRegularProblem& p, const Vector& x, double lambda) {
  validate_lambda(p, lambda);
  if (p.convex || !p.in_start_region) return true;
  return p.in_start_region(x, lambda);
}

Vector prox(const ProxRegularProblem& p, const Vector& x, double lambda) {
  if (x.size() != p.n) throw DimensionMismatch("prox: point has wrong dimension");
  if (!check_start_region(p, x, lambda))
    throw OutsideStartRegion("prox: point is outside the start region for this lambda");
  return p.prox_ref(x, lambda);
}

double moreau_envelope(const ProxRegularProblem& p, const Vector& x, double lambda) {
  if (!p.phi) throw Unsupported("moreau_envelope: problem has no value oracle");
  Vector pt = prox(p, x, lambda);
  return p.phi(pt) + (x - pt).squaredNorm() / (2.0 * lambda);
}

Vector moreau_gradient(const ProxRegularProblem& p, const Vector& x, double lambda) {
  Vector pt = prox(p, x, lambda);
  return (x - pt) / lambda;
}

SolveTrace newton_prox(const ProxRegularProblem& p, const Vector& x0, const ProxConfig& cfg) {
  if (x0.size() != p.n) throw DimensionMismatch("newton_prox: start point has wrong dimension");
  const double lambda = cfg.lambda ? *cfg.lambda : default_lambda(p);
  validate_lambda(p, lambda);

  SolveTrace t;
  t.problem = p.name;
  t.solver = "prox";
  t.lambda = lambda;
  t.tol = cfg.tol;
  t.max_iter = cfg.max_iter;
  t.selection = selection_name(cfg.selection);

  Vector x = x0;
  for (int k = 0;; ++k) {
    if (!x.allFinite()) throw NonFiniteIterate("newton_prox: iterate is not finite");
    if (!check_start_region(p, x, lambda))
      throw OutsideStartRegion("newton_prox: iterate left the start region");
    Vector pt = p.prox_ref(x, lambda);
    Vector v = (x - pt) / lambda;
    bool cyc = cycles_back(t.iterates, x, cfg.cycle_window);
    t.iterates.push_back({k, x, v, Vector(), v.norm(), 1.0});
    if (t.iterates.back().residual_norm <= cfg.tol) {
      t.status = SolveStatus::Converged;
      break;
    }
    if (cyc) {
      t.status = SolveStatus::Cycle;
      break;
    }
    if (k >= cfg.max_iter) {
      t.status = SolveStatus::MaxIterations;
      break;
    }
    DirectionSet gamma = direction_set(p.subgradient_graph, pt, v);
    DirectionSet steps;
    steps.dim = gamma.dim;
    steps.unbounded = gamma.unbounded;
    Vector shift = -lambda * v;
    for (const Polyhedron& piece : gamma.pieces) steps.pieces.push_back(translate(piece, shift));
    std::optional<Vector> d = select_direction(steps, cfg.selection, k);
    if (!d) {
      t.status = SolveStatus::DirectionInfeasible;
      break;
    }
    t.iterates.back().direction = *d;
    x += *d;
  }
  finalize_ratios(t, p.solution);
  return t;
}

C11Problem moreau_envelope_problem(const ProxRegularProblem& p, double lambda) {
  validate_lambda(p, lambda);
  const int n = p.n;
  Matrix T = Matrix::Identity(2 * n, 2 * n);
  T.topRightCorner(n, n) = lambda * Matrix::Identity(n, n);

  C11Problem e;
  e.name = p.name + "-envelope";
  e.n = n;
  e.graph = apply_linear_map(p.subgradient_graph, T);
  ProxRegularProblem base = p;
  e.grad = [base, lambda](const Vector& x) -> Vector {
    return (x - base.prox_ref(x, lambda)) / lambda;
  };
  if (p.phi)
    e.phi = [base, lambda](const Vector& x) {
      Vector pt = base.prox_ref(x, lambda);
      return base.phi(pt) + (x - pt).squaredNorm() / (2.0 * lambda);
    };
  e.solution = p.solution;
  return e;
}

}  // namespace gns
