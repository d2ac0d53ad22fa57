#include "gns/solver_c11.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gns {

namespace {

bool lex_better(const Vector& a, const Vector& b) {
  double na = a.norm(), nb = b.norm();
  if (na < nb - 1e-12) return true;
  if (na > nb + 1e-12) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - 1e-12) return true;
    if (a(i) > b(i) + 1e-12) return false;
  }
  return false;
}

std::optional<Vector> select_from_candidates(const std::vector<Vector>& cands,
                                             const SelectionRule& rule, int k) {
  if (cands.empty()) return std::nullopt;
  switch (rule.kind) {
    case SelectionRule::Kind::MinNorm: {
      Vector best = cands.front();
      for (const Vector& c : cands)
        if (lex_better(c, best)) best = c;
      return best;
    }
    case SelectionRule::Kind::First:
      return cands.front();
    case SelectionRule::Kind::Scripted: {
      if (k < 0 || static_cast<std::size_t>(k) >= rule.script.size())
        throw ScriptViolation("script exhausted at step " + std::to_string(k));
      const Vector& d = rule.script[static_cast<std::size_t>(k)];
      for (const Vector& c : cands)
        if (c.size() == d.size() && (c - d).lpNorm<Eigen::Infinity>() <= 1e-9) return d;
      throw ScriptViolation("scripted direction is not a valid step at " + std::to_string(k));
    }
  }
  return std::nullopt;
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

bool cycles_back(const std::vector<IterateRecord>& hist, const Vector& x, int window) {
  int k = static_cast<int>(hist.size());
  for (int j = std::max(0, k - window); j < k; ++j)
    if ((x - hist[static_cast<std::size_t>(j)].x).norm() <= 1e-12) return true;
  return false;
}

SolveTrace make_trace(const C11Problem& p, const char* solver, const SolverConfig& cfg) {
  SolveTrace t;
  t.problem = p.name;
  t.solver = solver;
  t.tol = cfg.tol;
  t.max_iter = cfg.max_iter;
  t.selection = selection_name(cfg.selection);
  return t;
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::MaxIterations:
      return "max-iterations";
    case SolveStatus::Cycle:
      return "cycle";
    case SolveStatus::DirectionInfeasible:
      return "direction-infeasible";
    case SolveStatus::BaselineSingular:
      return "baseline-singular";
  }
  return "unknown";
}

SolveStatus solve_status_from_string(const std::string& s) {
  if (s == "converged") return SolveStatus::Converged;
  if (s == "max-iterations") return SolveStatus::MaxIterations;
  if (s == "cycle") return SolveStatus::Cycle;
  if (s == "direction-infeasible") return SolveStatus::DirectionInfeasible;
  if (s == "baseline-singular") return SolveStatus::BaselineSingular;
  throw Error("unknown solve status: " + s);
}

std::string selection_name(const SelectionRule& rule) {
  switch (rule.kind) {
    case SelectionRule::Kind::MinNorm:
      return "min-norm";
    case SelectionRule::Kind::First:
      return "first";
    case SelectionRule::Kind::Scripted:
      return "scripted";
  }
  return "min-norm";
}

SolveTrace newton_c11(const C11Problem& p, const Vector& x0, const SolverConfig& cfg) {
  if (x0.size() != p.n) throw DimensionMismatch("newton_c11: start point has wrong dimension");
  if (!p.graph && !p.direction_candidates)
    throw Unsupported("newton_c11: problem provides no Newton direction oracle");

  SolveTrace t = make_trace(p, "c11", cfg);
  Vector x = x0;
  for (int k = 0;; ++k) {
    if (!x.allFinite()) throw NonFiniteIterate("newton_c11: iterate is not finite");
    Vector r = p.grad(x);
    if (!r.allFinite()) throw NonFiniteIterate("newton_c11: gradient is not finite");
    bool cyc = cycles_back(t.iterates, x, cfg.cycle_window);
    t.iterates.push_back({k, x, r, Vector(), r.norm(), 1.0});
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
    std::optional<Vector> d;
    if (p.graph) {
      DirectionSet gamma = direction_set(*p.graph, x, r);
      d = select_direction(gamma, cfg.selection, k);
    } else {
      d = select_from_candidates(p.direction_candidates(x), cfg.selection, k);
    }
    if (!d) {
      t.status = SolveStatus::DirectionInfeasible;
      break;
    }
    double step = cfg.line_search ? backtracking_linesearch(p, x, *d, cfg.armijo_c, cfg.shrink)
                                  : 1.0;
    t.iterates.back().direction = *d;
    t.iterates.back().step = step;
    x += step * (*d);
  }
  finalize_ratios(t, p.solution);
  return t;
}

double backtracking_linesearch(const C11Problem& p, const Vector& x, const Vector& d, double c,
                               double shrink) {
  if (!p.phi) throw Unsupported("backtracking_linesearch: problem has no value oracle");
  double slope = p.grad(x).dot(d);
  if (slope >= 0.0)
    throw NotDescentDirection("backtracking_linesearch: nonnegative directional derivative");
  double phi0 = p.phi(x);
  double t = 1.0;
  for (int i = 0; i < 60; ++i) {
    if (p.phi(x + t * d) <= phi0 + c * t * slope) return t;
    t *= shrink;
  }
  throw LineSearchStalled("backtracking_linesearch: no acceptable step in 60 shrinks");
}

std::vector<Matrix> limiting_hessians(const C11Problem& p, const Vector& x) {
  if (!p.pwa)
    throw Unsupported("limiting_hessians: problem has no piecewise-affine gradient structure");
  std::vector<Matrix> out;
  for (std::size_t kcell = 0; kcell < p.pwa->cells.size(); ++kcell) {
    if (!p.pwa->cells[kcell].contains(x)) continue;
    const Matrix& J = p.pwa->jacobians[kcell];
    bool dup = false;
    for (const Matrix& m : out)
      if ((m - J).lpNorm<Eigen::Infinity>() <= 1e-12) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(J);
  }
  if (out.empty()) throw PointNotInSet("limiting_hessians: point is outside every cell");
  return out;
}

SolveTrace semismooth_newton(const C11Problem& p, const Vector& x0, const SolverConfig& cfg) {
  if (x0.size() != p.n)
    throw DimensionMismatch("semismooth_newton: start point has wrong dimension");
  if (!p.pwa)
    throw Unsupported("semismooth_newton: problem has no piecewise-affine gradient structure");

  SolveTrace t = make_trace(p, "ssn", cfg);
  Vector x = x0;
  for (int k = 0;; ++k) {
    if (!x.allFinite()) throw NonFiniteIterate("semismooth_newton: iterate is not finite");
    Vector r = p.grad(x);
    bool cyc = cycles_back(t.iterates, x, cfg.cycle_window);
    t.iterates.push_back({k, x, r, Vector(), r.norm(), 1.0});
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
    Matrix A = limiting_hessians(p, x).front();
    Eigen::FullPivLU<Matrix> lu(A);
    if (std::abs(lu.determinant()) < 1e-12) {
      t.status = SolveStatus::BaselineSingular;
      break;
    }
    Vector d = lu.solve(-r);
    double step = cfg.line_search ? backtracking_linesearch(p, x, d, cfg.armijo_c, cfg.shrink)
                                  : 1.0;
    t.iterates.back().direction = d;
    t.iterates.back().step = step;
    x += step * d;
  }
  finalize_ratios(t, p.solution);
  return t;
}

namespace {

// Coefficients of lambda -> det(lambda A + (1 - lambda) B), degree <= n,
// recovered from n + 1 equispaced samples.
Vector det_poly_coeffs(const Matrix& A, const Matrix& B) {
  const int n = static_cast<int>(A.rows());
  Matrix V(n + 1, n + 1);
  Vector y(n + 1);
  for (int s = 0; s <= n; ++s) {
    double lam = (n == 0) ? 0.0 : static_cast<double>(s) / n;
    Matrix M = lam * A + (1.0 - lam) * B;
    y(s) = M.determinant();
    double pw = 1.0;
    for (int j = 0; j <= n; ++j) {
      V(s, j) = pw;
      pw *= lam;
    }
  }
  return V.fullPivLu().solve(y);
}

std::vector<double> real_roots_in_unit_interval(const Vector& coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  double scale = coeffs.lpNorm<Eigen::Infinity>();
  while (deg > 0 && std::abs(coeffs(deg)) <= 1e-12 * (1.0 + scale)) --deg;
  std::vector<double> roots;
  if (deg == 0) return roots;  // constant polynomial: no isolated roots
  Matrix C = Matrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -coeffs(i) / coeffs(deg);
  Eigen::EigenSolver<Matrix> es(C);
  for (int i = 0; i < deg; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-8) continue;
    double lam = z.real();
    // Polish on the fitted polynomial.
    for (int it = 0; it < 8; ++it) {
      double f = 0.0, df = 0.0, pw = 1.0;
      for (int j = 0; j <= deg; ++j) {
        f += coeffs(j) * pw;
        if (j + 1 <= deg) df += coeffs(j + 1) * (j + 1) * pw;
        pw *= lam;
      }
      if (std::abs(df) < 1e-300) break;
      lam -= f / df;
    }
    if (lam >= -1e-9 && lam <= 1.0 + 1e-9) roots.push_back(std::clamp(lam, 0.0, 1.0));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::optional<SingularCombination> singular_convex_combination(const std::vector<Matrix>& mats) {
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j) {
      Vector coeffs = det_poly_coeffs(mats[i], mats[j]);
      double scale = coeffs.lpNorm<Eigen::Infinity>();
      if (scale <= 1e-12) {
        // Identically singular segment.
        return SingularCombination{static_cast<int>(i), static_cast<int>(j), 0.0};
      }
      for (double lam : real_roots_in_unit_interval(coeffs)) {
        Matrix M = lam * mats[i] + (1.0 - lam) * mats[j];
        if (std::abs(M.determinant()) <= 1e-10)
          return SingularCombination{static_cast<int>(i), static_cast<int>(j), lam};
      }
    }
  return std::nullopt;
}

double semismoothstar_residual(const C11Problem& p, const Vector& x, const Vector& xbar) {
  Vector dx = x - xbar;
  double nn = dx.norm();
  if (nn <= 0.0) throw Error("semismoothstar_residual: points must differ");
  std::vector<Matrix> hs;
  if (p.pwa)
    hs = limiting_hessians(p, x);
  else if (p.hessian_candidates)
    hs = p.hessian_candidates(x);
  else
    throw Unsupported("semismoothstar_residual: no Hessian information available");
  Vector gx = p.grad(x);
  Vector gbar = p.grad(xbar);
  double worst = 0.0;
  for (const Matrix& J : hs) worst = std::max(worst, (gx - gbar - J * dx).norm() / nn);
  return worst;
}

}  // namespace gns
