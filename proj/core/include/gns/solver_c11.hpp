#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gns/geometry.hpp"
#include "gns/problems.hpp"

namespace gns {

enum class SolveStatus { Converged, MaxIterations, Cycle, DirectionInfeasible, BaselineSingular };

std::string to_string(SolveStatus s);
SolveStatus solve_status_from_string(const std::string& s);

struct SolverConfig {
  double tol = 1e-10;
  int max_iter = 100;
  SelectionRule selection{};
  bool line_search = false;
  double armijo_c = 0.5;
  double shrink = 0.5;
  int cycle_window = 8;
};

struct IterateRecord {
  int k = 0;
  Vector x;
  Vector residual;
  Vector direction;  // size 0 on the terminal record
  double residual_norm = 0.0;
  double step = 1.0;  // step length taken; 1 unless line search shrank it
};

struct SolveTrace {
  std::string problem;
  std::string solver;
  std::optional<double> lambda;
  double tol = 1e-10;
  int max_iter = 100;
  std::string selection = "min-norm";
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<IterateRecord> iterates;
  // Error contraction ratios against the known solution, while defined.
  std::vector<double> ratios;

  const Vector& final_x() const { return iterates.back().x; }
  double final_residual() const { return iterates.back().residual_norm; }
  int steps() const { return static_cast<int>(iterates.size()) - 1; }
};

std::string selection_name(const SelectionRule& rule);

// Newton iteration driven by the limiting normal cone of the gradient graph
// (or by the problem's pointwise direction oracle): pick d with (-grad, -d)
// in the normal cone at (x, grad(x)), step x + t*d.
SolveTrace newton_c11(const C11Problem& p, const Vector& x0, const SolverConfig& cfg);

// Largest t in {1, shrink, shrink^2, ...} with
// phi(x + t d) <= phi(x) + c t <grad phi(x), d>. Throws NotDescentDirection
// when the slope is nonnegative, LineSearchStalled after 60 shrinks.
double backtracking_linesearch(const C11Problem& p, const Vector& x, const Vector& d, double c,
                               double shrink);

// Jacobians of the affine pieces whose cells contain x, deduplicated keeping
// first occurrence. Requires piecewise-affine structure.
std::vector<Matrix> limiting_hessians(const C11Problem& p, const Vector& x);

// Baseline: x_{k+1} = x_k - A_k^{-1} grad(x_k) with A_k the Hessian of the
// first active piece; stops with BaselineSingular when |det A_k| < 1e-12.
SolveTrace semismooth_newton(const C11Problem& p, const Vector& x0, const SolverConfig& cfg);

struct SingularCombination {
  int i = 0;
  int j = 0;
  double lambda = 0.0;
};

// First pair (i < j, scanned lexicographically) whose segment
// lambda*M_i + (1-lambda)*M_j contains a singular matrix, with the smallest
// such lambda in [0, 1]; nullopt when every combination stays nonsingular.
std::optional<SingularCombination> singular_convex_combination(const std::vector<Matrix>& mats);

// max_J ||grad(x) - grad(xbar) - J (x - xbar)|| / ||x - xbar|| over the
// limiting Hessians at x. A certified lower bound for the full outer limit.
double semismoothstar_residual(const C11Problem& p, const Vector& x, const Vector& xbar);

}  // namespace gns
