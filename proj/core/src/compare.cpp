#include "gns/compare.hpp"

#include <array>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "gns/errors.hpp"

namespace gns {

namespace {

std::string witness_for(const C11Problem& p, const Vector& ref) {
  std::vector<Matrix> hs;
  try {
    if (p.pwa)
      hs = limiting_hessians(p, ref);
    else if (p.hessian_candidates)
      hs = p.hessian_candidates(ref);
  } catch (const std::exception&) {
    return "n/a";
  }
  if (hs.size() < 2) return "none";
  const auto w = singular_convex_combination(hs);
  if (!w) return "none";
  char buf[96];
  std::snprintf(buf, sizeof buf, "det(tA%d+(1-t)A%d)=0 at t=%.6f", w->i + 1, w->j + 1, w->lambda);
  return buf;
}

}  // namespace

std::vector<CompareRow> compare_solvers(const NamedProblem& problem, const Vector& x0,
                                        const SolverConfig& cfg,
                                        const std::vector<std::string>& solvers) {
  std::vector<CompareRow> rows;
  for (const auto& name : solvers) {
    CompareRow row;
    row.solver = name;
    std::optional<SolveTrace> trace;
    std::optional<Vector> solution;
    if (problem.smooth && problem.smooth->solution) solution = problem.smooth->solution;
    if (problem.prox && problem.prox->solution) solution = problem.prox->solution;
    try {
      if (name == "c11") {
        if (!problem.smooth) throw Unsupported("problem has no gradient formulation");
        trace = newton_c11(*problem.smooth, x0, cfg);
      } else if (name == "ssn") {
        if (!problem.smooth) throw Unsupported("problem has no gradient formulation");
        trace = semismooth_newton(*problem.smooth, x0, cfg);
      } else if (name == "prox") {
        if (!problem.prox) throw Unsupported("problem has no subgradient formulation");
        ProxConfig pc;
        pc.tol = cfg.tol;
        pc.max_iter = cfg.max_iter;
        pc.selection = cfg.selection;
        pc.cycle_window = cfg.cycle_window;
        trace = newton_prox(*problem.prox, x0, pc);
      } else {
        throw Error("unknown solver: " + name);
      }
      row.status = trace->status;
      row.iterations = trace->steps();
      row.final_residual = trace->iterates.back().residual_norm;
      if (solution) row.rate = estimate_rate(*trace, *solution).classification;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    if (name == "ssn" && problem.smooth) {
      Vector ref = x0;
      if (solution)
        ref = *solution;
      else if (trace && !trace->iterates.empty())
        ref = trace->final_x();
      row.witness = witness_for(*problem.smooth, ref);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_table(const std::vector<CompareRow>& rows) {
  std::vector<std::array<std::string, 6>> cells;
  cells.push_back({"solver", "status", "iters", "residual", "rate", "witness"});
  for (const auto& row : rows) {
    std::array<std::string, 6> c;
    c[0] = row.solver;
    if (row.status) {
      c[1] = to_string(*row.status);
      c[2] = std::to_string(row.iterations);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3e", row.final_residual);
      c[3] = buf;
    } else {
      c[1] = "error: " + row.error;
      c[2] = "-";
      c[3] = "-";
    }
    c[4] = row.rate ? to_string(*row.rate) : "-";
    c[5] = row.witness.empty() ? "-" : row.witness;
    cells.push_back(std::move(c));
  }
  std::array<std::size_t, 6> width{};
  for (const auto& c : cells)
    for (int i = 0; i < 6; ++i) width[i] = std::max(width[i], c[i].size());
  std::ostringstream out;
  for (const auto& c : cells) {
    for (int i = 0; i < 6; ++i) {
      out << std::left << std::setw(static_cast<int>(width[i]) + 2) << c[i];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace gns
