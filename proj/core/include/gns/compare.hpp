#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gns/problems.hpp"
#include "gns/rate.hpp"
#include "gns/solver_c11.hpp"
#include "gns/solver_prox.hpp"

namespace gns {

struct CompareRow {
  std::string solver;
  std::optional<SolveStatus> status;  // empty when the solver threw
  std::string error;
  int iterations = 0;
  double final_residual = 0.0;
  std::optional<RateClass> rate;  // only when the solution is known
  std::string witness;            // singularity certificate note for ssn rows
};

// Runs the requested solvers ("c11", "ssn", "prox") on a problem from the
// same start and collects one row per solver. Solver failures become rows
// with the error message instead of propagating.
std::vector<CompareRow> compare_solvers(const NamedProblem& problem, const Vector& x0,
                                        const SolverConfig& cfg,
                                        const std::vector<std::string>& solvers);

std::string format_table(const std::vector<CompareRow>& rows);

}  // namespace gns
