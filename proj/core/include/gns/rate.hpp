#pragma once

#include <string>
#include <vector>

#include "gns/solver_c11.hpp"

namespace gns {

enum class RateClass { Superlinear, Linear, None, FiniteTermination };

std::string to_string(RateClass c);

struct RateReport {
  std::vector<double> ratios;  // ||x_{k+1} - xstar|| / ||x_k - xstar||
  RateClass classification = RateClass::None;
  int tail_window = 0;
};

// Classifies the convergence of a trace against a known solution. An iterate
// that lands on the solution (within 1e-13) counts as finite termination and
// takes precedence over ratio-based classes.
RateReport estimate_rate(const SolveTrace& trace, const Vector& xstar);

}  // namespace gns
