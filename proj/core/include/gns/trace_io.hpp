#pragma once

#include <string>

#include "gns/solver_c11.hpp"

namespace gns {

std::string trace_to_json(const SolveTrace& trace);
SolveTrace trace_from_json(const std::string& text);

// Columns: k, x_1..x_n, residual_norm, ratio. The ratio cell is empty on
// rows where it is undefined.
std::string trace_to_csv(const SolveTrace& trace);

}  // namespace gns
