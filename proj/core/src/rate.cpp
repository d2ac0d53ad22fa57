#include "gns/rate.hpp"

#include <algorithm>
#include <cmath>

#include "gns/errors.hpp"

namespace gns {

std::string to_string(RateClass c) {
  switch (c) {
    case RateClass::Superlinear: return "superlinear";
    case RateClass::Linear: return "linear";
    case RateClass::None: return "none";
    case RateClass::FiniteTermination: return "finite-termination";
  }
  return "none";
}

RateReport estimate_rate(const SolveTrace& trace, const Vector& xstar) {
  if (trace.iterates.empty()) throw Error("trace has no iterates");
  if (trace.iterates.front().x.size() != xstar.size())
    throw DimensionMismatch("solution dimension does not match trace");

  RateReport report;
  bool exact_hit = false;
  std::vector<double> dist;
  dist.reserve(trace.iterates.size());
  for (const auto& rec : trace.iterates) {
    const double e = (rec.x - xstar).norm();
    dist.push_back(e);
    if (e <= 1e-13) exact_hit = true;
  }
  for (std::size_t k = 0; k + 1 < dist.size(); ++k) {
    if (dist[k] <= 1e-15) break;
    report.ratios.push_back(dist[k + 1] / dist[k]);
  }
  report.tail_window = static_cast<int>(std::min<std::size_t>(4, report.ratios.size()));

  if (exact_hit) {
    report.classification = RateClass::FiniteTermination;
    return report;
  }
  if (report.ratios.size() < 2) {
    report.classification = RateClass::None;
    return report;
  }
  const std::size_t start = report.ratios.size() - report.tail_window;
  bool decreasing = true, below_one = true;
  for (std::size_t k = start; k < report.ratios.size(); ++k) {
    if (report.ratios[k] >= 1.0) below_one = false;
    if (k > start && report.ratios[k] >= report.ratios[k - 1]) decreasing = false;
  }
  if (decreasing && below_one && report.ratios.back() <= 0.1)
    report.classification = RateClass::Superlinear;
  else if (below_one)
    report.classification = RateClass::Linear;
  else
    report.classification = RateClass::None;
  return report;
}

}  // namespace gns
