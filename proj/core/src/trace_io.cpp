#include "gns/trace_io.hpp"

#include <charconv>
#include <array>

#include <json.hpp>

#include "gns/errors.hpp"

namespace gns {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

ordered_json vector_to_json(const Vector& v) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vector vector_from_json(const ordered_json& arr) {
  if (!arr.is_array()) throw Error("expected a JSON array of numbers");
  Vector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<int>(i)) = arr[i].get<double>();
  return v;
}

}  // namespace

std::string trace_to_json(const SolveTrace& trace) {
  ordered_json j;
  j["problem"] = trace.problem;
  j["solver"] = trace.solver;
  ordered_json cfg;
  if (trace.lambda)
    cfg["lambda"] = *trace.lambda;
  else
    cfg["lambda"] = nullptr;
  cfg["tol"] = trace.tol;
  cfg["max_iter"] = trace.max_iter;
  cfg["selection"] = trace.selection;
  j["config"] = cfg;
  j["status"] = to_string(trace.status);
  ordered_json iters = ordered_json::array();
  for (const auto& rec : trace.iterates) {
    ordered_json r;
    r["k"] = rec.k;
    r["x"] = vector_to_json(rec.x);
    r["residual"] = vector_to_json(rec.residual);
    r["direction"] = vector_to_json(rec.direction);
    r["residual_norm"] = rec.residual_norm;
    iters.push_back(r);
  }
  j["iterations"] = iters;
  j["ratios"] = trace.ratios;
  return j.dump(2) + "\n";
}

SolveTrace trace_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid trace JSON: ") + e.what());
  }
  SolveTrace trace;
  try {
    trace.problem = j.at("problem").get<std::string>();
    trace.solver = j.at("solver").get<std::string>();
    const auto& cfg = j.at("config");
    if (cfg.contains("lambda") && !cfg["lambda"].is_null())
      trace.lambda = cfg["lambda"].get<double>();
    trace.tol = cfg.at("tol").get<double>();
    trace.max_iter = cfg.at("max_iter").get<int>();
    trace.selection = cfg.at("selection").get<std::string>();
    trace.status = solve_status_from_string(j.at("status").get<std::string>());
    for (const auto& r : j.at("iterations")) {
      IterateRecord rec;
      rec.k = r.at("k").get<int>();
      rec.x = vector_from_json(r.at("x"));
      rec.residual = vector_from_json(r.at("residual"));
      rec.direction = vector_from_json(r.at("direction"));
      rec.residual_norm = r.at("residual_norm").get<double>();
      trace.iterates.push_back(std::move(rec));
    }
    if (j.contains("ratios"))
      trace.ratios = j["ratios"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed trace JSON: ") + e.what());
  }
  return trace;
}

std::string trace_to_csv(const SolveTrace& trace) {
  const int n = trace.iterates.empty() ? 0 : static_cast<int>(trace.iterates.front().x.size());
  std::string out = "k";
  for (int i = 1; i <= n; ++i) out += ",x_" + std::to_string(i);
  out += ",residual_norm,ratio\n";
  for (std::size_t row = 0; row < trace.iterates.size(); ++row) {
    const auto& rec = trace.iterates[row];
    out += std::to_string(rec.k);
    for (int i = 0; i < n; ++i) out += "," + format_double(rec.x(i));
    out += "," + format_double(rec.residual_norm) + ",";
    if (row >= 1 && row - 1 < trace.ratios.size()) out += format_double(trace.ratios[row - 1]);
    out += "\n";
  }
  return out;
}

}  // namespace gns
