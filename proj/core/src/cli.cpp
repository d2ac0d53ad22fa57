#include "gns/cli.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gns/compare.hpp"
#include "gns/errors.hpp"
#include "gns/lasso.hpp"
#include "gns/problems.hpp"
#include "gns/rate.hpp"
#include "gns/solver_c11.hpp"
#include "gns/solver_prox.hpp"
#include "gns/trace_io.hpp"

namespace gns {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Vector parse_vector(const std::string& csv) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw Error("invalid number in vector: " + item);
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw Error("invalid number in vector: " + item);
    vals.push_back(v);
  }
  if (vals.empty()) throw Error("empty vector argument");
  Vector out(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) out(static_cast<int>(i)) = vals[i];
  return out;
}

std::vector<Vector> parse_script(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid script JSON: ") + e.what());
  }
  if (!j.is_array()) throw Error("script must be a JSON array of vectors");
  std::vector<Vector> script;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error("script entries must be arrays of numbers");
    Vector v(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) v(static_cast<int>(i)) = row[i].get<double>();
    script.push_back(std::move(v));
  }
  return script;
}

SelectionRule make_selection(const std::string& select, const std::string& script_file) {
  if (select == "min-norm") return SelectionRule::min_norm();
  if (select == "first") return SelectionRule::first();
  if (script_file.empty()) throw Error("--select scripted requires --script");
  return SelectionRule::scripted(parse_script(script_file));
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

nlohmann::ordered_json polyhedron_to_json(const Polyhedron& p) {
  nlohmann::ordered_json out;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& h : p.inequalities()) {
    auto row = nlohmann::ordered_json::array();
    for (int i = 0; i < h.normal.size(); ++i) row.push_back(h.normal(i));
    row.push_back(h.offset);
    rows.push_back(row);
  }
  out["inequalities"] = rows;
  rows = nlohmann::ordered_json::array();
  for (const auto& h : p.equalities()) {
    auto row = nlohmann::ordered_json::array();
    for (int i = 0; i < h.normal.size(); ++i) row.push_back(h.normal(i));
    row.push_back(h.offset);
    rows.push_back(row);
  }
  out["equalities"] = rows;
  return out;
}

nlohmann::ordered_json vector_to_json(const Vector& v) {
  auto arr = nlohmann::ordered_json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

// The polyhedral graph a named problem reasons over.
PolyhedralUnion graph_of(const NamedProblem& p) {
  if (p.graph) return *p.graph;
  if (p.prox) return p.prox->subgradient_graph;
  if (p.smooth) {
    if (p.smooth->graph) return *p.smooth->graph;
    if (p.smooth->pwa) return graph_of_pwa(*p.smooth->pwa);
  }
  throw Unsupported("problem has no polyhedral graph");
}

int emit_trace(const SolveTrace& trace, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << trace_to_json(trace);
  } else {
    std::string payload;
    if (ends_with(out_file, ".json"))
      payload = trace_to_json(trace);
    else if (ends_with(out_file, ".csv"))
      payload = trace_to_csv(trace);
    else
      throw Error("output file must end in .json or .csv");
    std::ofstream out(out_file);
    if (!out) throw Error("cannot write file: " + out_file);
    out << payload;
    std::cout << "status=" << to_string(trace.status) << " iterations=" << trace.steps()
              << " residual=" << trace.iterates.back().residual_norm << "\n";
  }
  return trace.status == SolveStatus::Converged ? 0 : 2;
}

int run_solve(const std::string& problem, const std::string& instance, std::string solver,
              const Vector& x0, std::optional<double> lambda, double tol, int max_iter,
              const SelectionRule& selection, bool line_search, const std::string& out_file) {
  if (problem.empty() == instance.empty())
    throw Error("exactly one of --problem or --instance is required");

  if (!instance.empty()) {
    if (!solver.empty() && solver != "prox")
      throw Error("instance files are solved with --solver prox");
    const LassoInstance inst = lasso_instance_from_json(slurp(instance));
    ProxConfig pc;
    pc.lambda = lambda;
    pc.tol = tol;
    pc.max_iter = max_iter;
    pc.selection = selection;
    return emit_trace(lasso_solve(inst, x0, pc), out_file);
  }

  const NamedProblem p = find_problem(problem);
  if (solver.empty()) solver = p.smooth ? "c11" : "prox";
  if (solver == "prox") {
    if (!p.prox) throw Error("problem '" + problem + "' has no subgradient formulation");
    ProxConfig pc;
    pc.lambda = lambda;
    pc.tol = tol;
    pc.max_iter = max_iter;
    pc.selection = selection;
    return emit_trace(newton_prox(*p.prox, x0, pc), out_file);
  }
  if (!p.smooth) throw Error("problem '" + problem + "' has no gradient formulation");
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  cfg.selection = selection;
  cfg.line_search = line_search;
  if (solver == "c11") return emit_trace(newton_c11(*p.smooth, x0, cfg), out_file);
  return emit_trace(semismooth_newton(*p.smooth, x0, cfg), out_file);
}

int run_normal_cone(const std::string& problem, const Vector& point) {
  const NamedProblem p = find_problem(problem);
  const PolyhedralUnion graph = graph_of(p);
  const ConeUnion cone = limiting_normal_cone(graph, point);
  nlohmann::ordered_json j;
  j["dim"] = cone.dim;
  auto pieces = nlohmann::ordered_json::array();
  for (const auto& piece : cone.pieces) pieces.push_back(polyhedron_to_json(piece));
  j["pieces"] = pieces;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_diagnose(const std::string& problem, const Vector& point, const std::string& ref) {
  const NamedProblem p = find_problem(problem);
  const PolyhedralUnion graph = graph_of(p);
  Vector x, v;
  if (point.size() == graph.dim) {
    x = point.head(graph.dim / 2);
    v = point.tail(graph.dim / 2);
  } else if (2 * point.size() == graph.dim && p.smooth) {
    x = point;
    v = p.smooth->grad(x);
  } else {
    throw Error("--point must have the graph dimension, or half of it for gradient problems");
  }

  nlohmann::ordered_json j;
  j["x"] = vector_to_json(x);
  j["v"] = vector_to_json(v);
  const DirectionSet gamma = direction_set(graph, x, v);
  j["gamma_empty"] = gamma.is_empty();
  j["gamma_unbounded"] = gamma.unbounded;
  const auto dir = select_direction(gamma, SelectionRule::min_norm());
  j["min_norm_direction"] = dir ? vector_to_json(*dir) : nlohmann::ordered_json(nullptr);
  j["coderivative_kernel_trivial"] = coderivative_kernel_trivial(graph, x, v);
  j["graphical_derivative_kernel_trivial"] = graphical_derivative_kernel_trivial(graph, x, v);
  if (!ref.empty()) {
    if (!p.smooth) throw Error("--ref requires a gradient problem");
    j["semismoothstar_residual"] = semismoothstar_residual(*p.smooth, x, parse_vector(ref));
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_rate(const std::string& trace_file, const Vector& xstar) {
  const SolveTrace trace = trace_from_json(slurp(trace_file));
  const RateReport report = estimate_rate(trace, xstar);
  nlohmann::ordered_json j;
  j["classification"] = to_string(report.classification);
  j["tail_window"] = report.tail_window;
  j["ratios"] = report.ratios;
  std::cout << j.dump(2) << "\n";
  const bool ok = trace.status == SolveStatus::Converged ||
                  report.classification == RateClass::FiniteTermination;
  return ok ? 0 : 2;
}

int run_compare(const std::string& problem, const std::string& solvers, const Vector& x0,
                double tol, int max_iter) {
  const NamedProblem p = find_problem(problem);
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  const auto rows = compare_solvers(p, x0, cfg, split_csv(solvers));
  std::cout << format_table(rows);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Piecewise-polyhedral Newton solvers and variational geometry tools"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list-problems", "List built-in problem names");

  std::string problem, instance, solver, x0s, point_s, select = "min-norm";
  std::string script_file, out_file, trace_file, xstar_s, ref_s, solvers = "c11,ssn";
  double tol = 1e-10;
  int max_iter = 100;
  std::optional<double> lambda;
  bool line_search = false;

  auto* solve_cmd = app.add_subcommand("solve", "Run a solver and record the iterate trace");
  solve_cmd->add_option("--problem", problem, "Built-in problem name");
  solve_cmd->add_option("--instance", instance, "JSON instance file (sparse regression)");
  solve_cmd->add_option("--solver", solver, "c11, ssn, or prox")
      ->check(CLI::IsMember({"c11", "ssn", "prox"}));
  solve_cmd->add_option("--x0", x0s, "Start point, comma separated")->required();
  solve_cmd->add_option("--lambda", lambda, "Proximal parameter");
  solve_cmd->add_option("--tol", tol, "Residual norm tolerance");
  solve_cmd->add_option("--max-iter", max_iter, "Iteration cap");
  solve_cmd->add_option("--select", select, "Direction selection: min-norm, first, scripted")
      ->check(CLI::IsMember({"min-norm", "first", "scripted"}));
  solve_cmd->add_option("--script", script_file, "JSON file with scripted directions");
  solve_cmd->add_flag("--line-search", line_search, "Backtracking line search (c11 only)");
  solve_cmd->add_option("--out", out_file, "Write trace to .json or .csv");

  auto* nc_cmd = app.add_subcommand("normal-cone", "Limiting normal cone to a problem graph");
  nc_cmd->add_option("--problem", problem, "Built-in problem name")->required();
  nc_cmd->add_option("--point", point_s, "Graph point, comma separated")->required();

  auto* diag_cmd = app.add_subcommand("diagnose", "Newton direction set and kernel tests at a point");
  diag_cmd->add_option("--problem", problem, "Built-in problem name")->required();
  diag_cmd->add_option("--point", point_s, "Graph point (x,v) or primal point x")->required();
  diag_cmd->add_option("--ref", ref_s, "Reference point for the residual quotient");

  auto* rate_cmd = app.add_subcommand("rate", "Classify convergence of a stored trace");
  rate_cmd->add_option("--trace", trace_file, "Trace JSON file")->required();
  rate_cmd->add_option("--xstar", xstar_s, "Known solution, comma separated")->required();

  auto* cmp_cmd = app.add_subcommand("compare", "Run several solvers and tabulate the outcomes");
  cmp_cmd->add_option("--problem", problem, "Built-in problem name")->required();
  cmp_cmd->add_option("--solvers", solvers, "Comma separated list: c11,ssn,prox");
  cmp_cmd->add_option("--x0", x0s, "Start point, comma separated")->required();
  cmp_cmd->add_option("--tol", tol, "Residual norm tolerance");
  cmp_cmd->add_option("--max-iter", max_iter, "Iteration cap");

  std::vector<const char*> argv;
  argv.push_back("gns");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& name : problem_names()) std::cout << name << "\n";
      return 0;
    }
    if (solve_cmd->parsed()) {
      return run_solve(problem, instance, solver, parse_vector(x0s), lambda, tol, max_iter,
                       make_selection(select, script_file), line_search, out_file);
    }
    if (nc_cmd->parsed()) return run_normal_cone(problem, parse_vector(point_s));
    if (diag_cmd->parsed()) return run_diagnose(problem, parse_vector(point_s), ref_s);
    if (rate_cmd->parsed()) return run_rate(trace_file, parse_vector(xstar_s));
    if (cmp_cmd->parsed())
      return run_compare(problem, solvers, parse_vector(x0s), tol, max_iter);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace gns
