#include "gns/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gns {

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

int pwa_cell_index(const PiecewiseAffineGradient& pwa, const Vector& z) {
  int best = -1;
  double best_viol = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pwa.cells.size(); ++k) {
    double v = pwa.cells[k].violation(z);
    if (v <= kMembershipTol) return static_cast<int>(k);
    if (v < best_viol) {
      best_viol = v;
      best = static_cast<int>(k);
    }
  }
  return best;  // nearest cell; the formulas agree on boundaries anyway
}

}  // namespace

PolyhedralUnion graph_of_pwa(const PiecewiseAffineGradient& pwa) {
  const int n = static_cast<int>(pwa.jacobians.front().rows());
  PolyhedralUnion g;
  g.dim = 2 * n;
  for (std::size_t k = 0; k < pwa.cells.size(); ++k) {
    Polyhedron piece(2 * n);
    Vector row(2 * n);
    for (const Halfspace& q : pwa.cells[k].inequalities()) {
      row.setZero();
      row.head(n) = q.normal;
      piece.add_inequality(row, q.offset);
    }
    for (const Hyperplane& e : pwa.cells[k].equalities()) {
      row.setZero();
      row.head(n) = e.normal;
      piece.add_equality(row, e.offset);
    }
    for (int i = 0; i < n; ++i) {
      row.setZero();
      row.head(n) = -pwa.jacobians[k].row(i);
      row(n + i) = 1.0;
      piece.add_equality(row, pwa.offsets[k](i));
    }
    g.pieces.push_back(std::move(piece));
  }
  return g;
}

C11Problem klatte_kummer() {
  PiecewiseAffineGradient pwa;
  auto sector = [](double a1, double b1, double a2, double b2) {
    Polyhedron c(2);
    c.add_inequality(vec2(a1, b1), 0.0);
    c.add_inequality(vec2(a2, b2), 0.0);
    return c;
  };
  // Sectors listed counterclockwise from the positive x-axis; the second four
  // are the antipodes of the first four and reuse their quadratics.
  pwa.cells = {
      sector(0, -1, -1, 1),  // 0 <= y <= x
      sector(-1, 0, 1, -1),  // 0 <= x <= y
      sector(1, 0, -1, -1),  // x <= 0 <= x + y
      sector(0, -1, 1, 1),   // y >= 0, x + y <= 0
      sector(0, 1, 1, -1),   // y <= 0, x <= y
      sector(1, 0, -1, 1),   // x <= 0, y <= x
      sector(-1, 0, 1, 1),   // x >= 0, x + y <= 0
      sector(0, 1, -1, -1),  // y <= 0, x + y >= 0
  };
  const Matrix A1 = mat2(0, -1, -1, 2);
  const Matrix A2 = mat2(-2, 1, 1, 0);
  const Matrix A3 = mat2(2, 1, 1, 0);
  const Matrix A4 = mat2(0, -1, -1, -2);
  pwa.jacobians = {A1, A2, A3, A4, A1, A2, A3, A4};
  pwa.offsets.assign(8, Vector::Zero(2));

  C11Problem p;
  p.name = "klatte-kummer";
  p.n = 2;
  p.pwa = pwa;
  p.graph = graph_of_pwa(pwa);
  p.phi = [pwa](const Vector& z) {
    int k = pwa_cell_index(pwa, z);
    return 0.5 * z.dot(pwa.jacobians[static_cast<std::size_t>(k)] * z);
  };
  p.grad = [pwa](const Vector& z) -> Vector {
    int k = pwa_cell_index(pwa, z);
    return pwa.jacobians[static_cast<std::size_t>(k)] * z;
  };
  p.solution = Vector::Zero(2);
  return p;
}

C11Problem abs_square_2d() {
  PiecewiseAffineGradient pwa;
  auto quadrant = [](double sx, double sy) {
    Polyhedron c(2);
    c.add_inequality(vec2(-sx, 0), 0.0);
    c.add_inequality(vec2(0, -sy), 0.0);
    return c;
  };
  pwa.cells = {quadrant(1, 1), quadrant(-1, 1), quadrant(-1, -1), quadrant(1, -1)};
  pwa.jacobians = {mat2(1, 0, 0, 1), mat2(-1, 0, 0, 1), mat2(-1, 0, 0, -1), mat2(1, 0, 0, -1)};
  pwa.offsets.assign(4, Vector::Zero(2));

  C11Problem p;
  p.name = "abs-square";
  p.n = 2;
  p.pwa = pwa;
  p.graph = graph_of_pwa(pwa);
  p.phi = [](const Vector& z) {
    return 0.5 * z(0) * std::abs(z(0)) + 0.5 * z(1) * std::abs(z(1));
  };
  p.grad = [](const Vector& z) -> Vector { return vec2(std::abs(z(0)), std::abs(z(1))); };
  p.solution = Vector::Zero(2);
  return p;
}

C11Problem oscillatory() {
  auto psi = [](double x) { return x == 0.0 ? 0.0 : x * x * std::sin(1.0 / x) + 2.0 * x; };
  auto dpsi = [](double x) {
    return 2.0 * x * std::sin(1.0 / x) - std::cos(1.0 / x) + 2.0;
  };

  C11Problem p;
  p.name = "oscillatory";
  p.n = 1;
  p.grad = [psi](const Vector& z) -> Vector { return Vector::Constant(1, psi(z(0))); };
  p.direction_candidates = [psi, dpsi](const Vector& z) -> std::vector<Vector> {
    double x = z(0);
    if (x == 0.0) return {Vector::Zero(1)};
    double dp = dpsi(x);
    if (std::abs(dp) < 1e-14) return {};
    return {Vector::Constant(1, -psi(x) / dp)};
  };
  p.hessian_candidates = [dpsi](const Vector& z) -> std::vector<Matrix> {
    double x = z(0);
    if (x == 0.0) return {Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 3.0)};
    return {Matrix::Constant(1, 1, dpsi(x))};
  };
  p.solution = Vector::Zero(1);
  return p;
}

C11Problem quadratic_problem(const Matrix& Q, const Vector& q) {
  const int n = static_cast<int>(Q.rows());
  if (Q.cols() != n || q.size() != n)
    throw DimensionMismatch("quadratic_problem: shape mismatch");
  PiecewiseAffineGradient pwa;
  pwa.cells = {Polyhedron::full_space(n)};
  pwa.jacobians = {Q};
  pwa.offsets = {Vector(-q)};

  C11Problem p;
  p.name = "quadratic";
  p.n = n;
  p.pwa = pwa;
  p.graph = graph_of_pwa(pwa);
  p.phi = [Q, q](const Vector& z) { return 0.5 * z.dot(Q * z) - q.dot(z); };
  p.grad = [Q, q](const Vector& z) -> Vector { return Q * z - q; };
  p.solution = Q.ldlt().solve(q);
  return p;
}

ProxRegularProblem mechanical_equilibrium() {
  PolyhedralUnion g;
  g.dim = 2;
  {
    Polyhedron b1(2);  // x = -1, v <= 0
    b1.add_equality(vec2(1, 0), -1.0);
    b1.add_inequality(vec2(0, 1), 0.0);
    Polyhedron b2(2);  // v = -1 - x on [-1, 0]
    b2.add_equality(vec2(1, 1), -1.0);
    b2.add_inequality(vec2(-1, 0), 1.0);
    b2.add_inequality(vec2(1, 0), 0.0);
    Polyhedron b3(2);  // x = 0, -1 <= v <= 1
    b3.add_equality(vec2(1, 0), 0.0);
    b3.add_inequality(vec2(0, 1), 1.0);
    b3.add_inequality(vec2(0, -1), 1.0);
    Polyhedron b4(2);  // v = 1 + x on [0, 1]
    b4.add_equality(vec2(-1, 1), 1.0);
    b4.add_inequality(vec2(-1, 0), 0.0);
    b4.add_inequality(vec2(1, 0), 1.0);
    Polyhedron b5(2);  // x = 1, v >= 2
    b5.add_equality(vec2(1, 0), 1.0);
    b5.add_inequality(vec2(0, -1), -2.0);
    g.pieces = {b1, b2, b3, b4, b5};
  }

  auto value = [](double x) {
    if (x < -1.0 || x > 1.0) return std::numeric_limits<double>::infinity();
    return x <= 0.0 ? -x - 0.5 * x * x : x + 0.5 * x * x;
  };

  ProxRegularProblem p;
  p.name = "mech-eq";
  p.n = 1;
  p.phi = [value](const Vector& z) { return value(z(0)); };
  p.subgradient_graph = g;
  p.prox_ref = [value](const Vector& z, double lambda) -> Vector {
    double x = z(0);
    // Stationary candidate on each branch, clamped to the branch's interval;
    // the minimum of the prox objective over candidates is exact.
    double cands[5];
    cands[0] = -1.0;
    cands[1] = std::clamp((x + lambda) / (1.0 - lambda), -1.0, 0.0);
    cands[2] = 0.0;
    cands[3] = std::clamp((x - lambda) / (1.0 + lambda), 0.0, 1.0);
    cands[4] = 1.0;
    double best = cands[0];
    double best_obj = std::numeric_limits<double>::infinity();
    for (double c : cands) {
      double obj = value(c) + (c - x) * (c - x) / (2.0 * lambda);
      if (obj < best_obj) {
        best_obj = obj;
        best = c;
      }
    }
    return Vector::Constant(1, best);
  };
  p.convex = false;
  p.r = 1.0;
  p.epsilon = 1.0;
  // Every point of R is reachable as x + lambda*v along some branch when
  // 0 < lambda < 1, so the start region is the whole line.
  p.in_start_region = [](const Vector&, double) { return true; };
  p.solution = Vector::Zero(1);
  return p;
}

ProxRegularProblem quadratic_prox_problem(const Matrix& Q, const Vector& q) {
  const int n = static_cast<int>(Q.rows());
  if (Q.cols() != n || q.size() != n)
    throw DimensionMismatch("quadratic_prox_problem: shape mismatch");
  Eigen::LLT<Matrix> llt(Q);
  if (llt.info() != Eigen::Success)
    throw Error("quadratic_prox_problem: Q must be positive definite");

  PolyhedralUnion g;
  g.dim = 2 * n;
  Polyhedron piece(2 * n);
  Vector row(2 * n);
  for (int i = 0; i < n; ++i) {
    row.setZero();
    row.head(n) = -Q.row(i);
    row(n + i) = 1.0;
    piece.add_equality(row, -q(i));
  }
  g.pieces.push_back(std::move(piece));

  ProxRegularProblem p;
  p.name = "quadratic";
  p.n = n;
  p.phi = [Q, q](const Vector& z) { return 0.5 * z.dot(Q * z) - q.dot(z); };
  p.subgradient_graph = g;
  p.prox_ref = [Q, q, n](const Vector& z, double lambda) -> Vector {
    Matrix M = Matrix::Identity(n, n) + lambda * Q;
    return M.ldlt().solve(z + lambda * q);
  };
  p.convex = true;
  p.r = 0.0;
  p.solution = Q.ldlt().solve(q);
  return p;
}

PolyhedralUnion fixture_interval_constant() {
  PolyhedralUnion g;
  g.dim = 2;
  Polyhedron p(2);
  p.add_inequality(vec2(0, 1), 1.0);
  p.add_inequality(vec2(0, -1), 0.0);
  g.pieces = {p};
  return g;
}

PolyhedralUnion fixture_isolated_union() {
  PolyhedralUnion g;
  g.dim = 2;
  Polyhedron origin = Polyhedron::single_point(Vector::Zero(2));
  Polyhedron upper(2);
  upper.add_inequality(vec2(0, -1), -1.0);
  g.pieces = {origin, upper};
  return g;
}

std::vector<std::string> problem_names() {
  return {"klatte-kummer", "abs-square", "oscillatory", "mech-eq", "fixture-3-2", "fixture-3-3"};
}

NamedProblem find_problem(const std::string& name) {
  NamedProblem out;
  out.name = name;
  if (name == "klatte-kummer") {
    out.smooth = klatte_kummer();
    out.graph = out.smooth->graph;
  } else if (name == "abs-square") {
    out.smooth = abs_square_2d();
    out.graph = out.smooth->graph;
  } else if (name == "oscillatory") {
    out.smooth = oscillatory();
  } else if (name == "mech-eq") {
    out.prox = mechanical_equilibrium();
    out.graph = out.prox->subgradient_graph;
  } else if (name == "fixture-3-2") {
    out.graph = fixture_interval_constant();
  } else if (name == "fixture-3-3") {
    out.graph = fixture_isolated_union();
  } else {
    throw Error("unknown problem: " + name);
  }
  return out;
}

}  // namespace gns
