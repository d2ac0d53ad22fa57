#include <doctest.h>

#include <cmath>

#include "gns/problems.hpp"
#include "gns/solver_c11.hpp"
#include "helpers.hpp"

using namespace gns;
using gnstest::vec1;
using gnstest::vec2;

namespace {

// One full-space cell whose Jacobian is singular; the gradient never vanishes.
C11Problem degenerate_affine() {
  PiecewiseAffineGradient pwa;
  pwa.cells = {Polyhedron::full_space(2)};
  Matrix J(2, 2);
  J << 1, 0, 0, 0;
  pwa.jacobians = {J};
  pwa.offsets = {vec2(0, -1)};
  C11Problem p;
  p.name = "degenerate";
  p.n = 2;
  p.pwa = pwa;
  p.graph = graph_of_pwa(pwa);
  p.grad = [J](const Vector& z) -> Vector { return J * z + vec2(0, -1); };
  return p;
}

}  // namespace

TEST_SUITE("solver-c11") {

TEST_CASE("status and selection names round-trip") {
  for (SolveStatus s : {SolveStatus::Converged, SolveStatus::MaxIterations, SolveStatus::Cycle,
                        SolveStatus::DirectionInfeasible, SolveStatus::BaselineSingular})
    CHECK(solve_status_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(solve_status_from_string("bogus"), Error);
  CHECK(selection_name(SelectionRule::min_norm()) == "min-norm");
  CHECK(selection_name(SelectionRule::first()) == "first");
  CHECK(selection_name(SelectionRule::scripted({})) == "scripted");
}

TEST_CASE("one step from a sector interior") {
  C11Problem p = klatte_kummer();
  SolverConfig cfg;
  SolveTrace t = newton_c11(p, vec2(0.05, 0.02), cfg);
  CHECK(t.status == SolveStatus::Converged);
  CHECK(t.steps() == 1);
  CHECK(t.final_x().norm() <= 1e-12);
  CHECK(t.problem == "klatte-kummer");
  CHECK(t.solver == "c11");
  REQUIRE(t.iterates.size() == 2);
  CHECK(t.iterates[0].k == 0);
  CHECK(t.iterates[1].k == 1);
  CHECK(t.iterates[0].residual_norm ==
        doctest::Approx(p.grad(vec2(0.05, 0.02)).norm()));
  // the step actually taken is x1 - x0
  CHECK((t.iterates[0].x + t.iterates[0].direction - t.iterates[1].x).norm() <= 1e-14);
  CHECK(t.iterates[1].direction.size() == 0);
}

TEST_CASE("sector-boundary starts converge fast") {
  C11Problem p = klatte_kummer();
  SolverConfig cfg;
  for (const Vector& x0 : {vec2(0.1, 0.1), vec2(0.0, 0.1), vec2(-0.07, 0.07), vec2(-0.1, 0.0),
                           vec2(0.02, -0.09)}) {
    SolveTrace t = newton_c11(p, x0, cfg);
    CHECK(t.status == SolveStatus::Converged);
    CHECK(t.steps() <= 25);
    CHECK(t.final_x().norm() <= 1e-8);
  }
}

TEST_CASE("scripted selection can force a cycle") {
  C11Problem p = abs_square_2d();
  SolverConfig cfg;
  cfg.selection = SelectionRule::scripted({vec2(1, -0.7), vec2(-1, 0.7)});
  SolveTrace t = newton_c11(p, vec2(0, 0.7), cfg);
  CHECK(t.status == SolveStatus::Cycle);
  REQUIRE(t.iterates.size() == 3);
  CHECK((t.iterates[2].x - t.iterates[0].x).norm() <= 1e-12);

  SolverConfig bad;
  bad.selection = SelectionRule::scripted({vec2(5, 5)});
  CHECK_THROWS_AS(newton_c11(p, vec2(0, 0.7), bad), ScriptViolation);
}

TEST_CASE("minimum-norm selection stops at the kink minimizer") {
  C11Problem p = abs_square_2d();
  SolverConfig cfg;
  SolveTrace t = newton_c11(p, vec2(0, 0.7), cfg);
  CHECK(t.status == SolveStatus::Converged);
  CHECK(t.steps() <= 2);
  CHECK(t.final_x().norm() <= 1e-10);
}

TEST_CASE("backtracking line search") {
  Matrix Q = Matrix::Identity(1, 1);
  C11Problem p = quadratic_problem(Q, Vector::Zero(1));
  // sufficient-decrease with c = 0.99 forces t <= 0.02; first power of 1/2
  // below that is 1/64
  double t = backtracking_linesearch(p, vec1(1.0), vec1(-1.0), 0.99, 0.5);
  CHECK(t == 1.0 / 64.0);
  // the Newton step passes Armijo at full length
  CHECK(backtracking_linesearch(p, vec1(1.0), vec1(-1.0), 0.5, 0.5) == 1.0);
  CHECK_THROWS_AS(backtracking_linesearch(p, vec1(1.0), vec1(1.0), 0.5, 0.5),
                  NotDescentDirection);
  CHECK_THROWS_AS(backtracking_linesearch(oscillatory(), vec1(1.0), vec1(-1.0), 0.5, 0.5),
                  Unsupported);

  SolverConfig cfg;
  cfg.line_search = true;
  SolveTrace tr = newton_c11(p, vec1(1.0), cfg);
  CHECK(tr.status == SolveStatus::Converged);
  CHECK(tr.iterates.front().step == 1.0);
}

TEST_CASE("baseline semismooth Newton") {
  Matrix Q(2, 2);
  Q << 2.0, 0.5, 0.5, 1.5;
  C11Problem p = quadratic_problem(Q, vec2(1, -1));
  SolverConfig cfg;
  SolveTrace t = semismooth_newton(p, vec2(3, -4), cfg);
  CHECK(t.status == SolveStatus::Converged);
  CHECK(t.steps() == 1);
  CHECK(t.solver == "ssn");
  CHECK((t.final_x() - *p.solution).norm() <= 1e-10);

  SolveTrace s = semismooth_newton(degenerate_affine(), vec2(1, 1), cfg);
  CHECK(s.status == SolveStatus::BaselineSingular);
  CHECK(s.steps() == 0);

  CHECK_THROWS_AS(semismooth_newton(oscillatory(), vec1(1.0), cfg), Unsupported);
}

TEST_CASE("limiting Hessian enumeration") {
  C11Problem p = klatte_kummer();
  auto at_origin = limiting_hessians(p, vec2(0, 0));
  REQUIRE(at_origin.size() == 4);
  Matrix A1(2, 2), A2(2, 2);
  A1 << 0, -1, -1, 2;
  A2 << -2, 1, 1, 0;
  CHECK((at_origin[0] - A1).norm() == 0.0);
  CHECK((at_origin[1] - A2).norm() == 0.0);

  auto interior = limiting_hessians(p, vec2(0.5, 0.2));
  REQUIRE(interior.size() == 1);
  CHECK((interior[0] - A1).norm() == 0.0);

  auto edge = limiting_hessians(p, vec2(0.3, 0.3));
  REQUIRE(edge.size() == 2);
  CHECK((edge[0] - A1).norm() == 0.0);
  CHECK((edge[1] - A2).norm() == 0.0);

  CHECK_THROWS_AS(limiting_hessians(oscillatory(), vec1(0.0)), Unsupported);

  PiecewiseAffineGradient off;
  Polyhedron cell(1);
  cell.add_inequality(Vector::Constant(1, -1.0), -1.0);  // x >= 1
  off.cells = {cell};
  off.jacobians = {Matrix::Constant(1, 1, 2.0)};
  off.offsets = {Vector::Zero(1)};
  C11Problem q;
  q.name = "offset-cell";
  q.n = 1;
  q.pwa = off;
  CHECK_THROWS_AS(limiting_hessians(q, vec1(0.0)), PointNotInSet);
}

TEST_CASE("singular segment search") {
  Matrix I = Matrix::Identity(2, 2);

  auto flip = singular_convex_combination({I, Matrix(-I)});
  REQUIRE(flip);
  CHECK(flip->i == 0);
  CHECK(flip->j == 1);
  CHECK(flip->lambda == doctest::Approx(0.5));

  CHECK_FALSE(singular_convex_combination({I, Matrix(2.0 * I)}));

  C11Problem p = klatte_kummer();
  auto hess = limiting_hessians(p, vec2(0, 0));
  auto kk = singular_convex_combination(hess);
  REQUIRE(kk);
  CHECK(kk->i == 0);
  CHECK(kk->j == 2);
  CHECK(kk->lambda == doctest::Approx(0.1464466).epsilon(1e-5));
  Matrix seg = kk->lambda * hess[kk->i] + (1.0 - kk->lambda) * hess[kk->j];
  CHECK(std::abs(seg.determinant()) <= 1e-10);

  Matrix S1(2, 2), S2(2, 2);
  S1 << 1, 0, 0, 0;
  S2 << 2, 0, 0, 0;
  auto always = singular_convex_combination({S1, S2});
  REQUIRE(always);
  CHECK(always->lambda == 0.0);
}

TEST_CASE("residual lower bound for the generalized derivative") {
  C11Problem osc = oscillatory();
  double x = 1.0 / (20.0 * M_PI);
  CHECK(semismoothstar_residual(osc, vec1(x), vec1(0.0)) == doctest::Approx(1.0));

  C11Problem kk = klatte_kummer();
  CHECK(semismoothstar_residual(kk, vec2(0.05, 0.02), vec2(0, 0)) <= 1e-12);

  CHECK_THROWS_AS(semismoothstar_residual(kk, vec2(0, 0), vec2(0, 0)), Error);
}

TEST_CASE("contraction ratios are recorded against the solution") {
  C11Problem p = klatte_kummer();
  SolverConfig cfg;
  SolveTrace t = newton_c11(p, vec2(0.1, 0.1), cfg);
  REQUIRE(t.status == SolveStatus::Converged);
  CHECK_FALSE(t.ratios.empty());
  CHECK(static_cast<int>(t.ratios.size()) <= t.steps());
  for (double r : t.ratios) CHECK(r >= 0.0);
}

}  // TEST_SUITE
