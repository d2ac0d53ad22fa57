#include "gns/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <json.hpp>

#include "gns/errors.hpp"

namespace gns {

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Polyhedron vertical_line() {
  Polyhedron p(2);
  p.add_equality(vec2(1, 0), 0.0);
  return p;
}

Polyhedron horizontal_line() {
  Polyhedron p(2);
  p.add_equality(vec2(0, 1), 0.0);
  return p;
}

// first >= 0, second <= 0
Polyhedron quadrant_pm() {
  Polyhedron p(2);
  p.add_inequality(vec2(-1, 0), 0.0);
  p.add_inequality(vec2(0, 1), 0.0);
  return p;
}

// first <= 0, second >= 0
Polyhedron quadrant_mp() {
  Polyhedron p(2);
  p.add_inequality(vec2(1, 0), 0.0);
  p.add_inequality(vec2(0, -1), 0.0);
  return p;
}

enum class BranchCase { Smooth, Interior, BoundaryPos, BoundaryNeg, Off };

BranchCase classify_graph_point(double t, double p, double tol) {
  if (std::abs(t) > tol) {
    const double s = t > 0 ? 1.0 : -1.0;
    return std::abs(p - s) <= tol ? BranchCase::Smooth : BranchCase::Off;
  }
  if (std::abs(p - 1.0) <= tol) return BranchCase::BoundaryPos;
  if (std::abs(p + 1.0) <= tol) return BranchCase::BoundaryNeg;
  if (std::abs(p) < 1.0) return BranchCase::Interior;
  return BranchCase::Off;
}

bool gram_is_diagonal(const Matrix& Q) {
  for (int i = 0; i < Q.rows(); ++i)
    for (int j = 0; j < Q.cols(); ++j)
      if (i != j && std::abs(Q(i, j)) > 1e-12) return false;
  return true;
}

void check_sizes(const LassoInstance& inst, const Vector& x) {
  if (inst.A.rows() != inst.b.size()) throw DimensionMismatch("matrix rows must match vector length");
  if (x.size() != inst.A.cols()) throw DimensionMismatch("point dimension does not match instance");
}

double soft_threshold(double z, double thr) {
  const double mag = std::abs(z) - thr;
  if (mag <= 0) return 0.0;
  return z > 0 ? mag : -mag;
}

// Separable prox in terms of the Gram diagonal q and correlations c = A^T b.
Vector prox_separable(const Vector& q, const Vector& c, double mu, const Vector& x, double lambda) {
  Vector y(x.size());
  for (int i = 0; i < x.size(); ++i) {
    const double scale = lambda * q(i) + 1.0;
    y(i) = soft_threshold((x(i) + lambda * c(i)) / scale, lambda * mu / scale);
  }
  return y;
}

bool lex_better(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - 1e-12) return true;
    if (a(i) > b(i) + 1e-12) return false;
  }
  return false;
}

bool detect_cycle(const std::vector<IterateRecord>& iterates, const Vector& x, int window) {
  const int k = static_cast<int>(iterates.size());
  for (int j = std::max(0, k - window); j < k; ++j) {
    if ((x - iterates[j].x).lpNorm<Eigen::Infinity>() <= 1e-12) return true;
  }
  return false;
}

}  // namespace

LassoInstance lasso_instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid instance JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("A") || !j.contains("b") || !j.contains("mu"))
    throw Error("instance JSON must have fields A, b, mu");
  const auto& ja = j["A"];
  if (!ja.is_array() || ja.empty() || !ja[0].is_array() || ja[0].empty())
    throw Error("field A must be a nonempty array of rows");
  const int rows = static_cast<int>(ja.size());
  const int cols = static_cast<int>(ja[0].size());
  LassoInstance inst;
  inst.A.resize(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!ja[i].is_array() || static_cast<int>(ja[i].size()) != cols)
      throw Error("matrix rows must have equal length");
    for (int k = 0; k < cols; ++k) inst.A(i, k) = ja[i][k].get<double>();
  }
  const auto& jb = j["b"];
  if (!jb.is_array() || static_cast<int>(jb.size()) != rows)
    throw Error("vector length must match matrix rows");
  inst.b.resize(rows);
  for (int i = 0; i < rows; ++i) inst.b(i) = jb[i].get<double>();
  inst.mu = j["mu"].get<double>();
  if (!(inst.mu > 0)) throw Error("mu must be positive");
  return inst;
}

double lasso_objective(const LassoInstance& inst, const Vector& x) {
  check_sizes(inst, x);
  return 0.5 * (inst.A * x - inst.b).squaredNorm() + inst.mu * x.lpNorm<1>();
}

bool LassoSubdifferential::contains_zero(double tol) const {
  for (int i = 0; i < lo.size(); ++i)
    if (lo(i) > tol || hi(i) < -tol) return false;
  return true;
}

double LassoSubdifferential::distance_to_zero() const {
  double sq = 0.0;
  for (int i = 0; i < lo.size(); ++i) {
    double d = 0.0;
    if (lo(i) > 0) d = lo(i);
    else if (hi(i) < 0) d = -hi(i);
    sq += d * d;
  }
  return std::sqrt(sq);
}

LassoSubdifferential lasso_subdifferential(const LassoInstance& inst, const Vector& x) {
  check_sizes(inst, x);
  LassoSubdifferential sub;
  sub.smooth = inst.A.transpose() * (inst.A * x - inst.b);
  sub.lo.resize(x.size());
  sub.hi.resize(x.size());
  for (int i = 0; i < x.size(); ++i) {
    if (x(i) > 0) {
      sub.lo(i) = sub.hi(i) = sub.smooth(i) + inst.mu;
    } else if (x(i) < 0) {
      sub.lo(i) = sub.hi(i) = sub.smooth(i) - inst.mu;
    } else {
      sub.lo(i) = sub.smooth(i) - inst.mu;
      sub.hi(i) = sub.smooth(i) + inst.mu;
    }
  }
  return sub;
}

ConeUnion lasso_G(double t, double p, double tol) {
  ConeUnion g;
  g.dim = 2;
  switch (classify_graph_point(t, p, tol)) {
    case BranchCase::Smooth:
      g.pieces = {vertical_line()};
      break;
    case BranchCase::Interior:
      g.pieces = {horizontal_line()};
      break;
    case BranchCase::BoundaryPos:
      g.pieces = {quadrant_mp(), vertical_line(), horizontal_line()};
      break;
    case BranchCase::BoundaryNeg:
      g.pieces = {quadrant_pm(), vertical_line(), horizontal_line()};
      break;
    case BranchCase::Off:
      break;
  }
  return g;
}

bool lasso_second_order_contains(const LassoInstance& inst, const Vector& x, const Vector& y,
                                 const Vector& v, const Vector& w, double tol) {
  check_sizes(inst, x);
  if (y.size() != x.size() || v.size() != x.size() || w.size() != x.size())
    throw DimensionMismatch("second-order arguments must share the instance dimension");
  const LassoSubdifferential sub = lasso_subdifferential(inst, x);
  for (int i = 0; i < x.size(); ++i) {
    if (y(i) < sub.lo(i) - tol || y(i) > sub.hi(i) + tol)
      throw PointNotOnGraph("(x, y) is not on the subgradient graph");
  }
  const Matrix Q = inst.A.transpose() * inst.A;
  const Vector s = (w - Q * v) / inst.mu;
  for (int i = 0; i < x.size(); ++i) {
    const double p = (y(i) - sub.smooth(i)) / inst.mu;
    if (!lasso_G(x(i), p, tol).contains(vec2(s(i), -v(i)), tol)) return false;
  }
  return true;
}

Vector lasso_prox_diagonal(const LassoInstance& inst, const Vector& x, double lambda) {
  check_sizes(inst, x);
  if (inst.A.rows() != inst.A.cols() || !gram_is_diagonal(inst.A))
    throw NotDiagonal("matrix must be diagonal");
  if (!(lambda > 0)) throw Error("lambda must be positive");
  Vector q(x.size()), c(x.size());
  for (int i = 0; i < x.size(); ++i) {
    q(i) = inst.A(i, i) * inst.A(i, i);
    c(i) = inst.A(i, i) * inst.b(i);
  }
  return prox_separable(q, c, inst.mu, x, lambda);
}

Vector lasso_prox_enumerated(const LassoInstance& inst, const Vector& x, double lambda) {
  check_sizes(inst, x);
  if (!(lambda > 0)) throw Error("lambda must be positive");
  const int n = static_cast<int>(x.size());
  if (n > 12) throw EnumerationCapExceeded("sign enumeration is capped at 12 variables");
  const Matrix Q = inst.A.transpose() * inst.A;
  const Vector c = inst.A.transpose() * inst.b;

  Vector best;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<int> sigma(n, -1);
  const long total = static_cast<long>(std::pow(3.0, n) + 0.5);
  for (long code = 0; code < total; ++code) {
    long rem = code;
    for (int i = 0; i < n; ++i) {
      sigma[i] = static_cast<int>(rem % 3) - 1;
      rem /= 3;
    }
    std::vector<int> support;
    for (int i = 0; i < n; ++i)
      if (sigma[i] != 0) support.push_back(i);
    const int k = static_cast<int>(support.size());

    Vector y = Vector::Zero(n);
    if (k > 0) {
      Matrix M(k, k);
      Vector rhs(k);
      for (int a = 0; a < k; ++a) {
        for (int b2 = 0; b2 < k; ++b2) M(a, b2) = Q(support[a], support[b2]);
        M(a, a) += 1.0 / lambda;
        rhs(a) = c(support[a]) + x(support[a]) / lambda - inst.mu * sigma[support[a]];
      }
      const Vector ys = M.llt().solve(rhs);
      bool ok = true;
      for (int a = 0; a < k; ++a) {
        if (sigma[support[a]] * ys(a) < -1e-12) {
          ok = false;
          break;
        }
        y(support[a]) = ys(a);
      }
      if (!ok) continue;
    }
    bool ok = true;
    const Vector g = Q * y - c + (y - x) / lambda;
    for (int i = 0; i < n; ++i) {
      if (sigma[i] == 0 && std::abs(g(i)) > inst.mu + 1e-12) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const double val = lasso_objective(inst, y) + (y - x).squaredNorm() / (2.0 * lambda);
    if (val < best_val) {
      best_val = val;
      best = y;
    }
  }
  if (best.size() == 0) throw Error("proximal enumeration found no consistent sign pattern");
  return best;
}

LassoInstance lasso_diagonalize(const LassoInstance& inst) {
  if (inst.A.rows() != inst.b.size()) throw DimensionMismatch("matrix rows must match vector length");
  const Matrix Q = inst.A.transpose() * inst.A;
  if (!gram_is_diagonal(Q)) throw NotDiagonalizable("Gram matrix has off-diagonal entries");
  const int n = static_cast<int>(inst.A.cols());
  LassoInstance out;
  out.A = Matrix::Zero(n, n);
  out.b.resize(n);
  out.mu = inst.mu;
  for (int i = 0; i < n; ++i) {
    if (Q(i, i) <= 0) throw NotDiagonalizable("Gram diagonal must be positive");
    const double a = std::sqrt(Q(i, i));
    out.A(i, i) = a;
    out.b(i) = inst.A.col(i).dot(inst.b) / a;
  }
  return out;
}

std::pair<Vector, Vector> lasso_newton_step_diagonal(const LassoInstance& inst, const Vector& x) {
  check_sizes(inst, x);
  if (inst.A.rows() != inst.A.cols() || !gram_is_diagonal(inst.A))
    throw NotDiagonal("matrix must be diagonal");
  const Vector v = x - lasso_prox_diagonal(inst, x, 1.0);
  Vector d(x.size());
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x(i) - v(i)) <= 1e-12) {
      d(i) = -v(i);
    } else {
      const double q = inst.A(i, i) * inst.A(i, i);
      if (q <= 0) throw NotDiagonal("diagonal entries must be nonzero");
      d(i) = -v(i) - v(i) / q;
    }
  }
  return {v, d};
}

std::optional<Vector> lasso_direction_general(const LassoInstance& inst, const Vector& x,
                                              const Vector& v, double lambda) {
  check_sizes(inst, x);
  if (v.size() != x.size()) throw DimensionMismatch("residual dimension does not match instance");
  if (!(lambda > 0)) throw Error("lambda must be positive");
  const int n = static_cast<int>(x.size());
  if (n > 12) throw EnumerationCapExceeded("branch enumeration is capped at 12 variables");

  const Vector X = x - lambda * v;
  const LassoSubdifferential sub = lasso_subdifferential(inst, X);
  for (int i = 0; i < n; ++i) {
    if (v(i) < sub.lo(i) - 1e-9 || v(i) > sub.hi(i) + 1e-9)
      throw PointNotOnGraph("(x - lambda v, v) is not on the subgradient graph");
  }

  const Matrix Q = inst.A.transpose() * inst.A;
  const Vector m = -v - lambda * (Q * v);

  std::vector<BranchCase> cases(n);
  std::vector<int> boundary;
  for (int i = 0; i < n; ++i) {
    const double p = (v(i) - sub.smooth(i)) / inst.mu;
    cases[i] = classify_graph_point(X(i), p, kMembershipTol);
    if (cases[i] == BranchCase::Off) return std::nullopt;
    if (cases[i] == BranchCase::BoundaryPos || cases[i] == BranchCase::BoundaryNeg)
      boundary.push_back(i);
  }
  const int nb = static_cast<int>(boundary.size());
  if (nb > 9) throw EnumerationCapExceeded("too many kink coordinates to enumerate");

  // Branch codes per boundary coordinate: 0 = quadrant piece, 1 = vertical
  // (smooth-style equality), 2 = horizontal (fixed step).
  std::optional<Vector> best;
  double best_norm = std::numeric_limits<double>::infinity();
  const long total = static_cast<long>(std::pow(3.0, nb) + 0.5);
  std::vector<int> choice(std::max(nb, 1), 0);
  for (long code = 0; code < total; ++code) {
    long rem = code;
    for (int t = 0; t < nb; ++t) {
      choice[t] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    Polyhedron cell(n);
    int bslot = 0;
    for (int i = 0; i < n; ++i) {
      Vector ei = Vector::Zero(n);
      ei(i) = 1.0;
      const Vector qrow = Q.row(i).transpose();
      if (cases[i] == BranchCase::Smooth) {
        cell.add_equality(qrow, m(i));
      } else if (cases[i] == BranchCase::Interior) {
        cell.add_equality(ei, -lambda * v(i));
      } else {
        const int pick = choice[bslot++];
        if (pick == 1) {
          cell.add_equality(qrow, m(i));
        } else if (pick == 2) {
          cell.add_equality(ei, -lambda * v(i));
        } else if (cases[i] == BranchCase::BoundaryPos) {
          // quadrant: s_i <= 0, step component above the fixed value
          cell.add_inequality(-qrow, -m(i));
          cell.add_inequality(ei, -lambda * v(i));
        } else {
          cell.add_inequality(qrow, m(i));
          cell.add_inequality(-ei, lambda * v(i));
        }
      }
    }
    const std::optional<Vector> cand = min_norm_point(cell);
    if (!cand) continue;
    const double nn = cand->norm();
    if (nn < best_norm - 1e-12 ||
        (std::abs(nn - best_norm) <= 1e-12 && best && lex_better(*cand, *best))) {
      best_norm = nn;
      best = cand;
    }
  }
  return best;
}

SolveTrace lasso_solve(const LassoInstance& inst, const Vector& x0, const ProxConfig& cfg) {
  check_sizes(inst, x0);
  const double lambda = cfg.lambda ? *cfg.lambda : 1.0;
  if (!(lambda > 0)) throw Error("lambda must be positive");
  const int n = static_cast<int>(x0.size());

  const Matrix Q = inst.A.transpose() * inst.A;
  const Vector c = inst.A.transpose() * inst.b;
  bool diagonal = gram_is_diagonal(Q);
  if (diagonal) {
    for (int i = 0; i < n; ++i)
      if (Q(i, i) <= 0) diagonal = false;
  }
  if (!diagonal && n > 12)
    throw NotDiagonalizable("Gram matrix is not diagonal and enumeration is capped at 12 variables");

  Vector q(n);
  if (diagonal)
    for (int i = 0; i < n; ++i) q(i) = Q(i, i);

  SolveTrace trace;
  trace.problem = "lasso";
  trace.solver = "prox";
  trace.lambda = lambda;
  trace.tol = cfg.tol;
  trace.max_iter = cfg.max_iter;
  trace.selection = selection_name(cfg.selection);
  trace.status = SolveStatus::MaxIterations;

  Vector x = x0;
  for (int k = 0;; ++k) {
    const Vector y = diagonal ? prox_separable(q, c, inst.mu, x, lambda)
                              : lasso_prox_enumerated(inst, x, lambda);
    const Vector v = (x - y) / lambda;

    IterateRecord rec;
    rec.k = k;
    rec.x = x;
    rec.residual = v;
    rec.residual_norm = v.norm();
    rec.direction = Vector::Zero(n);
    const bool cyc = detect_cycle(trace.iterates, x, cfg.cycle_window);
    trace.iterates.push_back(rec);

    if (rec.residual_norm <= cfg.tol) {
      trace.status = SolveStatus::Converged;
      break;
    }
    if (cyc) {
      trace.status = SolveStatus::Cycle;
      break;
    }
    if (k == cfg.max_iter) {
      trace.status = SolveStatus::MaxIterations;
      break;
    }

    Vector d;
    if (diagonal && lambda == 1.0) {
      d.resize(n);
      for (int i = 0; i < n; ++i) {
        if (std::abs(x(i) - v(i)) <= 1e-12)
          d(i) = -v(i);
        else
          d(i) = -v(i) - v(i) / q(i);
      }
    } else {
      const std::optional<Vector> dd = lasso_direction_general(inst, x, v, lambda);
      if (!dd) {
        trace.status = SolveStatus::DirectionInfeasible;
        break;
      }
      d = *dd;
    }
    trace.iterates.back().direction = d;
    x += d;
    if (!x.allFinite()) throw NonFiniteIterate("iterate left the finite range");
  }
  return trace;
}

}  // namespace gns
