#include "gns/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

namespace gns {

namespace {

// Tolerance for ray/normal dot products inside the double-description engine.
// All normals and rays are kept at unit length, so this is a relative scale.
constexpr double kRayTol = 1e-9;

// Incremental double description of a polyhedral cone: the feasible set of the
// constraints processed so far is span(lin) + cone(rays). Rays are unit
// vectors, extreme modulo the lineality space.
struct DDState {
  std::vector<Vector> lin;
  std::vector<Vector> rays;
  std::vector<Vector> processed;          // unit normals handled so far
  std::vector<std::vector<char>> zero;    // zero[i][j]: ray i vanishes on processed[j]

  explicit DDState(int dim) {
    lin.reserve(dim);
    for (int i = 0; i < dim; ++i) {
      Vector e = Vector::Zero(dim);
      e(i) = 1.0;
      lin.push_back(e);
    }
  }

  void refresh_zero_sets() {
    zero.assign(rays.size(), {});
    for (std::size_t i = 0; i < rays.size(); ++i) {
      zero[i].resize(processed.size());
      for (std::size_t j = 0; j < processed.size(); ++j)
        zero[i][j] = std::abs(processed[j].dot(rays[i])) <= kRayTol ? 1 : 0;
    }
  }

  // Combinatorial adjacency: rays a and b are adjacent iff no third ray is
  // zero on every constraint both of them are zero on.
  bool adjacent(std::size_t a, std::size_t b) const {
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (r == a || r == b) continue;
      bool covers = true;
      for (std::size_t j = 0; j < processed.size() && covers; ++j)
        if (zero[a][j] && zero[b][j] && !zero[r][j]) covers = false;
      if (covers) return false;
    }
    return true;
  }

  void dedupe_rays() {
    std::vector<Vector> kept;
    for (const Vector& r : rays) {
      bool dup = false;
      for (const Vector& k : kept)
        if (k.dot(r) > 1.0 - kRayTol) {
          dup = true;
          break;
        }
      if (!dup) kept.push_back(r);
    }
    rays = std::move(kept);
  }

  int find_pivot(const Vector& g) const {
    int piv = -1;
    double best = kRayTol;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      double a = std::abs(g.dot(lin[i]));
      if (a > best) {
        best = a;
        piv = static_cast<int>(i);
      }
    }
    return piv;
  }

  // Removes lineality vector piv and projects the rest of the state so that
  // every survivor is orthogonal to g along the removed direction.
  Vector pivot_out(const Vector& g, int piv) {
    Vector l = lin[static_cast<std::size_t>(piv)];
    double a = g.dot(l);
    lin.erase(lin.begin() + piv);
    for (Vector& v : lin) {
      v -= (g.dot(v) / a) * l;
      double nn = v.norm();
      if (nn > 1e-12) v /= nn;
    }
    std::vector<Vector> kept;
    for (Vector& r : rays) {
      r -= (g.dot(r) / a) * l;
      double nn = r.norm();
      if (nn > 1e-12) kept.push_back(r / nn);
    }
    rays = std::move(kept);
    return (a > 0) ? Vector(-l) : l;
  }

  void add_inequality(const Vector& g) {
    int piv = find_pivot(g);
    if (piv >= 0) {
      Vector r0 = pivot_out(g, piv);
      rays.push_back(r0);
    } else {
      std::vector<double> val(rays.size());
      for (std::size_t i = 0; i < rays.size(); ++i) val[i] = g.dot(rays[i]);
      std::vector<Vector> next;
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (val[i] <= kRayTol) next.push_back(rays[i]);
      for (std::size_t p = 0; p < rays.size(); ++p) {
        if (val[p] <= kRayTol) continue;
        for (std::size_t n = 0; n < rays.size(); ++n) {
          if (val[n] >= -kRayTol) continue;
          if (!adjacent(p, n)) continue;
          Vector w = val[p] * rays[n] - val[n] * rays[p];
          double nn = w.norm();
          if (nn > 1e-12) next.push_back(w / nn);
        }
      }
      rays = std::move(next);
    }
    processed.push_back(g);
    dedupe_rays();
    refresh_zero_sets();
  }

  void add_equality(const Vector& h) {
    int piv = find_pivot(h);
    if (piv >= 0) {
      pivot_out(h, piv);
    } else {
      std::vector<double> val(rays.size());
      for (std::size_t i = 0; i < rays.size(); ++i) val[i] = h.dot(rays[i]);
      std::vector<Vector> next;
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (std::abs(val[i]) <= kRayTol) next.push_back(rays[i]);
      for (std::size_t p = 0; p < rays.size(); ++p) {
        if (val[p] <= kRayTol) continue;
        for (std::size_t n = 0; n < rays.size(); ++n) {
          if (val[n] >= -kRayTol) continue;
          if (!adjacent(p, n)) continue;
          Vector w = val[p] * rays[n] - val[n] * rays[p];
          double nn = w.norm();
          if (nn > 1e-12) next.push_back(w / nn);
        }
      }
      rays = std::move(next);
    }
    processed.push_back(h);
    dedupe_rays();
    refresh_zero_sets();
  }

  // True iff some ray is strictly signed on h: needed to certify that the
  // open side of a processed constraint is realizable within the cone.
  bool has_strict_ray(const Vector& h, int sign) const {
    for (const Vector& r : rays)
      if (sign * h.dot(r) > kRayTol) return true;
    return false;
  }
};

DDState run_dd(const Polyhedron& cone) {
  DDState s(cone.dim());
  for (const Hyperplane& e : cone.equalities()) {
    double nn = e.normal.norm();
    if (nn > 1e-14) s.add_equality(e.normal / nn);
  }
  for (const Halfspace& q : cone.inequalities()) {
    double nn = q.normal.norm();
    if (nn > 1e-14) s.add_inequality(q.normal / nn);
  }
  return s;
}

// Homogenization: lift {z : Az <= c, Bz = d} to the cone
// {(z, t) : Az - ct <= 0, Bz - dt = 0, t >= 0} one dimension up.
Polyhedron homogenize(const Polyhedron& p) {
  const int d = p.dim();
  Polyhedron c(d + 1);
  Vector row(d + 1);
  for (const Halfspace& q : p.inequalities()) {
    row.head(d) = q.normal;
    row(d) = -q.offset;
    c.add_inequality(row, 0.0);
  }
  for (const Hyperplane& e : p.equalities()) {
    row.head(d) = e.normal;
    row(d) = -e.offset;
    c.add_equality(row, 0.0);
  }
  row.setZero();
  row(d) = -1.0;
  c.add_inequality(row, 0.0);
  return c;
}

// Halfspace form of the polar of a cone given in halfspace form. The polar's
// constraints are exactly the generators of the original cone.
void append_polar_rows(const Polyhedron& coneH, Polyhedron& out, double tol) {
  ConeGenerators g = cone_generators(coneH, tol);
  for (const Vector& r : g.rays) out.add_inequality(r, 0.0);
  for (const Vector& l : g.lineality) out.add_equality(l, 0.0);
}

bool cone_contains_generators(const Polyhedron& cone, const ConeGenerators& g) {
  for (const Vector& r : g.rays)
    if (!cone.contains(r, 1e-9)) return false;
  for (const Vector& l : g.lineality)
    if (!cone.contains(l, 1e-9) || !cone.contains(Vector(-l), 1e-9)) return false;
  return true;
}

// Drop cone pieces contained in another piece; keeps first occurrences.
std::vector<Polyhedron> absorb_pieces(const std::vector<Polyhedron>& pieces, double tol) {
  std::vector<Polyhedron> kept;
  std::vector<ConeGenerators> kept_gens;
  for (const Polyhedron& c : pieces) {
    ConeGenerators g = cone_generators(c, tol);
    bool absorbed = false;
    for (const Polyhedron& k : kept)
      if (cone_contains_generators(k, g)) {
        absorbed = true;
        break;
      }
    if (absorbed) continue;
    std::vector<Polyhedron> next;
    std::vector<ConeGenerators> next_gens;
    for (std::size_t i = 0; i < kept.size(); ++i)
      if (!cone_contains_generators(c, kept_gens[i])) {
        next.push_back(kept[i]);
        next_gens.push_back(kept_gens[i]);
      }
    next.push_back(c);
    next_gens.push_back(g);
    kept = std::move(next);
    kept_gens = std::move(next_gens);
  }
  return kept;
}

void check_dim(const Vector& z, int dim, const char* what) {
  if (z.size() != dim) throw DimensionMismatch(std::string(what) + ": wrong dimension");
}

bool lex_better(const Vector& a, const Vector& b) {
  double na = a.norm(), nb = b.norm();
  if (na < nb - 1e-12) return true;
  if (na > nb + 1e-12) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - 1e-12) return true;
    if (a(i) > b(i) + 1e-12) return false;
  }
  return false;
}

}  // namespace

Polyhedron Polyhedron::single_point(const Vector& z) {
  Polyhedron p(static_cast<int>(z.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    Vector e = Vector::Zero(z.size());
    e(i) = 1.0;
    p.add_equality(e, z(i));
  }
  return p;
}

void Polyhedron::add_inequality(const Vector& normal, double offset) {
  check_dim(normal, dim_, "add_inequality");
  ineqs_.push_back({normal, offset});
}

void Polyhedron::add_equality(const Vector& normal, double offset) {
  check_dim(normal, dim_, "add_equality");
  eqs_.push_back({normal, offset});
}

bool Polyhedron::contains(const Vector& z, double tol) const {
  check_dim(z, dim_, "contains");
  for (const Halfspace& q : ineqs_)
    if (q.normal.dot(z) - q.offset > tol) return false;
  for (const Hyperplane& e : eqs_)
    if (std::abs(e.normal.dot(z) - e.offset) > tol) return false;
  return true;
}

double Polyhedron::violation(const Vector& z) const {
  check_dim(z, dim_, "violation");
  double v = -std::numeric_limits<double>::infinity();
  for (const Halfspace& q : ineqs_) v = std::max(v, q.normal.dot(z) - q.offset);
  for (const Hyperplane& e : eqs_) v = std::max(v, std::abs(e.normal.dot(z) - e.offset));
  return v;
}

bool Polyhedron::is_cone(double tol) const {
  for (const Halfspace& q : ineqs_)
    if (std::abs(q.offset) > tol) return false;
  for (const Hyperplane& e : eqs_)
    if (std::abs(e.offset) > tol) return false;
  return true;
}

bool Polyhedron::empty(double tol) const {
  ConeGenerators g = cone_generators(homogenize(*this), tol);
  for (const Vector& r : g.rays)
    if (r(dim_) > kRayTol) return false;
  return true;
}

bool PolyhedralUnion::contains(const Vector& z, double tol) const {
  for (const Polyhedron& p : pieces)
    if (p.contains(z, tol)) return true;
  return false;
}

std::vector<int> PolyhedralUnion::active_pieces(const Vector& z, double tol) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].contains(z, tol)) out.push_back(static_cast<int>(i));
  return out;
}

bool ConeUnion::contains(const Vector& z, double tol) const {
  for (const Polyhedron& p : pieces)
    if (p.contains(z, tol)) return true;
  return false;
}

bool DirectionSet::contains(const Vector& d, double tol) const {
  for (const Polyhedron& p : pieces)
    if (p.contains(d, tol)) return true;
  return false;
}

ConeGenerators cone_generators(const Polyhedron& cone, double tol) {
  if (!cone.is_cone(tol))
    throw Error("cone_generators: input has nonzero offsets");
  DDState s = run_dd(cone);
  return {std::move(s.rays), std::move(s.lin)};
}

PolyhedronGenerators generators(const Polyhedron& p, double tol) {
  ConeGenerators g = cone_generators(homogenize(p), tol);
  const int d = p.dim();
  PolyhedronGenerators out;
  for (const Vector& r : g.rays) {
    double t = r(d);
    if (t > kRayTol) {
      out.points.push_back(r.head(d) / t);
    } else {
      Vector w = r.head(d);
      double nn = w.norm();
      if (nn > 1e-12) out.rays.push_back(w / nn);
    }
  }
  for (const Vector& l : g.lineality) {
    Vector w = l.head(d);
    double nn = w.norm();
    if (nn > 1e-12) out.lineality.push_back(w / nn);
  }
  return out;
}

Polyhedron cone_from_generators(int dim, const std::vector<Vector>& rays,
                                const std::vector<Vector>& lineality, double tol) {
  Polyhedron polarH(dim);
  for (const Vector& r : rays) polarH.add_inequality(r, 0.0);
  for (const Vector& l : lineality) polarH.add_equality(l, 0.0);
  Polyhedron out(dim);
  append_polar_rows(polarH, out, tol);
  return out;
}

Polyhedron recession_cone(const Polyhedron& p) {
  Polyhedron c(p.dim());
  for (const Halfspace& q : p.inequalities()) c.add_inequality(q.normal, 0.0);
  for (const Hyperplane& e : p.equalities()) c.add_equality(e.normal, 0.0);
  return c;
}

Polyhedron polar_cone(const ConeUnion& cones, double tol) {
  Polyhedron out(cones.dim);
  for (const Polyhedron& piece : cones.pieces) append_polar_rows(piece, out, tol);
  return out;
}

PolyhedralUnion apply_linear_map(const PolyhedralUnion& set, const Matrix& T) {
  if (T.rows() != set.dim || T.cols() != set.dim)
    throw DimensionMismatch("apply_linear_map: map shape does not match set");
  Eigen::FullPivLU<Matrix> lu(T);
  if (!lu.isInvertible()) throw Error("apply_linear_map: map is singular");
  Matrix TinvT = lu.inverse().transpose();
  PolyhedralUnion out;
  out.dim = set.dim;
  for (const Polyhedron& p : set.pieces) {
    Polyhedron q(set.dim);
    for (const Halfspace& h : p.inequalities()) q.add_inequality(TinvT * h.normal, h.offset);
    for (const Hyperplane& e : p.equalities()) q.add_equality(TinvT * e.normal, e.offset);
    out.pieces.push_back(std::move(q));
  }
  return out;
}

ConeUnion tangent_cone(const PolyhedralUnion& set, const Vector& z, double tol) {
  check_dim(z, set.dim, "tangent_cone");
  std::vector<int> active = set.active_pieces(z, tol);
  if (active.empty()) throw PointNotInSet("tangent_cone: point is not in the set");
  ConeUnion out;
  out.dim = set.dim;
  for (int idx : active) {
    const Polyhedron& p = set.pieces[static_cast<std::size_t>(idx)];
    Polyhedron t(set.dim);
    for (const Hyperplane& e : p.equalities())
      if (e.normal.norm() > 1e-14) t.add_equality(e.normal, 0.0);
    for (const Halfspace& q : p.inequalities())
      if (q.normal.norm() > 1e-14 && std::abs(q.normal.dot(z) - q.offset) <= tol)
        t.add_inequality(q.normal, 0.0);
    out.pieces.push_back(std::move(t));
  }
  return out;
}

Polyhedron regular_normal_cone(const PolyhedralUnion& set, const Vector& z, double tol) {
  return polar_cone(tangent_cone(set, z, tol), tol);
}

namespace {

// One constraint of a tangent piece, referred to a shared hyperplane list:
// equality <h_idx, w> = 0, or inequality orient*<h_idx, w> <= 0.
struct StratRef {
  int idx;
  int orient;
  bool eq;
};

// Enumerates the sign-vector cells of the arrangement spanned by the active
// constraint hyperplanes and emits, for every nonempty cell covered by some
// tangent piece, the polar of the union of pieces active on that cell.
class StratumEnumerator {
 public:
  StratumEnumerator(const ConeUnion& tangent, double tol) : dim_(tangent.dim), tol_(tol) {
    for (const Polyhedron& t : tangent.pieces) {
      std::vector<StratRef> refs;
      for (const Hyperplane& e : t.equalities()) {
        auto [i, o] = intern(e.normal);
        (void)o;
        refs.push_back({i, 0, true});
      }
      for (const Halfspace& q : t.inequalities()) {
        auto [i, o] = intern(q.normal);
        refs.push_back({i, o, false});
      }
      piece_refs_.push_back(normalize_refs(refs));
    }
    allowed_.assign(hyper_.size(), {false, false});
    for (std::size_t i = 0; i < hyper_.size(); ++i)
      for (int s : {-1, +1}) {
        for (const auto& refs : piece_refs_)
          if (piece_permits(refs, static_cast<int>(i), s)) {
            allowed_[i][s > 0 ? 1 : 0] = true;
            break;
          }
      }
  }

  std::vector<Polyhedron> run() {
    sigma_.assign(hyper_.size(), 0);
    DDState root(dim_);
    recurse(root, 0);
    return std::move(out_);
  }

 private:
  std::pair<int, int> intern(const Vector& a) {
    Vector u = a.normalized();
    for (std::size_t i = 0; i < hyper_.size(); ++i) {
      double d = hyper_[i].dot(u);
      if (d > 1.0 - kRayTol) return {static_cast<int>(i), +1};
      if (d < -1.0 + kRayTol) return {static_cast<int>(i), -1};
    }
    hyper_.push_back(u);
    return {static_cast<int>(hyper_.size()) - 1, +1};
  }

  // Dedupe refs; an opposing inequality pair on one hyperplane is an equality,
  // and an equality makes inequalities on the same hyperplane redundant.
  static std::vector<StratRef> normalize_refs(const std::vector<StratRef>& refs) {
    std::vector<StratRef> out;
    for (const StratRef& r : refs) {
      bool skip = false;
      for (StratRef& k : out) {
        if (k.idx != r.idx) continue;
        if (k.eq || (r.eq == k.eq && r.orient == k.orient)) {
          skip = true;
          break;
        }
        if (r.eq || r.orient != k.orient) {
          k = {k.idx, 0, true};
          skip = true;
          break;
        }
      }
      if (!skip) out.push_back(r);
    }
    return out;
  }

  static bool piece_permits(const std::vector<StratRef>& refs, int idx, int sign) {
    for (const StratRef& r : refs) {
      if (r.idx != idx) continue;
      if (r.eq) return false;
      if (sign != -r.orient) return false;
    }
    return true;
  }

  bool piece_compatible(const std::vector<StratRef>& refs) const {
    for (const StratRef& r : refs) {
      int s = sigma_[static_cast<std::size_t>(r.idx)];
      if (r.eq) {
        if (s != 0) return false;
      } else if (s != 0 && s != -r.orient) {
        return false;
      }
    }
    return true;
  }

  bool strict_signs_realizable(const DDState& state) const {
    for (const auto& [idx, s] : strict_)
      if (!state.has_strict_ray(hyper_[static_cast<std::size_t>(idx)], s)) return false;
    return true;
  }

  void emit_cell() {
    Polyhedron normal(dim_);
    bool covered = false;
    for (const auto& refs : piece_refs_) {
      if (!piece_compatible(refs)) continue;
      covered = true;
      Polyhedron tc(dim_);
      for (const StratRef& r : refs) {
        const Vector& h = hyper_[static_cast<std::size_t>(r.idx)];
        if (r.eq) {
          tc.add_equality(h, 0.0);
        } else if (sigma_[static_cast<std::size_t>(r.idx)] == 0) {
          tc.add_inequality(r.orient * h, 0.0);
        }
      }
      append_polar_rows(tc, normal, tol_);
    }
    if (covered) out_.push_back(std::move(normal));
  }

  void recurse(DDState& state, std::size_t t) {
    if (t == hyper_.size()) {
      emit_cell();
      return;
    }
    const Vector& h = hyper_[t];
    {
      DDState s = state;
      s.add_equality(h);
      sigma_[t] = 0;
      if (strict_signs_realizable(s)) recurse(s, t + 1);
    }
    for (int sign : {-1, +1}) {
      if (!allowed_[t][sign > 0 ? 1 : 0]) continue;
      DDState s = state;
      s.add_inequality(sign > 0 ? Vector(-h) : h);
      sigma_[t] = sign;
      strict_.emplace_back(static_cast<int>(t), sign);
      if (strict_signs_realizable(s)) recurse(s, t + 1);
      strict_.pop_back();
    }
    sigma_[t] = 0;
  }

  int dim_;
  double tol_;
  std::vector<Vector> hyper_;
  std::vector<std::vector<StratRef>> piece_refs_;
  std::vector<std::array<bool, 2>> allowed_;
  std::vector<int> sigma_;
  std::vector<std::pair<int, int>> strict_;
  std::vector<Polyhedron> out_;
};

}  // namespace

ConeUnion limiting_normal_cone(const PolyhedralUnion& set, const Vector& z, double tol) {
  ConeUnion tangent = tangent_cone(set, z, tol);
  StratumEnumerator strata(tangent, tol);
  ConeUnion out;
  out.dim = set.dim;
  out.pieces = absorb_pieces(strata.run(), tol);
  return out;
}

DirectionSet direction_set(const PolyhedralUnion& graph, const Vector& x, const Vector& v,
                           double tol) {
  if (x.size() != v.size() || 2 * x.size() != graph.dim)
    throw DimensionMismatch("direction_set: x and v must split the graph dimension");
  const int n = static_cast<int>(x.size());
  Vector z(2 * n);
  z << x, v;
  if (!graph.contains(z, tol)) throw PointNotOnGraph("direction_set: (x, v) is not on the graph");

  ConeUnion normal = limiting_normal_cone(graph, z, tol);
  DirectionSet out;
  out.dim = n;
  for (const Polyhedron& piece : normal.pieces) {
    // d qualifies iff (-v, -d) is in the piece: substitute the first block
    // and flip the second. <(p,q), (-v,-d)> <= 0 becomes <-q, d> <= <p, v>.
    Polyhedron slice(n);
    bool infeasible = false;
    auto convert = [&](const Vector& normal_2n, bool is_eq) {
      Vector p = normal_2n.head(n);
      Vector q = normal_2n.tail(n);
      double rhs = p.dot(v);
      if (q.lpNorm<Eigen::Infinity>() <= 1e-12) {
        if (is_eq ? std::abs(rhs) > tol : rhs < -tol) infeasible = true;
        return;
      }
      if (is_eq)
        slice.add_equality(-q, rhs);
      else
        slice.add_inequality(-q, rhs);
    };
    for (const Halfspace& q : piece.inequalities()) convert(q.normal, false);
    for (const Hyperplane& e : piece.equalities()) convert(e.normal, true);
    if (infeasible || slice.empty(tol)) continue;
    if (!cone_generators(recession_cone(slice), tol).trivial()) out.unbounded = true;
    out.pieces.push_back(std::move(slice));
  }
  return out;
}

std::optional<Vector> min_norm_point(const Polyhedron& p, double tol) {
  if (p.empty(tol)) return std::nullopt;
  const int n = p.dim();
  const double feas = std::max(tol, 1e-9);

  std::vector<Halfspace> ineqs;
  for (const Halfspace& q : p.inequalities()) {
    double nn = q.normal.norm();
    if (nn <= 1e-14) continue;  // trivial row; emptiness was checked above
    Vector u = q.normal / nn;
    double c = q.offset / nn;
    bool dup = false;
    for (const Halfspace& k : ineqs)
      if (k.normal.dot(u) > 1.0 - kRayTol && std::abs(k.offset - c) <= 1e-12) {
        dup = true;
        break;
      }
    if (!dup) ineqs.push_back({u, c});
  }
  if (ineqs.size() > 18)
    throw EnumerationCapExceeded("min_norm_point: too many inequalities to enumerate");

  const std::size_t m = ineqs.size();
  std::optional<Vector> best;
  for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
    std::size_t rows = p.equalities().size();
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t(1) << i)) ++rows;
    Vector cand;
    if (rows == 0) {
      cand = Vector::Zero(n);
    } else {
      Matrix A(rows, n);
      Vector b(rows);
      std::size_t r = 0;
      for (const Hyperplane& e : p.equalities()) {
        A.row(r) = e.normal;
        b(r++) = e.offset;
      }
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t(1) << i)) {
          A.row(r) = ineqs[i].normal;
          b(r++) = ineqs[i].offset;
        }
      Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
      cand = cod.solve(b);
      if ((A * cand - b).lpNorm<Eigen::Infinity>() > 1e-8 * (1.0 + b.lpNorm<Eigen::Infinity>()))
        continue;  // inconsistent active set
    }
    if (!p.contains(cand, feas)) continue;
    if (!best || lex_better(cand, *best)) best = cand;
  }
  return best;
}

std::optional<Vector> select_direction(const DirectionSet& gamma, const SelectionRule& rule,
                                       int k, double tol) {
  switch (rule.kind) {
    case SelectionRule::Kind::MinNorm: {
      std::optional<Vector> best;
      for (const Polyhedron& piece : gamma.pieces) {
        std::optional<Vector> c = min_norm_point(piece, tol);
        if (c && (!best || lex_better(*c, *best))) best = c;
      }
      return best;
    }
    case SelectionRule::Kind::First: {
      if (gamma.pieces.empty()) return std::nullopt;
      return min_norm_point(gamma.pieces.front(), tol);
    }
    case SelectionRule::Kind::Scripted: {
      if (gamma.is_empty()) return std::nullopt;
      if (k < 0 || static_cast<std::size_t>(k) >= rule.script.size())
        throw ScriptViolation("select_direction: script exhausted at step " + std::to_string(k));
      const Vector& d = rule.script[static_cast<std::size_t>(k)];
      if (d.size() != gamma.dim)
        throw ScriptViolation("select_direction: scripted direction has wrong dimension");
      if (!gamma.contains(d, std::max(tol, 1e-9)))
        throw ScriptViolation("select_direction: scripted direction is not a valid step");
      return d;
    }
  }
  return std::nullopt;
}

namespace {

bool sliced_block_trivial(const std::vector<Polyhedron>& pieces, int dim, int zero_block_begin,
                          int zero_block_len, double tol) {
  for (const Polyhedron& piece : pieces) {
    Polyhedron q = piece;
    for (int i = 0; i < zero_block_len; ++i) {
      Vector e = Vector::Zero(dim);
      e(zero_block_begin + i) = 1.0;
      q.add_equality(e, 0.0);
    }
    if (!cone_generators(q, tol).trivial()) return false;
  }
  return true;
}

}  // namespace

bool coderivative_kernel_trivial(const PolyhedralUnion& graph, const Vector& x, const Vector& v,
                                 double tol) {
  if (x.size() != v.size() || 2 * x.size() != graph.dim)
    throw DimensionMismatch("coderivative_kernel_trivial: x and v must split the graph dimension");
  const int n = static_cast<int>(x.size());
  Vector z(2 * n);
  z << x, v;
  if (!graph.contains(z, tol))
    throw PointNotOnGraph("coderivative_kernel_trivial: (x, v) is not on the graph");
  ConeUnion normal = limiting_normal_cone(graph, z, tol);
  return sliced_block_trivial(normal.pieces, 2 * n, 0, n, tol);
}

bool graphical_derivative_kernel_trivial(const PolyhedralUnion& graph, const Vector& x,
                                         const Vector& v, double tol) {
  if (x.size() != v.size() || 2 * x.size() != graph.dim)
    throw DimensionMismatch(
        "graphical_derivative_kernel_trivial: x and v must split the graph dimension");
  const int n = static_cast<int>(x.size());
  Vector z(2 * n);
  z << x, v;
  if (!graph.contains(z, tol))
    throw PointNotOnGraph("graphical_derivative_kernel_trivial: (x, v) is not on the graph");
  ConeUnion tangent = tangent_cone(graph, z, tol);
  return sliced_block_trivial(tangent.pieces, 2 * n, n, n, tol);
}

}  // namespace gns
