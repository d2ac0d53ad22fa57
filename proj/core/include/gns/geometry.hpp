#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gns/errors.hpp"

namespace gns {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Default absolute tolerance for set membership and active-constraint detection.
inline constexpr double kMembershipTol = 1e-10;

// <normal, z> <= offset
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

// <normal, z> = offset
struct Hyperplane {
  Vector normal;
  double offset = 0.0;
};

// Convex polyhedron in halfspace form. Immutable once built (all ops below
// take it by const reference and are pure).
class Polyhedron {
 public:
  explicit Polyhedron(int dim) : dim_(dim) {
    if (dim <= 0) throw DimensionMismatch("polyhedron dimension must be positive");
  }

  static Polyhedron full_space(int dim) { return Polyhedron(dim); }
  static Polyhedron single_point(const Vector& z);

  void add_inequality(const Vector& normal, double offset);
  void add_equality(const Vector& normal, double offset);

  int dim() const { return dim_; }
  const std::vector<Halfspace>& inequalities() const { return ineqs_; }
  const std::vector<Hyperplane>& equalities() const { return eqs_; }

  bool contains(const Vector& z, double tol = kMembershipTol) const;
  // Largest constraint violation at z; <= 0 means feasible.
  double violation(const Vector& z) const;
  // All offsets vanish, i.e. the set is a cone with apex 0.
  bool is_cone(double tol = kMembershipTol) const;
  bool empty(double tol = kMembershipTol) const;

 private:
  int dim_;
  std::vector<Halfspace> ineqs_;
  std::vector<Hyperplane> eqs_;
};

// Finite union of convex polyhedra. Pieces may overlap.
struct PolyhedralUnion {
  int dim = 0;
  std::vector<Polyhedron> pieces;

  bool contains(const Vector& z, double tol = kMembershipTol) const;
  std::vector<int> active_pieces(const Vector& z, double tol = kMembershipTol) const;
};

// Union of polyhedral cones (apex 0). Empty pieces list = the empty set;
// note the zero vector is in every nonempty cone.
struct ConeUnion {
  int dim = 0;
  std::vector<Polyhedron> pieces;

  bool contains(const Vector& z, double tol = kMembershipTol) const;
  bool is_empty() const { return pieces.empty(); }
};

// Newton direction set: union of polyhedra in d-space (offsets allowed).
struct DirectionSet {
  int dim = 0;
  std::vector<Polyhedron> pieces;
  bool unbounded = false;

  bool contains(const Vector& d, double tol = kMembershipTol) const;
  bool is_empty() const { return pieces.empty(); }
};

struct GraphPoint {
  Vector x;
  Vector v;
};

// Generator (V-) form of a polyhedral cone: cone(rays) + span(lineality).
// Rays are unit vectors; lineality is an orthonormal-ish basis. trivial()
// means the cone is {0}.
struct ConeGenerators {
  std::vector<Vector> rays;
  std::vector<Vector> lineality;
  bool trivial() const { return rays.empty() && lineality.empty(); }
};

// Generator form of a polyhedron: conv(points) + cone(rays) + span(lineality).
// points is empty iff the polyhedron is empty.
struct PolyhedronGenerators {
  std::vector<Vector> points;
  std::vector<Vector> rays;
  std::vector<Vector> lineality;
};

// Exact double-description conversion of a polyhedral cone to generator form.
ConeGenerators cone_generators(const Polyhedron& cone, double tol = kMembershipTol);

// Generator form of a general polyhedron via homogenization.
PolyhedronGenerators generators(const Polyhedron& p, double tol = kMembershipTol);

// Halfspace form of cone(rays) + span(lineality).
Polyhedron cone_from_generators(int dim, const std::vector<Vector>& rays,
                                const std::vector<Vector>& lineality,
                                double tol = kMembershipTol);

// Recession cone of p (same constraint normals, zero offsets).
Polyhedron recession_cone(const Polyhedron& p);

// Polar cone of a union of cones (a single convex polyhedral cone).
Polyhedron polar_cone(const ConeUnion& cones, double tol = kMembershipTol);

// Image of a union under an invertible linear map z -> T z.
PolyhedralUnion apply_linear_map(const PolyhedralUnion& set, const Matrix& T);

// Contingent cone to the union at z, as the union of the active pieces'
// tangent cones. Throws PointNotInSet when z is not in the set.
ConeUnion tangent_cone(const PolyhedralUnion& set, const Vector& z,
                       double tol = kMembershipTol);

// Polar of the tangent cone union: always a single convex polyhedral cone.
Polyhedron regular_normal_cone(const PolyhedralUnion& set, const Vector& z,
                               double tol = kMembershipTol);

// Union, over all strata of the set near z, of the regular normal cones on
// those strata. Exact for polyhedral unions. Contains the regular cone.
ConeUnion limiting_normal_cone(const PolyhedralUnion& set, const Vector& z,
                               double tol = kMembershipTol);

// Newton directions at a graph point (x, v): all d with (-v, -d) in the
// limiting normal cone to the graph at (x, v). Throws PointNotOnGraph.
DirectionSet direction_set(const PolyhedralUnion& graph, const Vector& x,
                           const Vector& v, double tol = kMembershipTol);

struct SelectionRule {
  enum class Kind { MinNorm, First, Scripted };
  Kind kind = Kind::MinNorm;
  std::vector<Vector> script;

  static SelectionRule min_norm() { return {Kind::MinNorm, {}}; }
  static SelectionRule first() { return {Kind::First, {}}; }
  static SelectionRule scripted(std::vector<Vector> s) {
    return {Kind::Scripted, std::move(s)};
  }
};

// Selects a direction from gamma per the rule; nullopt when gamma is empty
// (infeasible step). MinNorm: exact minimum-norm element over all pieces with
// lexicographic tie-breaking at 1e-12. First: minimum-norm element of the
// first piece. Scripted: entry k of the script, rechecked for membership
// (ScriptViolation on mismatch or script exhaustion).
std::optional<Vector> select_direction(const DirectionSet& gamma,
                                       const SelectionRule& rule, int k = 0,
                                       double tol = kMembershipTol);

// Exact minimum-norm point of a nonempty polyhedron (nullopt when empty).
// Active-set enumeration; intended for small systems.
std::optional<Vector> min_norm_point(const Polyhedron& p,
                                     double tol = kMembershipTol);

// True when no nonzero u satisfies (0, -u) in the limiting normal cone to the
// graph at (x, v), i.e. the coderivative has trivial kernel there.
bool coderivative_kernel_trivial(const PolyhedralUnion& graph, const Vector& x,
                                 const Vector& v, double tol = kMembershipTol);

// True when no nonzero u satisfies (u, 0) in the tangent cone to the graph at
// (x, v), i.e. the graphical derivative maps nonzero vectors to nonempty sets
// only trivially.
bool graphical_derivative_kernel_trivial(const PolyhedralUnion& graph,
                                         const Vector& x, const Vector& v,
                                         double tol = kMembershipTol);

}  // namespace gns
