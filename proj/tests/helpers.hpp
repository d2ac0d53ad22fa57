#pragma once

#include <random>

#include "gns/geometry.hpp"

namespace gnstest {

using gns::ConeUnion;
using gns::Matrix;
using gns::Polyhedron;
using gns::PolyhedralUnion;
using gns::Vector;

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

inline Vector vec1(double a) { return Vector::Constant(1, a); }

// Random point of a cone: nonnegative ray combination plus lineality.
inline Vector sample_cone(const Polyhedron& cone, std::mt19937& gen) {
  auto g = gns::cone_generators(cone);
  Vector z = Vector::Zero(cone.dim());
  std::uniform_real_distribution<double> pos(0.0, 2.0), fre(-2.0, 2.0);
  for (const auto& r : g.rays) z += pos(gen) * r;
  for (const auto& l : g.lineality) z += fre(gen) * l;
  return z;
}

inline Vector sample_union(const ConeUnion& u, std::mt19937& gen) {
  std::uniform_int_distribution<std::size_t> pick(0, u.pieces.size() - 1);
  return sample_cone(u.pieces[pick(gen)], gen);
}

// Set equality by mutual sampled membership.
inline bool same_cone_union(const ConeUnion& a, const ConeUnion& b, int samples = 200,
                            double tol = 1e-10, unsigned seed = 20240815u) {
  if (a.dim != b.dim) return false;
  if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
  std::mt19937 gen(seed);
  for (int s = 0; s < samples; ++s) {
    if (!b.contains(sample_union(a, gen), tol)) return false;
    if (!a.contains(sample_union(b, gen), tol)) return false;
  }
  return true;
}

inline ConeUnion make_union(std::vector<Polyhedron> pieces) {
  ConeUnion u;
  u.dim = pieces.empty() ? 0 : pieces.front().dim();
  u.pieces = std::move(pieces);
  return u;
}

// x <= 0, v = -1
// x = 0, -1 <= v <= 1
// x >= 0, v = 1
inline PolyhedralUnion abs_subgradient_graph() {
  PolyhedralUnion g;
  g.dim = 2;
  Polyhedron neg(2);
  neg.add_inequality(vec2(1, 0), 0.0);
  neg.add_equality(vec2(0, 1), -1.0);
  Polyhedron mid(2);
  mid.add_equality(vec2(1, 0), 0.0);
  mid.add_inequality(vec2(0, 1), 1.0);
  mid.add_inequality(vec2(0, -1), 1.0);
  Polyhedron pos(2);
  pos.add_inequality(vec2(-1, 0), 0.0);
  pos.add_equality(vec2(0, 1), 1.0);
  g.pieces = {neg, mid, pos};
  return g;
}

// Common hand-built cones in the plane.
inline Polyhedron vertical_line_cone() {
  Polyhedron p(2);
  p.add_equality(vec2(1, 0), 0.0);
  return p;
}
inline Polyhedron horizontal_line_cone() {
  Polyhedron p(2);
  p.add_equality(vec2(0, 1), 0.0);
  return p;
}
inline Polyhedron quadrant_pm_cone() {  // first >= 0, second <= 0
  Polyhedron p(2);
  p.add_inequality(vec2(-1, 0), 0.0);
  p.add_inequality(vec2(0, 1), 0.0);
  return p;
}
inline Polyhedron quadrant_mp_cone() {
  Polyhedron p(2);
  p.add_inequality(vec2(1, 0), 0.0);
  p.add_inequality(vec2(0, -1), 0.0);
  return p;
}
inline Polyhedron down_ray_cone() {  // {0} x R-
  Polyhedron p(2);
  p.add_equality(vec2(1, 0), 0.0);
  p.add_inequality(vec2(0, 1), 0.0);
  return p;
}
inline Polyhedron up_ray_cone() {  // {0} x R+
  Polyhedron p(2);
  p.add_equality(vec2(1, 0), 0.0);
  p.add_inequality(vec2(0, -1), 0.0);
  return p;
}

}  // namespace gnstest
