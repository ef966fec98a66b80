#pragma once

// Homology bases drawn on the 3A, 4A and 4B fixtures, and the deformed surfaces on which the
// b-curves become cylinder core curves. Deformation parameters were found by a grid search
// and are pinned here.

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "flatsurf/errors.hpp"
#include "flatsurf/rel_deform.hpp"

namespace witnesses {

using namespace flatsurf;

inline Vec chain_sum(std::initializer_list<Vec> parts) {
  Vec out;
  for (const auto& p : parts) {
    if (out.empty()) out.assign(p.size(), 0);
    for (size_t i = 0; i < p.size(); ++i) out[i] += p[i];
  }
  return out;
}

// Is the class of `chain` (drawn on the undeformed complex) a core curve of some cylinder in
// the direction of its own holonomy on `m`?
inline bool core_on(const CylSurface& m, const Mat& marking, const HomBasis& B, const Vec& chain) {
  Vec moved = marking * chain;
  HomClass target = absolute_class(B, moved);
  auto dc = direction_cylinders(m, Direction::of(chain_period(m, moved)));
  if (!dc.determined) return false;
  for (const auto& c : dc.core_chains)
    if (absolute_class(B, c) == target) return true;
  return false;
}

struct Deformed {
  CylSurface surface;
  Mat marking;
  std::string id;
};

// stretch by s up to u, then REL twist by t
inline Deformed stretch_then_twist(const CylSurface& m0, const std::vector<Q>& s, const Q& u, const std::vector<Q>& t,
                                   const std::string& id) {
  auto r = rel_stretch_path(m0, s, u);
  if (r.collapsed) throw Error(ErrorKind::InvariantViolation, "witness stretch collapsed");
  return {apply_rel_twist(r.surface, t), twist_marking(r.surface, t), id};
}

struct BasisFixture {
  CylSurface surface;
  HomBasis B;
  std::vector<Vec> a, b;
};

inline BasisFixture basis_3A() {
  BasisFixture f;
  f.surface = fixtures::diagram_3A_surface();
  const auto& m = f.surface;
  f.B = h1_bases(m.diagram());
  Vec a3(f.B.edges(), 0);
  a3[6] = 1;
  a3[4] = -1;
  f.a = {core_curve_chain(m.diagram(), 0), core_curve_chain(m.diagram(), 1), a3};
  f.b = {chain_sum({piece_chain(m, 2, 1, 1), piece_chain(m, 1, 1, 3), piece_chain(m, 0, 3, Q(9, 2))}),
         chain_sum({piece_chain(m, 2, 10, 8), piece_chain(m, 1, 8, 8)}),
         chain_sum({piece_chain(m, 2, 7, 5), piece_chain(m, 1, 11, 10)})};
  return f;
}

inline std::vector<Deformed> deformations_3A(const CylSurface& m0) {
  std::vector<Q> s{Q(0), Q(1), Q(-1)};
  return {stretch_then_twist(m0, s, Q(7, 8), {Q(0), Q(1, 2), Q(-1, 2)}, "3A stretch 7/8, twist 1/2"),
          stretch_then_twist(m0, s, Q(7, 8), {Q(0), Q(7), Q(-7)}, "3A stretch 7/8, twist 7"),
          stretch_then_twist(m0, s, Q(7, 8), {Q(0), Q(8), Q(-8)}, "3A stretch 7/8, twist 8")};
}

// case L1: h4 shrinks under the stretch
inline BasisFixture basis_4A_L1() {
  BasisFixture f;
  f.surface = fixtures::diagram_4A_surface();
  const auto& m = f.surface;
  f.B = h1_bases(m.diagram());
  Vec a3(f.B.edges(), 0);
  a3[5] = 1;
  a3[3] = -1;
  f.a = {core_curve_chain(m.diagram(), 0), core_curve_chain(m.diagram(), 1), a3};
  f.b = {chain_sum({piece_chain(m, 3, 1, 1), piece_chain(m, 2, 1, 3), piece_chain(m, 0, 3, Q(9, 2))}),
         chain_sum({piece_chain(m, 3, 10, 8), piece_chain(m, 2, 8, 8), piece_chain(m, 1, 2, 2)}),
         chain_sum({piece_chain(m, 3, 7, 5), piece_chain(m, 2, 11, 11), piece_chain(m, 1, 5, 5)})};
  return f;
}

inline Deformed deformation_4A_L1(const CylSurface& m0) {
  return stretch_then_twist(m0, {Q(0), Q(0), Q(1), Q(-1)}, Q(7, 8), {Q(0), Q(0), Q(-1, 2), Q(1, 2)},
                            "4A(L1) stretch 7/8, twist 1/2");
}

// case L2: C1 and C2 isometric and thin, C3 and C4 stay thick. Cylinder order C3, C1, C2, C4.
inline CylSurface diagram_4A_L2_surface() {
  return CylSurface::make(fixtures::diagram_4A_alt(), {Q(3), Q(3), Q(3), Q(3), Q(6), Q(6), Q(6), Q(6)},
                          {Q(4), Q(1, 2), Q(1, 2), Q(3, 2)}, {Q(0), Q(0), Q(0), Q(2)});
}

inline BasisFixture basis_4A_L2() {
  BasisFixture f;
  f.surface = diagram_4A_L2_surface();
  const auto& m = f.surface;
  f.B = h1_bases(m.diagram());
  Vec a3(f.B.edges(), 0);
  a3[1] = 1;
  a3[3] = -1;
  f.a = {core_curve_chain(m.diagram(), 1), core_curve_chain(m.diagram(), 2), a3};
  f.b = {chain_sum({piece_chain(m, 0, Q(3, 2), 3), piece_chain(m, 1, 3, 3), piece_chain(m, 3, 3, Q(7, 2))}),
         chain_sum({piece_chain(m, 0, 8, 9), piece_chain(m, 2, 3, 3), piece_chain(m, 3, 9, 10)}),
         chain_sum({piece_chain(m, 0, Q(11, 2), 3), piece_chain(m, 1, 3, 3), piece_chain(m, 3, 3, Q(3, 2))})};
  return f;
}

inline Deformed deformation_4A_L2(const CylSurface& m0) {
  return stretch_then_twist(m0, {Q(1), Q(-1), Q(-1), Q(0)}, Q(3, 8), {Q(1, 2), Q(0), Q(0), Q(-1, 2)},
                            "4A(L2) stretch 3/8, twist 1/2");
}

// 4B drawn after the horocycle normalization; C1 is the tall left column
inline CylSurface diagram_4B_basis_surface() {
  return CylSurface::make(fixtures::diagram_4B(), {Q(2), Q(1), Q(2), Q(3), Q(2), Q(8), Q(2), Q(8)},
                          {Q(3), Q(2), Q(1), Q(2)}, {Q(1), Q(0), Q(0), Q(5)});
}

inline BasisFixture basis_4B() {
  BasisFixture f;
  f.surface = diagram_4B_basis_surface();
  const auto& m = f.surface;
  f.B = h1_bases(m.diagram());
  f.a = {core_curve_chain(m.diagram(), 0), core_curve_chain(m.diagram(), 3)};
  f.b = {chain_sum({piece_chain(m, 1, Q(1, 10), Q(1, 2)), piece_chain(m, 0, Q(1, 2), Q(11, 10))}),
         chain_sum({piece_chain(m, 3, Q(1, 2), 2), piece_chain(m, 1, 7, 8), piece_chain(m, 2, 6, Q(15, 2))}),
         chain_sum({piece_chain(m, 3, 2, Q(5, 2)), piece_chain(m, 1, Q(15, 2), Q(31, 4)), piece_chain(m, 2, Q(23, 4), 6)})};
  return f;
}

inline Mat identity_marking(const CylSurface& m) { return Mat::identity(m.diagram().m() + m.diagram().r()); }

}  // namespace witnesses
