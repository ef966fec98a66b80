#pragma once

// Named diagrams and surfaces shared by the test binaries. Bottom saddles start at x = 0,
// top saddles at x = twist; both read left to right.

#include "flatsurf/surface.hpp"

namespace fixtures {

using flatsurf::Cylinder;
using flatsurf::CylDiagram;
using flatsurf::CylSurface;
using flatsurf::Q;

inline CylDiagram h11_one_cyl() { return CylDiagram::make({{{0, 1, 2, 3}, {3, 2, 1, 0}}}); }

// three cylinders in H(1,1): saddles 0, 1, x = 2, y = 3
inline CylDiagram h11_three_cyl() {
  return CylDiagram::make({{{0, 1}, {2, 3}}, {{2}, {0}}, {{3}, {1}}});
}
inline CylSurface h11_three_cyl_surface() {
  return CylSurface::make(h11_three_cyl(), {Q(4), Q(2), Q(4), Q(2)}, {Q(2), Q(2), Q(4)}, {Q(0), Q(3), Q(0)});
}

inline CylDiagram diagram_3A() {
  return CylDiagram::make({{{7}, {0}}, {{3, 6, 5, 4}, {7, 1, 2}}, {{0, 2, 1}, {3, 4, 5, 6}}});
}
inline CylSurface diagram_3A_surface() {
  // lengths by label 0..7
  return CylSurface::make(diagram_3A(), {Q(6), Q(3), Q(3), Q(3), Q(3), Q(3), Q(3), Q(6)}, {Q(1), Q(2), Q(1)},
                          {Q(7, 2), Q(0), Q(0)});
}

inline CylDiagram diagram_3C() {
  return CylDiagram::make({{{1, 7}, {1, 8}}, {{8, 2}, {3, 6, 5, 4}}, {{3, 4, 5, 6}, {7, 2}}});
}
inline CylSurface diagram_3C_surface() {
  // labels 1..8 compact to 0..7
  return CylSurface::make(diagram_3C(), {Q(2), Q(6), Q(1), Q(3), Q(3), Q(1), Q(2), Q(2)}, {Q(2), Q(2), Q(2)},
                          {Q(0), Q(2), Q(0)});
}

inline CylDiagram diagram_4A() {
  return CylDiagram::make({{{7}, {0}}, {{8}, {1}}, {{3, 6, 5, 4}, {7, 8}}, {{0, 1}, {3, 4, 5, 6}}});
}
inline CylSurface diagram_4A_surface() {
  // labels 0,1,3..8 compact to 0..7
  return CylSurface::make(diagram_4A(), {Q(6), Q(6), Q(3), Q(3), Q(3), Q(3), Q(6), Q(6)},
                          {Q(1), Q(3), Q(2), Q(1)}, {Q(7, 2), Q(4), Q(0), Q(0)});
}

// the same diagram as 4A after a different choice of horizontal picture; p, q, r, s = 7..10
inline CylDiagram diagram_4A_alt() {
  return CylDiagram::make({{{3, 4, 5, 6}, {7, 8}}, {{7}, {9}}, {{8}, {10}}, {{9, 10}, {3, 6, 5, 4}}});
}

inline CylDiagram diagram_4B() {
  return CylDiagram::make({{{8}, {0}}, {{0, 7}, {8, 9}}, {{9}, {6, 5, 4, 3}}, {{3, 4, 5, 6}, {7}}});
}
inline CylSurface diagram_4B_surface() {
  // labels 0,3..9 compact to 0..7
  return CylSurface::make(diagram_4B(), {Q(2), Q(2), Q(2), Q(2), Q(2), Q(8), Q(2), Q(8)},
                          {Q(2), Q(2), Q(2), Q(2)}, {Q(3, 2), Q(0), Q(0), Q(0)});
}

// two homologous cylinders, each top glued to the other's bottom
inline CylDiagram diagram_6() {
  return CylDiagram::make({{{0, 1, 2, 3}, {4, 7, 6, 5}}, {{4, 5, 6, 7}, {0, 3, 2, 1}}});
}

// Config2: the tops of C1 and C2 make up the bottom of C3
inline CylDiagram diagram_2() {
  return CylDiagram::make({{{0, 1, 2}, {6}}, {{3, 4, 5}, {7}}, {{6, 7}, {0, 3, 2, 5, 1, 4}}});
}
inline CylSurface diagram_2_surface(const Q& tau1) {
  return CylSurface::make(diagram_2(), {Q(1), Q(2), Q(3), Q(1), Q(2), Q(3), Q(6), Q(6)}, {Q(1), Q(2), Q(1)},
                          {tau1, Q(0), Q(0)});
}

// Config1: two non-homologous cylinders
inline CylDiagram diagram_1() { return CylDiagram::make({{{0, 1, 2}, {0, 3, 2}}, {{3, 4, 5, 6}, {1, 6, 5, 4}}}); }

}  // namespace fixtures
