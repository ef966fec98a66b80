#pragma once

#include <string>
#include <vector>

#include "flatsurf/homology.hpp"
#include "flatsurf/surface.hpp"

namespace flatsurf {

// Holonomy of every edge of the diagram complex: saddle s -> (l_s, 0), crossing edge of
// cylinder i -> (tau_i, h_i).
std::vector<Holonomy> period_map(const CylSurface& m);
// Same, after checking that B was built on m's diagram (BasisMismatch otherwise).
std::vector<Holonomy> period_map(const CylSurface& m, const HomBasis& B);
Holonomy chain_period(const CylSurface& m, const Vec& chain);
// Periods of B's absolute basis; marking maps B's edges to m's edges when m was deformed.
std::vector<Holonomy> absolute_periods(const CylSurface& m, const HomBasis& B, const Mat* marking = nullptr);

// Displacements t with sum t_i [core_i] = 0.
bool is_rel(const CylSurface& m, const std::vector<Q>& t);
std::vector<std::vector<Q>> rel_twist_space(const CylSurface& m);

// Chain map from the old diagram complex to the new one after moving each top by d_i: a
// crossing edge that wraps k_i times picks up k_i copies of its top.
Mat twist_marking(const CylSurface& m, const std::vector<Q>& d);
CylSurface apply_rel_twist(const CylSurface& m, const std::vector<Q>& t);

struct VanishingSaddle {
  int cylinder;
  Q x;  // bottom position of the vertical connection
  int bottom_zero, top_zero;
};
struct CollapseEvent {
  Q u;
  std::vector<int> cylinders;
  std::vector<VanishingSaddle> vanishing;
};
struct StretchResult {
  bool collapsed = false;
  CylSurface surface;  // at stop when nothing collapsed
  CollapseEvent event;
};
// Heights h + u s for u in [0, stop].
StretchResult rel_stretch_path(const CylSurface& m, const std::vector<Q>& s, const Q& stop);

enum class CollapseKind { LowerStratumSameGenus, CurvePinched, Inconclusive };
const char* to_string(CollapseKind k);
struct CollapseClass {
  CollapseKind kind = CollapseKind::Inconclusive;
  std::vector<int> target_stratum;
  std::string reason;
};
CollapseClass classify_collapse(const CollapseEvent& e, const CylSurface& m);

enum class MatrixOp { Horocycle, Diagonal };
struct MatrixAction {
  MatrixOp op = MatrixOp::Horocycle;
  Q param;                  // shear t, or the rational factor replacing e^s
  std::vector<int> subset;  // empty: every cylinder
  bool asserted = false;    // subset declared an equivalence class by the caller
};
// InvalidClass when the subset is not a union of homologous blocks and not asserted.
CylSurface apply_matrix(const CylSurface& m, const MatrixAction& a);
// Limit of the class diagonal action as the factor goes to 0.
CollapseEvent class_collapse(const CylSurface& m, const std::vector<int>& subset, bool asserted = false);

struct Direction {
  bool vertical = false;
  Q slope;
  static Direction of(const Holonomy& v);
};

// Integer chain of a segment inside cylinder i from bottom point x to the top point with
// unwrapped coordinate X, with partial saddle pieces dropped (they cancel along a closed path).
Vec piece_chain(const CylSurface& m, int cyl, const Q& x, const Q& X);

struct DirectionDecomposition {
  bool determined = false;
  long crossings = 0;
  // new coordinates are g * old with g = [[a, b], [-p, q]] in SL(2,Z), direction (q, p)
  BigInt a, b, p, q;
  CylSurface surface;                // saddle s of the new surface starts where the separatrix
                                     // leaving the left end of old saddle s upward starts
  std::vector<Vec> core_chains;      // per new cylinder, in the old diagram complex
  std::vector<Vec> saddle_chains;    // per new saddle, relative chains in the old complex
};
DirectionDecomposition direction_cylinders(const CylSurface& m, const Direction& dir, long cap = 100000);

}  // namespace flatsurf
