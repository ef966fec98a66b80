#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flatsurf/intmat.hpp"
#include "flatsurf/origami.hpp"
#include "flatsurf/surface.hpp"

namespace flatsurf {

// 2-complex of an oriented closed surface with the cyclic order of half-edges at each vertex.
struct CellComplex {
  struct HalfEdge {
    int edge;
    bool outgoing;
  };
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (tail, head)
  std::vector<Vec> faces;                  // boundary as edge coefficients
  std::vector<std::vector<HalfEdge>> rotation;  // counterclockwise around each vertex
  std::vector<std::string> edge_names;

  Mat boundary1() const;  // vertices x edges
  Mat boundary2() const;  // edges x faces
};

// Algebraic intersection number of two 1-cycles, from the rotation system
// (standard orientation: horizontal . vertical = +1).
Int intersection_of_cycles(const CellComplex& X, const Vec& z1, const Vec& z2);

// Integer bases of H1(X) and H1(X, vertices).
struct HomBasis {
  std::uint64_t tag = 0;
  int genus = 0;
  CellComplex complex;
  Mat abs_basis;   // edges x 2g, columns are cycles
  Mat abs_coords;  // 2g x edges, coordinates of a cycle
  Mat J;           // 2g x 2g, standard symplectic on the chosen basis
  bool has_relative = false;
  Mat rel_basis;   // edges x R
  Mat rel_coords;  // R x edges, coordinates of a relative chain
  Mat incl;        // R x 2g, absolute basis in relative coordinates
  Mat projection;  // 2g x R, the dual map H^1(X, Sigma) -> H^1(X) in dual coordinates

  int abs_rank() const { return abs_basis.cols(); }
  int rel_rank() const { return rel_basis.cols(); }
  int edges() const { return int(complex.edges.size()); }
};

struct HomClass {
  std::uint64_t tag = 0;
  bool absolute = true;
  Vec coords;
  bool operator==(const HomClass& o) const { return tag == o.tag && absolute == o.absolute && coords == o.coords; }
};

HomBasis homology_of_complex(const CellComplex& X, bool relative);

// Saddles 0..m-1 then one crossing edge per cylinder (bottom start to top start); faces are cylinders.
CellComplex diagram_complex(const CylDiagram& d);
HomBasis h1_bases(const CylDiagram& d);

// Edges x_k (bottom of square k) = 2k, y_k (left side) = 2k+1; faces are squares.
CellComplex origami_complex(const Origami& o);
HomBasis origami_homology(const Origami& o);

// Chain helpers over the diagram complex.
int crossing_edge(const CylDiagram& d, int cyl);
Vec core_curve_chain(const CylDiagram& d, int cyl);

// Class of a cycle; throws DomainError if the chain is not closed.
HomClass absolute_class(const HomBasis& B, const Vec& chain);
HomClass relative_class(const HomBasis& B, const Vec& chain);
Vec class_chain(const HomBasis& B, const HomClass& c);
HomClass basis_class(const HomBasis& B, int index);

Int intersection_pairing(const HomBasis& B, const HomClass& x, const HomClass& y);

struct CoreSpan {
  std::vector<HomClass> classes;
  int dimension = 0;
};
CoreSpan core_curve_span(const CylDiagram& d);
CoreSpan core_curve_span(const HomBasis& B, const CylDiagram& d);

int forni_dim_bound(int d, int g);
int class_rank(const std::vector<HomClass>& classes);
bool is_lagrangian(const HomBasis& B, const std::vector<HomClass>& classes);

struct RealizedClass {
  HomClass cls;
  std::string witness;
};
struct ForniCertificate {
  bool accepted = false;
  std::string condition;  // "i" or "ii"
  std::vector<std::string> witnesses;
  std::string reason;     // rejection reason
};
ForniCertificate certify_forni_trivial(const HomBasis& B, const std::vector<RealizedClass>& realized);

}  // namespace flatsurf
