#pragma once

#include <string>
#include <vector>

namespace flatsurf {

using Perm = std::vector<int>;  // zero-based images

Perm perm_inverse(const Perm& p);
Perm perm_compose(const Perm& a, const Perm& b);  // (a ∘ b)(k) = a[b[k]]
std::vector<std::vector<int>> perm_cycles(const Perm& p);
bool is_permutation(const Perm& p);

// Square-tiled surface. Square h[k] is glued to the right of k, v[k] on top of k.
class Origami {
 public:
  Origami() = default;
  // validate_origami: SizeMismatch, NotTransitive.
  static Origami make(const Perm& h, const Perm& v);
  // One-based image arrays, as in the JSON record.
  static Origami from_one_based(const std::vector<int>& h, const std::vector<int>& v);

  int n() const { return int(h_.size()); }
  const Perm& h() const { return h_; }
  const Perm& v() const { return v_; }

  // Permutation walking counterclockwise around the lower-left corner of each square:
  // c = v ∘ h ∘ v^-1 ∘ h^-1. Its cycles are the vertices of the square tiling.
  Perm vertex_perm() const;
  // vertex index of the lower-left corner of each square
  std::vector<int> corner_vertex() const;

  Origami relabel(const Perm& pi) const;  // square k becomes pi[k]
  bool operator==(const Origami& o) const { return h_ == o.h_ && v_ == o.v_; }
  bool operator<(const Origami& o) const;
  std::string str() const;

 private:
  Perm h_, v_;
};

struct SingularityData {
  int genus = 1;
  std::vector<int> stratum;        // zero orders, nonincreasing, order-0 points dropped
  std::vector<int> vertex_orders;  // per vertex (cycle of vertex_perm), order = cycle length - 1
  int vertices = 0;
};

SingularityData singularity_data(const Origami& o);

// Minimal form under simultaneous conjugation: relabel by breadth-first search from each
// basepoint (visiting h then v), keep the lexicographically least (h,v) sequence.
struct CanonicalOrigami {
  Origami form;
  Perm relabel;          // old square -> canonical square, for the least basepoint achieving the minimum
  int automorphisms = 1;  // number of basepoints achieving the minimum
};
CanonicalOrigami canonicalize(const Origami& o);

// Named examples.
Origami torus_origami();
Origami l_origami();                 // h = (1 2), v = (1 3)
Origami eierlegende_wollmilchsau();  // Q8 with right multiplication by i and j

}  // namespace flatsurf
