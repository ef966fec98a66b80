#pragma once

#include <string>
#include <vector>

#include "flatsurf/origami.hpp"
#include "flatsurf/rational.hpp"

namespace flatsurf {

struct Holonomy {
  Q x, y;
  bool operator==(const Holonomy& o) const { return x == o.x && y == o.y; }
  Holonomy operator+(const Holonomy& o) const { return {x + o.x, y + o.y}; }
  Holonomy scaled(const Q& s) const { return {x * s, y * s}; }
};

struct Cylinder {
  std::vector<int> bottom;  // saddle labels left to right
  std::vector<int> top;     // saddle labels left to right
};

// Horizontal cylinder diagram. Labels are 0..m-1 internally; names keep the user's labels.
class CylDiagram {
 public:
  CylDiagram() = default;
  // MalformedDiagram on repeated/missing labels, empty boundaries, or disconnected data.
  static CylDiagram make(const std::vector<Cylinder>& cyls);
  static CylDiagram make(const std::vector<Cylinder>& cyls, const std::vector<int>& names);

  int r() const { return int(cyl_.size()); }
  int m() const { return int(bot_cyl_.size()); }
  const std::vector<Cylinder>& cylinders() const { return cyl_; }
  const Cylinder& cylinder(int i) const { return cyl_[i]; }
  const std::vector<int>& names() const { return names_; }
  int label_of_name(int name) const;

  int bottom_cyl(int s) const { return bot_cyl_[s]; }
  int bottom_pos(int s) const { return bot_pos_[s]; }
  int top_cyl(int s) const { return top_cyl_[s]; }
  int top_pos(int s) const { return top_pos_[s]; }
  int bottom_pred(int s) const;
  int bottom_succ(int s) const;
  int top_pred(int s) const;
  int top_succ(int s) const;

  // Zeros are the cycles of s -> top_succ(bottom_pred(s)); zero_left(s) is the zero at
  // the left end of saddle s, zero_right(s) at its right end.
  int zeros() const { return int(zero_order_.size()); }
  int zero_left(int s) const { return zero_left_[s]; }
  int zero_right(int s) const { return zero_left_[bottom_succ(s)]; }
  const std::vector<int>& zero_orders() const { return zero_order_; }
  // cyclic list of saddles s whose left end sits at the zero, in counterclockwise order
  const std::vector<std::vector<int>>& zero_cycles() const { return zero_cycle_; }
  int genus() const { return genus_; }
  std::vector<int> stratum() const;  // nonincreasing, order-0 points dropped

  bool operator==(const CylDiagram& o) const { return cyl_ == o.cyl_; }
  std::string str() const;

 private:
  std::vector<Cylinder> cyl_;
  std::vector<int> names_;
  std::vector<int> bot_cyl_, bot_pos_, top_cyl_, top_pos_;
  std::vector<int> zero_left_, zero_order_;
  std::vector<std::vector<int>> zero_cycle_;
  int genus_ = 0;
};

inline bool operator==(const Cylinder& a, const Cylinder& b) { return a.bottom == b.bottom && a.top == b.top; }

struct DiagramInvariants {
  int genus = 0;
  std::vector<int> stratum;
  std::vector<int> zero_orders;
  int r = 0, m = 0;
};
DiagramInvariants diagram_invariants(const CylDiagram& d);

// One positive integer length per label satisfying all cylinder constraints, or false.
bool realizable(const CylDiagram& d, std::vector<Q>* lengths = nullptr);

// Cylinder i in coordinates [0, w_i) x [0, h_i]: bottom saddles start at x = 0, top saddles
// start at x = twist_i, both read left to right.
class CylSurface {
 public:
  CylSurface() = default;
  // MalformedSurface on mismatched circumferences or nonpositive data; twists reduced mod w.
  static CylSurface make(const CylDiagram& d, const std::vector<Q>& lengths, const std::vector<Q>& heights,
                         const std::vector<Q>& twists);

  const CylDiagram& diagram() const { return d_; }
  const std::vector<Q>& lengths() const { return len_; }
  const std::vector<Q>& heights() const { return h_; }
  const std::vector<Q>& twists() const { return tw_; }
  const Q& length(int s) const { return len_[s]; }
  const Q& height(int i) const { return h_[i]; }
  const Q& twist(int i) const { return tw_[i]; }
  Q width(int i) const;
  Q area() const;
  // x coordinate where saddle s starts on the bottom of its bottom cylinder, in [0, w)
  Q bottom_start(int s) const;
  // x coordinate where saddle s starts on the top of its top cylinder, in [0, w)
  Q top_start(int s) const;

  bool operator==(const CylSurface& o) const {
    return d_ == o.d_ && len_ == o.len_ && h_ == o.h_ && tw_ == o.tw_;
  }

 private:
  CylDiagram d_;
  std::vector<Q> len_, h_, tw_;
};

// Horizontal cylinders of an origami: rows of h merged across leaves carrying no marked
// vertex. Marked vertices are the singular ones; on a torus the corner of square 0 is marked.
// Saddle names are the one-based index of the square whose lower-left corner starts them.
CylSurface horizontal_cylinders(const Origami& o);

}  // namespace flatsurf
