#include "flatsurf/rel_deform.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "flatsurf/diagrams.hpp"
#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

Int to_int_checked(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<Int>::max()) || v < BigInt(std::numeric_limits<Int>::min()))
    throw Error(ErrorKind::Overflow, "wrap count out of range");
  return Int(v);
}

std::vector<HomClass> core_classes(const HomBasis& B, const CylDiagram& d) { return core_curve_span(B, d).classes; }

bool rel_condition(const HomBasis& B, const CylDiagram& d, const std::vector<Q>& t) {
  if (int(t.size()) != d.r()) throw Error(ErrorKind::DomainError, "one rate per cylinder");
  auto cls = core_classes(B, d);
  for (int k = 0; k < B.abs_rank(); ++k) {
    Q acc = 0;
    for (int i = 0; i < d.r(); ++i) acc += t[i] * Q(cls[i].coords[k]);
    if (acc != 0) return false;
  }
  return true;
}

// prefix sums of saddle lengths along a boundary
std::vector<Q> prefix(const CylSurface& m, const std::vector<int>& seq) {
  std::vector<Q> s{0};
  for (int x : seq) s.push_back(s.back() + m.length(x));
  return s;
}

struct TopHit {
  int saddle;  // top saddle containing the point
  int index;   // its position on the top
  Q offset;    // distance from its left end
  BigInt wraps;
};

struct Geometry {
  const CylSurface& m;
  std::vector<std::vector<Q>> bsum, tsum;
  std::vector<Q> w;
  explicit Geometry(const CylSurface& s) : m(s) {
    const auto& d = s.diagram();
    for (int i = 0; i < d.r(); ++i) {
      bsum.push_back(prefix(s, d.cylinder(i).bottom));
      tsum.push_back(prefix(s, d.cylinder(i).top));
      w.push_back(bsum.back().back());
    }
  }
  int bottom_index(int i, const Q& x) const {
    const auto& s = bsum[i];
    return int(std::upper_bound(s.begin(), s.end() - 1, x) - s.begin()) - 1;
  }
  TopHit top(int i, const Q& X) const {
    Q delta = X - m.twist(i);
    BigInt n = floor_q(delta / w[i]);
    Q r = delta - Q(n) * w[i];
    const auto& s = tsum[i];
    int j = int(std::upper_bound(s.begin(), s.end() - 1, r) - s.begin()) - 1;
    return {m.diagram().cylinder(i).top[j], j, r - s[j], n};
  }
  Q bottom_start(int s) const { return bsum[m.diagram().bottom_cyl(s)][m.diagram().bottom_pos(s)]; }
};

Vec piece(const Geometry& G, int i, const Q& x, const Q& X) {
  const auto& d = G.m.diagram();
  Vec z(d.m() + d.r(), 0);
  const auto& cyl = d.cylinder(i);
  int jb = G.bottom_index(i, mod_q(x, G.w[i]));
  for (int l = 0; l < jb; ++l) z[cyl.bottom[l]] -= 1;
  z[crossing_edge(d, i)] += 1;
  TopHit h = G.top(i, X);
  Int n = to_int_checked(h.wraps);
  for (int s : cyl.top) z[s] += n;
  for (int l = 0; l < h.index; ++l) z[cyl.top[l]] += 1;
  return z;
}

void add_to(Vec& a, const Vec& b) {
  for (size_t k = 0; k < a.size(); ++k) a[k] = add_checked(a[k], b[k]);
}

std::vector<VanishingSaddle> vertical_connections(const CylSurface& m, int i) {
  const auto& d = m.diagram();
  const auto& cyl = d.cylinder(i);
  Q w = m.width(i);
  std::vector<VanishingSaddle> out;
  Q xb = 0;
  for (int b : cyl.bottom) {
    Q xt = m.twist(i);
    for (int t : cyl.top) {
      if (mod_q(xt - xb, w) == 0) out.push_back({i, xb, d.zero_left(b), d.zero_left(t)});
      xt += m.length(t);
    }
    xb += m.length(b);
  }
  return out;
}

void check_subset(const CylSurface& m, const std::vector<int>& subset, bool asserted) {
  const auto& d = m.diagram();
  for (int i : subset)
    if (i < 0 || i >= d.r()) throw Error(ErrorKind::DomainError, "cylinder index out of range");
  if (asserted || subset.empty()) return;
  auto hp = homologous_partition(d);
  std::vector<char> in(d.r(), 0);
  for (int i : subset) in[i] = 1;
  for (const auto& blk : hp.blocks) {
    int c = 0;
    for (int i : blk) c += in[i];
    if (c != 0 && c != int(blk.size()))
      throw Error(ErrorKind::InvalidClass, "subset splits a block of homologous cylinders");
  }
}

}  // namespace

std::vector<Holonomy> period_map(const CylSurface& m) {
  const auto& d = m.diagram();
  std::vector<Holonomy> p;
  for (int s = 0; s < d.m(); ++s) p.push_back({m.length(s), Q(0)});
  for (int i = 0; i < d.r(); ++i) p.push_back({m.twist(i), m.height(i)});
  return p;
}

std::vector<Holonomy> period_map(const CylSurface& m, const HomBasis& B) {
  if (B.tag != h1_bases(m.diagram()).tag) throw Error(ErrorKind::BasisMismatch, "basis built on another diagram");
  return period_map(m);
}

Holonomy chain_period(const CylSurface& m, const Vec& chain) {
  auto p = period_map(m);
  if (chain.size() != p.size()) throw Error(ErrorKind::BasisMismatch, "chain length does not match the complex");
  Holonomy h{0, 0};
  for (size_t e = 0; e < p.size(); ++e)
    if (chain[e]) h = h + p[e].scaled(Q(chain[e]));
  return h;
}

std::vector<Holonomy> absolute_periods(const CylSurface& m, const HomBasis& B, const Mat* marking) {
  std::vector<Holonomy> out;
  for (int k = 0; k < B.abs_rank(); ++k) {
    Vec z = B.abs_basis.col(k);
    if (marking) z = (*marking) * z;
    out.push_back(chain_period(m, z));
  }
  return out;
}

bool is_rel(const CylSurface& m, const std::vector<Q>& t) {
  return rel_condition(h1_bases(m.diagram()), m.diagram(), t);
}

std::vector<std::vector<Q>> rel_twist_space(const CylSurface& m) {
  const auto& d = m.diagram();
  auto B = h1_bases(d);
  auto cls = core_classes(B, d);
  std::vector<Vec> cols;
  for (const auto& c : cls) cols.push_back(c.coords);
  Mat K = kernel_basis(Mat::from_cols(cols, B.abs_rank()));
  std::vector<std::vector<Q>> out;
  for (int j = 0; j < K.cols(); ++j) {
    std::vector<Q> v;
    for (int i = 0; i < K.rows(); ++i) v.push_back(Q(K(i, j)));
    out.push_back(v);
  }
  return out;
}

Mat twist_marking(const CylSurface& m, const std::vector<Q>& disp) {
  const auto& d = m.diagram();
  const int E = d.m() + d.r();
  Mat M(E, E);
  for (int e = 0; e < E; ++e) M(e, e) = 1;
  for (int i = 0; i < d.r(); ++i) {
    Int k = to_int_checked(floor_q((m.twist(i) + disp[i]) / m.width(i)));
    for (int s : d.cylinder(i).top) M(s, crossing_edge(d, i)) += k;
  }
  return M;
}

CylSurface apply_rel_twist(const CylSurface& m, const std::vector<Q>& t) {
  const auto& d = m.diagram();
  auto B = h1_bases(d);
  if (!rel_condition(B, d, t)) throw Error(ErrorKind::NotRel, "twist moves absolute periods");
  std::vector<Q> tw = m.twists();
  for (int i = 0; i < d.r(); ++i) tw[i] += t[i];
  CylSurface out = CylSurface::make(d, m.lengths(), m.heights(), tw);
  Mat mk = twist_marking(m, t);
  if (absolute_periods(out, B, &mk) != absolute_periods(m, B))
    throw Error(ErrorKind::InvariantViolation, "REL twist changed an absolute period");
  return out;
}

StretchResult rel_stretch_path(const CylSurface& m, const std::vector<Q>& s, const Q& stop) {
  const auto& d = m.diagram();
  if (!rel_condition(h1_bases(d), d, s)) throw Error(ErrorKind::NotRel, "stretch moves absolute periods");
  StretchResult res;
  bool any = false;
  Q ustar;
  for (int i = 0; i < d.r(); ++i) {
    if (s[i] >= 0) continue;
    Q u = -m.height(i) / s[i];
    if (!any || u < ustar) ustar = u, any = true;
  }
  if (any && ustar <= stop) {
    res.collapsed = true;
    res.event.u = ustar;
    for (int i = 0; i < d.r(); ++i)
      if (m.height(i) + ustar * s[i] == 0) {
        res.event.cylinders.push_back(i);
        auto v = vertical_connections(m, i);
        res.event.vanishing.insert(res.event.vanishing.end(), v.begin(), v.end());
      }
    res.surface = m;
    return res;
  }
  std::vector<Q> h = m.heights();
  for (int i = 0; i < d.r(); ++i) h[i] += stop * s[i];
  res.surface = CylSurface::make(d, m.lengths(), h, m.twists());
  return res;
}

const char* to_string(CollapseKind k) {
  switch (k) {
    case CollapseKind::LowerStratumSameGenus: return "LowerStratumSameGenus";
    case CollapseKind::CurvePinched: return "CurvePinched";
    case CollapseKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

CollapseClass classify_collapse(const CollapseEvent& e, const CylSurface& m) {
  CollapseClass c;
  if (e.vanishing.empty()) {
    c.reason = "no vertical connection vanishes";
    return c;
  }
  const auto& d = m.diagram();
  std::vector<int> p(d.zeros());
  std::iota(p.begin(), p.end(), 0);
  auto find = [&](int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  for (const auto& v : e.vanishing) {
    int a = find(v.bottom_zero), b = find(v.top_zero);
    if (a == b) {
      c.kind = CollapseKind::CurvePinched;
      c.reason = v.bottom_zero == v.top_zero ? "vanishing connection from a zero to itself"
                                             : "vanishing connections close up";
      return c;
    }
    p[a] = b;
  }
  std::map<int, int> merged;
  for (int z = 0; z < d.zeros(); ++z) merged[find(z)] += d.zero_orders()[z];
  for (auto [r, k] : merged)
    if (k > 0) c.target_stratum.push_back(k);
  std::sort(c.target_stratum.rbegin(), c.target_stratum.rend());
  c.kind = CollapseKind::LowerStratumSameGenus;
  return c;
}

CylSurface apply_matrix(const CylSurface& m, const MatrixAction& a) {
  check_subset(m, a.subset, a.asserted);
  const auto& d = m.diagram();
  std::vector<int> sel = a.subset;
  if (sel.empty()) {
    sel.resize(d.r());
    std::iota(sel.begin(), sel.end(), 0);
  }
  std::vector<Q> h = m.heights(), tw = m.twists();
  for (int i : sel) {
    if (a.op == MatrixOp::Horocycle) {
      tw[i] += a.param * h[i];
    } else {
      if (a.param <= 0) throw Error(ErrorKind::DomainError, "diagonal factor must be positive");
      h[i] *= a.param;
    }
  }
  return CylSurface::make(d, m.lengths(), h, tw);
}

CollapseEvent class_collapse(const CylSurface& m, const std::vector<int>& subset, bool asserted) {
  if (subset.empty()) throw Error(ErrorKind::DomainError, "nothing to collapse");
  check_subset(m, subset, asserted);
  CollapseEvent e;
  e.u = 0;
  e.cylinders = subset;
  std::sort(e.cylinders.begin(), e.cylinders.end());
  for (int i : e.cylinders) {
    auto v = vertical_connections(m, i);
    e.vanishing.insert(e.vanishing.end(), v.begin(), v.end());
  }
  return e;
}

Direction Direction::of(const Holonomy& v) {
  if (v.y == 0) throw Error(ErrorKind::DomainError, "horizontal direction");
  Direction d;
  if (v.x == 0) {
    d.vertical = true;
  } else {
    d.slope = v.y / v.x;
  }
  return d;
}

Vec piece_chain(const CylSurface& m, int cyl, const Q& x, const Q& X) { return piece(Geometry(m), cyl, x, X); }

DirectionDecomposition direction_cylinders(const CylSurface& m, const Direction& dir, long cap) {
  const auto& d = m.diagram();
  const int r = d.r(), M = d.m();
  Geometry G(m);
  DirectionDecomposition out;

  BigInt p, q;
  if (dir.vertical) {
    p = 1, q = 0;
  } else {
    if (dir.slope == 0) throw Error(ErrorKind::DomainError, "horizontal direction");
    p = numerator(dir.slope), q = denominator(dir.slope);
    if (p < 0) p = -p, q = -q;
  }
  {
    // a q + b p = 1
    BigInt r0 = q, r1 = p, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      BigInt k = r0 / r1;
      BigInt tmp = r0 - k * r1;
      r0 = r1, r1 = tmp;
      tmp = s0 - k * s1, s0 = s1, s1 = tmp;
      tmp = t0 - k * t1, t0 = t1, t1 = tmp;
    }
    if (r0 < 0) r0 = -r0, s0 = -s0, t0 = -t0;
    out.a = s0, out.b = t0;
  }
  out.p = p, out.q = q;
  const Q c = Q(q) / Q(p);  // horizontal drift per unit of height

  struct Mark {
    Q x;
    int sigma;
    bool start;
  };
  std::vector<std::vector<Mark>> marks(r);
  std::vector<Q> rise(M, 0);
  out.saddle_chains.assign(M, Vec(M + r, 0));
  for (int s = 0; s < M; ++s) {
    int i = d.bottom_cyl(s);
    Q x = G.bottom_start(s);
    marks[i].push_back({x, s, true});
    for (;;) {
      Q X = x + c * m.height(i);
      add_to(out.saddle_chains[s], piece(G, i, x, X));
      rise[s] += m.height(i);
      TopHit h = G.top(i, X);
      if (h.offset == 0) break;
      if (++out.crossings > cap) return out;
      i = d.bottom_cyl(h.saddle);
      x = G.bottom_start(h.saddle) + h.offset;
      marks[i].push_back({x, s, false});
    }
  }

  struct Interval {
    int cyl;
    Q left, len;
    int lsig, rsig;  // separatrix starting at the endpoint, or -1
  };
  std::vector<Interval> iv;
  std::vector<std::vector<int>> by_cyl(r);
  for (int i = 0; i < r; ++i) {
    auto& mk = marks[i];
    std::sort(mk.begin(), mk.end(), [](const Mark& u, const Mark& v) { return u.x < v.x; });
    for (size_t k = 0; k < mk.size(); ++k) {
      const Mark& L = mk[k];
      const Mark& R = mk[(k + 1) % mk.size()];
      Q len = R.x - L.x;
      if (k + 1 == mk.size()) len += G.w[i];
      if (len <= 0) throw Error(ErrorKind::InvariantViolation, "two separatrices cross at one point");
      by_cyl[i].push_back(int(iv.size()));
      iv.push_back({i, L.x, len, L.start ? L.sigma : -1, R.start ? R.sigma : -1});
    }
  }
  auto locate = [&](int i, const Q& x) {
    const auto& ids = by_cyl[i];
    Q y = mod_q(x - iv[ids[0]].left, G.w[i]) + iv[ids[0]].left;
    int lo = 0, hi = int(ids.size()) - 1;
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (iv[ids[mid]].left <= y) lo = mid;
      else hi = mid - 1;
    }
    return ids[lo];
  };
  std::vector<int> next(iv.size());
  for (size_t k = 0; k < iv.size(); ++k) {
    const auto& I = iv[k];
    Q mid = I.left + I.len / 2;
    TopHit h = G.top(I.cyl, mid + c * m.height(I.cyl));
    int j = d.bottom_cyl(h.saddle);
    int n = locate(j, G.bottom_start(h.saddle) + h.offset);
    if (iv[n].len != I.len) throw Error(ErrorKind::InvariantViolation, "return map is not a translation on intervals");
    next[k] = n;
  }

  std::vector<Cylinder> cyls;
  std::vector<Q> heights, twists, lengths(M);
  for (int s = 0; s < M; ++s) lengths[s] = rise[s] / Q(p);
  std::vector<char> seen(iv.size(), 0);
  for (size_t k0 = 0; k0 < iv.size(); ++k0) {
    if (seen[k0]) continue;
    std::vector<int> cyc;
    for (int k = int(k0); !seen[k]; k = next[k]) seen[k] = 1, cyc.push_back(k);
    Cylinder cy;
    Q T = 0, Tb = -1, Tt = -1;
    Vec core(M + r, 0);
    for (int k : cyc) {
      const auto& I = iv[k];
      if (I.lsig >= 0) {
        if (Tt < 0) Tt = T;
        cy.top.push_back(I.lsig);
      }
      if (I.rsig >= 0) {
        if (Tb < 0) Tb = T;
        cy.bottom.push_back(I.rsig);
      }
      Q mid = I.left + I.len / 2;
      add_to(core, piece(G, I.cyl, mid, mid + c * m.height(I.cyl)));
      T += m.height(I.cyl);
    }
    const Q circ = T / Q(p), L = iv[cyc[0]].len;
    Q sb = 0, st = 0;
    for (int s : cy.bottom) sb += lengths[s];
    for (int s : cy.top) st += lengths[s];
    if (sb != circ || st != circ) throw Error(ErrorKind::InvariantViolation, "new cylinder boundaries do not close");
    heights.push_back(Q(p) * L);
    twists.push_back(mod_q((Tt - Tb) / Q(p) - Q(out.a) * L, circ));
    cyls.push_back(cy);
    out.core_chains.push_back(core);
  }
  out.surface = CylSurface::make(CylDiagram::make(cyls, d.names()), lengths, heights, twists);
  if (out.surface.area() != m.area()) throw Error(ErrorKind::InvariantViolation, "area changed under SL(2,Z)");
  out.determined = true;
  return out;
}

}  // namespace flatsurf
