#include "flatsurf/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorKind::MalformedDiagram, why); }

}  // namespace

CylDiagram CylDiagram::make(const std::vector<Cylinder>& cyls) { return make(cyls, {}); }

CylDiagram CylDiagram::make(const std::vector<Cylinder>& cyls, const std::vector<int>& names) {
  if (cyls.empty()) malformed("no cylinders");
  std::map<int, int> bottom_count, top_count;
  for (const auto& c : cyls) {
    if (c.bottom.empty() || c.top.empty()) malformed("cylinder with empty boundary");
    for (int s : c.bottom) ++bottom_count[s];
    for (int s : c.top) ++top_count[s];
  }
  for (auto [s, k] : bottom_count)
    if (k != 1) malformed("label " + std::to_string(s) + " appears " + std::to_string(k) + " times on bottoms");
  for (auto [s, k] : top_count)
    if (k != 1) malformed("label " + std::to_string(s) + " appears " + std::to_string(k) + " times on tops");
  std::vector<int> labels;
  for (auto [s, k] : bottom_count) labels.push_back(s);
  std::vector<int> top_labels;
  for (auto [s, k] : top_count) top_labels.push_back(s);
  if (labels != top_labels) malformed("bottom and top label sets differ");

  CylDiagram d;
  const int m = int(labels.size());
  const bool compact = names.empty();
  std::map<int, int> index;
  if (compact) {
    for (int i = 0; i < m; ++i) index[labels[i]] = i;
    d.names_ = labels;
  } else {
    if (int(names.size()) != m) malformed("names do not match label count");
    for (int i = 0; i < m; ++i) {
      if (labels[i] != i) malformed("explicit names require labels 0..m-1");
      index[i] = i;
    }
    d.names_ = names;
  }
  for (const auto& c : cyls) {
    Cylinder cc;
    for (int s : c.bottom) cc.bottom.push_back(index[s]);
    for (int s : c.top) cc.top.push_back(index[s]);
    d.cyl_.push_back(std::move(cc));
  }
  d.bot_cyl_.assign(m, -1);
  d.bot_pos_.assign(m, -1);
  d.top_cyl_.assign(m, -1);
  d.top_pos_.assign(m, -1);
  for (int i = 0; i < d.r(); ++i) {
    for (int p = 0; p < int(d.cyl_[i].bottom.size()); ++p) d.bot_cyl_[d.cyl_[i].bottom[p]] = i, d.bot_pos_[d.cyl_[i].bottom[p]] = p;
    for (int p = 0; p < int(d.cyl_[i].top.size()); ++p) d.top_cyl_[d.cyl_[i].top[p]] = i, d.top_pos_[d.cyl_[i].top[p]] = p;
  }
  UnionFind uf(d.r());
  for (int s = 0; s < m; ++s) uf.unite(d.bot_cyl_[s], d.top_cyl_[s]);
  for (int i = 0; i < d.r(); ++i)
    if (uf.find(i) != uf.find(0)) malformed("diagram is disconnected");

  d.zero_left_.assign(m, -1);
  for (int s = 0; s < m; ++s) {
    if (d.zero_left_[s] >= 0) continue;
    std::vector<int> cyc;
    int z = int(d.zero_cycle_.size());
    for (int t = s; d.zero_left_[t] < 0; t = d.top_succ(d.bottom_pred(t))) d.zero_left_[t] = z, cyc.push_back(t);
    d.zero_order_.push_back(int(cyc.size()) - 1);
    d.zero_cycle_.push_back(std::move(cyc));
  }
  const int V = d.zeros();
  if ((m - V) % 2 != 0) malformed("odd Euler characteristic");
  d.genus_ = (m - V + 2) / 2;
  return d;
}

int CylDiagram::label_of_name(int name) const {
  for (int s = 0; s < m(); ++s)
    if (names_[s] == name) return s;
  throw Error(ErrorKind::MalformedDiagram, "no saddle named " + std::to_string(name));
}

int CylDiagram::bottom_pred(int s) const {
  const auto& b = cyl_[bot_cyl_[s]].bottom;
  return b[(bot_pos_[s] + b.size() - 1) % b.size()];
}
int CylDiagram::bottom_succ(int s) const {
  const auto& b = cyl_[bot_cyl_[s]].bottom;
  return b[(bot_pos_[s] + 1) % b.size()];
}
int CylDiagram::top_pred(int s) const {
  const auto& t = cyl_[top_cyl_[s]].top;
  return t[(top_pos_[s] + t.size() - 1) % t.size()];
}
int CylDiagram::top_succ(int s) const {
  const auto& t = cyl_[top_cyl_[s]].top;
  return t[(top_pos_[s] + 1) % t.size()];
}

std::vector<int> CylDiagram::stratum() const {
  std::vector<int> k;
  for (int o : zero_order_)
    if (o > 0) k.push_back(o);
  std::sort(k.rbegin(), k.rend());
  return k;
}

std::string CylDiagram::str() const {
  std::ostringstream os;
  for (int i = 0; i < r(); ++i) {
    os << (i ? " " : "") << "(";
    for (size_t p = 0; p < cyl_[i].bottom.size(); ++p) os << (p ? "," : "") << names_[cyl_[i].bottom[p]];
    os << ")-(";
    for (size_t p = 0; p < cyl_[i].top.size(); ++p) os << (p ? "," : "") << names_[cyl_[i].top[p]];
    os << ")";
  }
  return os.str();
}

DiagramInvariants diagram_invariants(const CylDiagram& d) {
  DiagramInvariants inv;
  inv.genus = d.genus();
  inv.stratum = d.stratum();
  inv.zero_orders = d.zero_orders();
  inv.r = d.r();
  inv.m = d.m();
  int total = std::accumulate(inv.zero_orders.begin(), inv.zero_orders.end(), 0);
  if (total != 2 * inv.genus - 2) throw Error(ErrorKind::InvariantViolation, "zero orders disagree with Euler characteristic");
  return inv;
}

bool realizable(const CylDiagram& d, std::vector<Q>* lengths) {
  // edge s runs from the cylinder carrying s on top to the one carrying it on the bottom
  const int r = d.r(), m = d.m();
  std::vector<std::vector<int>> out(r);
  for (int s = 0; s < m; ++s) out[d.top_cyl(s)].push_back(s);
  std::vector<long long> total(m, 0);
  for (int s = 0; s < m; ++s) {
    int src = d.bottom_cyl(s), dst = d.top_cyl(s);
    std::vector<int> via(r, -1);
    std::vector<char> seen(r, 0);
    std::queue<int> q;
    q.push(src);
    seen[src] = 1;
    while (!q.empty() && !seen[dst]) {
      int a = q.front();
      q.pop();
      for (int e : out[a]) {
        int b = d.bottom_cyl(e);
        if (!seen[b]) seen[b] = 1, via[b] = e, q.push(b);
      }
    }
    if (!seen[dst]) return false;
    ++total[s];
    for (int c = dst; c != src;) {
      int e = via[c];
      ++total[e];
      c = d.top_cyl(e);
    }
  }
  if (lengths) {
    lengths->clear();
    for (long long t : total) lengths->push_back(Q(t));
  }
  return true;
}

CylSurface CylSurface::make(const CylDiagram& d, const std::vector<Q>& lengths, const std::vector<Q>& heights,
                            const std::vector<Q>& twists) {
  auto bad = [](const std::string& why) { throw Error(ErrorKind::MalformedSurface, why); };
  if (int(lengths.size()) != d.m() || int(heights.size()) != d.r() || int(twists.size()) != d.r())
    bad("metric data does not match diagram size");
  for (const Q& l : lengths)
    if (l <= 0) bad("nonpositive saddle length");
  for (const Q& h : heights)
    if (h <= 0) bad("nonpositive height");
  CylSurface m;
  m.d_ = d;
  m.len_ = lengths;
  m.h_ = heights;
  m.tw_.resize(d.r());
  for (int i = 0; i < d.r(); ++i) {
    Q wb = 0, wt = 0;
    for (int s : d.cylinder(i).bottom) wb += lengths[s];
    for (int s : d.cylinder(i).top) wt += lengths[s];
    if (wb != wt) bad("cylinder " + std::to_string(i) + " has different top and bottom lengths");
    m.tw_[i] = mod_q(twists[i], wb);
  }
  return m;
}

Q CylSurface::width(int i) const {
  Q w = 0;
  for (int s : d_.cylinder(i).bottom) w += len_[s];
  return w;
}

Q CylSurface::area() const {
  Q a = 0;
  for (int i = 0; i < d_.r(); ++i) a += width(i) * h_[i];
  return a;
}

Q CylSurface::bottom_start(int s) const {
  const auto& b = d_.cylinder(d_.bottom_cyl(s)).bottom;
  Q x = 0;
  for (int p = 0; p < d_.bottom_pos(s); ++p) x += len_[b[p]];
  return x;
}

Q CylSurface::top_start(int s) const {
  int i = d_.top_cyl(s);
  const auto& t = d_.cylinder(i).top;
  Q x = tw_[i];
  for (int p = 0; p < d_.top_pos(s); ++p) x += len_[t[p]];
  return mod_q(x, width(i));
}

CylSurface horizontal_cylinders(const Origami& o) {
  const int n = o.n();
  const Perm& h = o.h();
  const Perm& v = o.v();
  auto cyc = perm_cycles(o.vertex_perm());
  std::vector<int> vert = o.corner_vertex();
  std::vector<char> marked(cyc.size(), 0);
  bool any = false;
  for (size_t c = 0; c < cyc.size(); ++c)
    if (cyc[c].size() > 1) marked[c] = 1, any = true;
  if (!any) marked[vert[0]] = 1;
  auto corner_marked = [&](int k) { return marked[vert[k]] != 0; };

  // rows of h, keyed by their squares
  auto rows = perm_cycles(h);
  std::vector<int> row_of(n);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int k : rows[r]) row_of[k] = int(r);
  auto row_bottom_marked = [&](int r) {
    return std::any_of(rows[r].begin(), rows[r].end(), corner_marked);
  };
  auto row_top_marked = [&](int r) {
    return std::any_of(rows[r].begin(), rows[r].end(), [&](int k) { return corner_marked(v[k]); });
  };

  struct Cyl {
    int start;  // bottom-left square, its lower-left corner is marked
    int w, height;
  };
  std::vector<Cyl> cyls;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (!row_bottom_marked(int(r))) continue;
    int start = *std::min_element(rows[r].begin(), rows[r].end(), [&](int a, int b) {
      bool ma = corner_marked(a), mb = corner_marked(b);
      if (ma != mb) return ma;
      return a < b;
    });
    int height = 1;
    int cur = int(r);
    while (!row_top_marked(cur)) {
      cur = row_of[v[rows[cur][0]]];
      ++height;
      if (height > n) throw Error(ErrorKind::InvariantViolation, "cylinder stacking did not terminate");
    }
    cyls.push_back({start, int(rows[r].size()), height});
  }
  std::sort(cyls.begin(), cyls.end(), [](const Cyl& a, const Cyl& b) { return a.start < b.start; });

  // saddles are named by their starting square
  std::vector<std::vector<int>> bottoms, tops;
  std::vector<int> twist;
  std::map<int, int> saddle_len;
  for (const Cyl& c : cyls) {
    std::vector<int> pos(c.w);
    pos[0] = c.start;
    for (int p = 1; p < c.w; ++p) pos[p] = h[pos[p - 1]];
    std::vector<int> above(c.w);
    for (int p = 0; p < c.w; ++p) {
      int k = pos[p];
      for (int j = 0; j < c.height; ++j) k = v[k];
      above[p] = k;
    }
    std::vector<int> bj, tj;
    for (int p = 0; p < c.w; ++p) {
      if (corner_marked(pos[p])) bj.push_back(p);
      if (corner_marked(above[p])) tj.push_back(p);
    }
    std::vector<int> bottom, top;
    for (size_t a = 0; a < bj.size(); ++a) {
      int next = a + 1 < bj.size() ? bj[a + 1] : bj[0] + c.w;
      bottom.push_back(pos[bj[a]]);
      saddle_len[pos[bj[a]]] = next - bj[a];
    }
    for (int p : tj) top.push_back(above[p]);
    bottoms.push_back(bottom);
    tops.push_back(top);
    twist.push_back(tj[0]);
  }
  std::map<int, int> label;
  std::vector<int> names;
  for (auto [sq, len] : saddle_len) label[sq] = int(names.size()), names.push_back(sq + 1);
  std::vector<Cylinder> dc;
  std::vector<Q> heights, twists;
  for (size_t i = 0; i < cyls.size(); ++i) {
    Cylinder c;
    for (int sq : bottoms[i]) c.bottom.push_back(label.at(sq));
    for (int sq : tops[i]) c.top.push_back(label.at(sq));
    dc.push_back(c);
    heights.push_back(Q(cyls[i].height));
    twists.push_back(Q(twist[i]));
  }
  std::vector<Q> lengths(names.size());
  for (auto [sq, len] : saddle_len) lengths[label[sq]] = Q(len);
  return CylSurface::make(CylDiagram::make(dc, names), lengths, heights, twists);
}

}  // namespace flatsurf
