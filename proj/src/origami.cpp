#include "flatsurf/origami.hpp"

#include <algorithm>
#include <sstream>

#include "flatsurf/errors.hpp"

namespace flatsurf {

Perm perm_inverse(const Perm& p) {
  Perm q(p.size());
  for (size_t k = 0; k < p.size(); ++k) q[p[k]] = int(k);
  return q;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (size_t k = 0; k < b.size(); ++k) c[k] = a[b[k]];
  return c;
}

std::vector<std::vector<int>> perm_cycles(const Perm& p) {
  std::vector<std::vector<int>> cycles;
  std::vector<char> seen(p.size(), 0);
  for (size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> c;
    for (int k = int(s); !seen[k]; k = p[k]) seen[k] = 1, c.push_back(k);
    cycles.push_back(std::move(c));
  }
  return cycles;
}

bool is_permutation(const Perm& p) {
  std::vector<char> hit(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= int(p.size()) || hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

Origami Origami::make(const Perm& h, const Perm& v) {
  if (h.size() != v.size() || h.empty()) throw Error(ErrorKind::SizeMismatch, "gluing permutations differ in size or are empty");
  if (!is_permutation(h) || !is_permutation(v)) throw Error(ErrorKind::SizeMismatch, "gluing data is not a permutation of {1..n}");
  const int n = int(h.size());
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int k = stack.back();
    stack.pop_back();
    for (int nb : {h[k], v[k]}) {
      if (!seen[nb]) seen[nb] = 1, ++count, stack.push_back(nb);
    }
  }
  if (count != n) throw Error(ErrorKind::NotTransitive, "gluing group does not act transitively");
  Origami o;
  o.h_ = h;
  o.v_ = v;
  return o;
}

Origami Origami::from_one_based(const std::vector<int>& h, const std::vector<int>& v) {
  Perm h0(h.size()), v0(v.size());
  for (size_t k = 0; k < h.size(); ++k) h0[k] = h[k] - 1;
  for (size_t k = 0; k < v.size(); ++k) v0[k] = v[k] - 1;
  return make(h0, v0);
}

Perm Origami::vertex_perm() const {
  Perm hi = perm_inverse(h_), vi = perm_inverse(v_);
  return perm_compose(v_, perm_compose(h_, perm_compose(vi, hi)));
}

std::vector<int> Origami::corner_vertex() const {
  std::vector<int> id(n());
  auto cyc = perm_cycles(vertex_perm());
  for (size_t c = 0; c < cyc.size(); ++c)
    for (int k : cyc[c]) id[k] = int(c);
  return id;
}

Origami Origami::relabel(const Perm& pi) const {
  Perm h(n()), v(n());
  for (int k = 0; k < n(); ++k) {
    h[pi[k]] = pi[h_[k]];
    v[pi[k]] = pi[v_[k]];
  }
  Origami o;
  o.h_ = std::move(h);
  o.v_ = std::move(v);
  return o;
}

bool Origami::operator<(const Origami& o) const {
  if (n() != o.n()) return n() < o.n();
  for (int k = 0; k < n(); ++k) {
    if (h_[k] != o.h_[k]) return h_[k] < o.h_[k];
    if (v_[k] != o.v_[k]) return v_[k] < o.v_[k];
  }
  return false;
}

std::string Origami::str() const {
  std::ostringstream os;
  os << "h=(";
  for (int k = 0; k < n(); ++k) os << (k ? "," : "") << h_[k] + 1;
  os << ") v=(";
  for (int k = 0; k < n(); ++k) os << (k ? "," : "") << v_[k] + 1;
  os << ")";
  return os.str();
}

SingularityData singularity_data(const Origami& o) {
  SingularityData s;
  auto cyc = perm_cycles(o.vertex_perm());
  s.vertices = int(cyc.size());
  for (auto& c : cyc) {
    s.vertex_orders.push_back(int(c.size()) - 1);
    if (c.size() > 1) s.stratum.push_back(int(c.size()) - 1);
  }
  std::sort(s.stratum.rbegin(), s.stratum.rend());
  // V - 2n + n = 2 - 2g
  s.genus = (2 - s.vertices + o.n()) / 2;
  return s;
}

namespace {

// BFS relabeling from basepoint b, compared against best on the fly. Returns -1 if the
// sequence is smaller than best, 0 if equal, 1 if larger (aborted early).
int bfs_compare(const Origami& o, int b, std::vector<int>& seq, Perm& label, std::vector<int>& order,
                const std::vector<int>* best) {
  const int n = o.n();
  std::fill(label.begin(), label.end(), -1);
  order.clear();
  label[b] = 0;
  order.push_back(b);
  int cmp = best ? 0 : -1;
  for (int i = 0; i < n; ++i) {
    int s = order[i];
    for (int w = 0; w < 2; ++w) {
      int t = w == 0 ? o.h()[s] : o.v()[s];
      if (label[t] < 0) label[t] = int(order.size()), order.push_back(t);
      int x = label[t];
      int pos = 2 * i + w;
      seq[pos] = x;
      if (cmp == 0) {
        int y = (*best)[pos];
        if (x < y) cmp = -1;
        else if (x > y) return 1;
      }
    }
  }
  return cmp;
}

}  // namespace

CanonicalOrigami canonicalize(const Origami& o) {
  const int n = o.n();
  std::vector<int> best(2 * n), seq(2 * n), order;
  Perm label(n), best_label(n);
  int autos = 0;
  for (int b = 0; b < n; ++b) {
    int c = bfs_compare(o, b, seq, label, order, b == 0 ? nullptr : &best);
    if (c < 0) {
      best = seq;
      best_label = label;
      autos = 1;
    } else if (c == 0) {
      ++autos;
    }
  }
  CanonicalOrigami out;
  out.form = o.relabel(best_label);
  out.relabel = best_label;
  out.automorphisms = autos;
  return out;
}

Origami torus_origami() { return Origami::make({0}, {0}); }

Origami l_origami() { return Origami::from_one_based({2, 1, 3}, {3, 2, 1}); }

Origami eierlegende_wollmilchsau() {
  // element index = unit + 4 * (sign < 0), units 1, i, j, k as 0..3
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  auto mul = [&](int x, int u) {
    int ux = x % 4, sx = x < 4 ? 1 : -1;
    int s = sx * sign_mul[ux][u];
    return unit_mul[ux][u] + (s < 0 ? 4 : 0);
  };
  Perm h(8), v(8);
  for (int x = 0; x < 8; ++x) h[x] = mul(x, 1), v[x] = mul(x, 2);
  return Origami::make(h, v);
}

}  // namespace flatsurf
