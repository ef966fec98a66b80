#include "flatsurf/diagrams.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

std::vector<int> reversed(std::vector<int> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

std::vector<int> least_rotation(const std::vector<int>& s) {
  std::vector<int> best = s, cur = s;
  for (size_t k = 1; k < s.size(); ++k) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

// Key of d under a chosen cylinder order and bottom rotations.
std::vector<int> reading(const CylDiagram& d, const std::vector<int>& order, const std::vector<int>& rot) {
  std::vector<int> label(d.m(), -1);
  int next = 0;
  std::vector<int> key{d.r()};
  for (int i : order) {
    const auto& b = d.cylinder(i).bottom;
    key.push_back(int(b.size()));
    for (size_t k = 0; k < b.size(); ++k) label[b[(k + rot[i]) % b.size()]] = next++;
  }
  for (int i : order) {
    std::vector<int> t;
    for (int s : d.cylinder(i).top) t.push_back(label[s]);
    t = least_rotation(t);
    key.push_back(int(t.size()));
    key.insert(key.end(), t.begin(), t.end());
  }
  return key;
}

std::vector<int> least_key(const CylDiagram& d) {
  const int r = d.r();
  std::vector<int> order(r);
  std::iota(order.begin(), order.end(), 0);
  auto bsize = [&](int i) { return d.cylinder(i).bottom.size(); };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return bsize(a) > bsize(b); });
  // groups of equal bottom size, permuted independently
  std::vector<std::pair<int, int>> groups;
  for (int a = 0; a < r;) {
    int b = a;
    while (b < r && bsize(order[b]) == bsize(order[a])) ++b;
    groups.push_back({a, b});
    std::sort(order.begin() + a, order.begin() + b);
    a = b;
  }
  std::vector<int> best;
  for (;;) {
    std::vector<int> rot(r, 0);
    for (;;) {
      auto k = reading(d, order, rot);
      if (best.empty() || k < best) best = std::move(k);
      int i = 0;
      for (; i < r; ++i) {
        if (++rot[i] < int(bsize(i))) break;
        rot[i] = 0;
      }
      if (i == r) break;
    }
    size_t g = 0;
    for (; g < groups.size(); ++g)
      if (std::next_permutation(order.begin() + groups[g].first, order.begin() + groups[g].second)) break;
    if (g == groups.size()) break;
  }
  return best;
}

CylDiagram from_key(const std::vector<int>& key) {
  const int r = key[0];
  std::vector<Cylinder> cyls(r);
  int p = 1, next = 0;
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < key[p]; ++k) cyls[i].bottom.push_back(next++);
    ++p;
  }
  for (int i = 0; i < r; ++i) {
    int n = key[p++];
    cyls[i].top.assign(key.begin() + p, key.begin() + p + n);
    p += n;
  }
  return CylDiagram::make(cyls);
}

std::vector<CylDiagram> mirror_images(const CylDiagram& d) { return {d, hflip(d), vflip(d), rot180(d)}; }

}  // namespace

CylDiagram hflip(const CylDiagram& d) {
  std::vector<Cylinder> c;
  for (const auto& cy : d.cylinders()) c.push_back({reversed(cy.bottom), reversed(cy.top)});
  return CylDiagram::make(c, d.names());
}

CylDiagram vflip(const CylDiagram& d) {
  std::vector<Cylinder> c;
  for (const auto& cy : d.cylinders()) c.push_back({cy.top, cy.bottom});
  return CylDiagram::make(c, d.names());
}

CylDiagram rot180(const CylDiagram& d) { return hflip(vflip(d)); }

CanonicalDiagram canonicalize(const CylDiagram& d, bool with_reflection) {
  std::vector<int> best = least_key(d);
  if (with_reflection)
    for (const auto& e : mirror_images(d)) best = std::min(best, least_key(e));
  return {best, from_key(best)};
}

bool isomorphic(const CylDiagram& a, const CylDiagram& b, bool with_reflection) {
  return canonicalize(a, with_reflection).key == canonicalize(b, with_reflection).key;
}

std::vector<CanonicalDiagram> enumerate_cylinder_diagrams(const std::vector<int>& kappa_in, int r,
                                                          bool with_reflection) {
  std::vector<int> kappa = kappa_in.empty() ? std::vector<int>{0} : kappa_in;
  int total = 0;
  for (int k : kappa) {
    if (k < 0) throw Error(ErrorKind::DomainError, "negative zero order");
    total += k;
  }
  if (total % 2) throw Error(ErrorKind::DomainError, "zero orders must sum to 2g-2");
  const int g = total / 2 + 1;
  if (g > 3) throw Error(ErrorKind::Unsupported, "enumeration is limited to genus <= 3");
  std::sort(kappa.begin(), kappa.end());
  const int m = total + int(kappa.size());
  std::set<std::vector<int>> keys;
  if (r < 1 || r > m) return {};

  // bottom sizes: partitions of m into r parts, nonincreasing
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  auto gen = [&](auto&& self, int left, int maxp) -> void {
    if (int(cur.size()) == r) {
      if (left == 0) parts.push_back(cur);
      return;
    }
    for (int p = std::min(left, maxp); p >= 1; --p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  gen(gen, m, m);

  std::vector<int> bcyl(m), bpred(m), phi(m), orders;
  std::vector<char> seen(m);
  for (const auto& sizes : parts) {
    for (int i = 0, s = 0; i < r; ++i) {
      for (int k = 0; k < sizes[i]; ++k) {
        bcyl[s + k] = i;
        bpred[s + k] = s + (k + sizes[i] - 1) % sizes[i];
      }
      s += sizes[i];
    }
    Perm sigma(m);  // next saddle along a top
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      // zero orders from s -> sigma(bpred(s))
      for (int s = 0; s < m; ++s) phi[s] = sigma[bpred[s]];
      orders.clear();
      std::fill(seen.begin(), seen.end(), 0);
      for (int s = 0; s < m; ++s) {
        if (seen[s]) continue;
        int len = 0;
        for (int t = s; !seen[t]; t = phi[t]) seen[t] = 1, ++len;
        orders.push_back(len - 1);
      }
      if (int(orders.size()) != int(kappa.size())) continue;
      std::sort(orders.begin(), orders.end());
      if (orders != kappa) continue;
      auto cycles = perm_cycles(sigma);
      if (int(cycles.size()) != r) continue;
      std::vector<int> assign(r);
      std::iota(assign.begin(), assign.end(), 0);
      do {
        std::vector<Cylinder> cyls(r);
        for (int s = 0; s < m; ++s) cyls[bcyl[s]].bottom.push_back(s);
        for (int c = 0; c < r; ++c) cyls[assign[c]].top = cycles[c];
        CylDiagram d;
        try {
          d = CylDiagram::make(cyls);
        } catch (const Error&) {
          continue;
        }
        if (!realizable(d)) continue;
        keys.insert(canonicalize(d, with_reflection).key);
      } while (std::next_permutation(assign.begin(), assign.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  std::vector<CanonicalDiagram> out;
  for (const auto& k : keys) out.push_back({k, from_key(k)});
  return out;
}

std::vector<CanonicalDiagram> enumerate_cylinder_diagrams(const std::vector<int>& kappa, bool with_reflection) {
  int m = 0;
  for (int k : kappa) m += k + 1;
  if (kappa.empty()) m = 1;
  std::vector<CanonicalDiagram> out;
  for (int r = 1; r <= m; ++r) {
    auto part = enumerate_cylinder_diagrams(kappa, r, with_reflection);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

int DegenerateSurface::genus_sum() const {
  int s = 0;
  for (const auto& p : parts) s += p.genus;
  return s;
}

int DegenerateSurface::cycle_rank() const {
  // graph is connected, so E - V + 1
  return int(nodes.size()) - int(parts.size()) + 1;
}

DegenerateSurface pinch_all_core_curves(const CylDiagram& d) {
  const int V = d.zeros();
  std::vector<int> p(V);
  std::iota(p.begin(), p.end(), 0);
  auto find = [&](int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  for (int s = 0; s < d.m(); ++s) p[find(d.zero_left(s))] = find(d.zero_right(s));
  std::map<int, int> part_of_root;
  DegenerateSurface out;
  std::vector<int> part(V);
  for (int z = 0; z < V; ++z) {
    auto [it, fresh] = part_of_root.emplace(find(z), int(out.parts.size()));
    if (fresh) out.parts.emplace_back();
    part[z] = it->second;
    out.parts[it->second].zeros.push_back(z);
    out.parts[it->second].zero_orders.push_back(d.zero_orders()[z]);
  }
  std::vector<int> edges(out.parts.size(), 0);
  for (int s = 0; s < d.m(); ++s) ++edges[part[d.zero_left(s)]];
  for (int i = 0; i < d.r(); ++i) {
    int bp = part[d.zero_left(d.cylinder(i).bottom[0])];
    int tp = part[d.zero_left(d.cylinder(i).top[0])];
    out.nodes.push_back({i, bp, tp});
    ++out.parts[bp].poles;
    ++out.parts[tp].poles;
  }
  for (size_t q = 0; q < out.parts.size(); ++q) {
    auto& P = out.parts[q];
    int chi = int(P.zeros.size()) - edges[q] + P.poles;
    if (chi % 2) throw Error(ErrorKind::InvariantViolation, "odd Euler characteristic on a part");
    P.genus = (2 - chi) / 2;
  }
  return out;
}

const char* to_string(ConfigurationLabel c) {
  switch (c) {
    case ConfigurationLabel::Config1: return "Config1";
    case ConfigurationLabel::Config2: return "Config2";
    case ConfigurationLabel::Config3: return "Config3";
    case ConfigurationLabel::Config4: return "Config4";
    case ConfigurationLabel::Config5: return "Config5";
    case ConfigurationLabel::Config6: return "Config6";
    case ConfigurationLabel::OtherLagrangian: return "OtherLagrangian";
    case ConfigurationLabel::OtherHighDim: return "OtherHighDim";
  }
  return "?";
}

namespace {

struct Template {
  ConfigurationLabel label;
  std::vector<int> genera;
  std::vector<std::pair<int, int>> nodes;
};

const std::vector<Template>& degeneration_templates() {
  using C = ConfigurationLabel;
  static const std::vector<Template> t = {
      {C::Config1, {1}, {{0, 0}, {0, 0}}},
      {C::Config2, {0, 1}, {{0, 1}, {0, 1}, {0, 1}}},
      {C::Config3, {0, 1}, {{0, 0}, {0, 1}, {0, 1}}},
      {C::Config4, {0, 0, 1}, {{0, 1}, {0, 1}, {0, 2}, {1, 2}}},
      {C::Config5, {2}, {{0, 0}}},
      {C::Config6, {1, 1}, {{0, 1}, {0, 1}}},
  };
  return t;
}

std::vector<std::pair<int, int>> normalized(std::vector<std::pair<int, int>> e) {
  for (auto& [a, b] : e)
    if (a > b) std::swap(a, b);
  std::sort(e.begin(), e.end());
  return e;
}

bool matches(const DegenerateSurface& S, const Template& t) {
  const int P = int(S.parts.size());
  if (P != int(t.genera.size()) || S.nodes.size() != t.nodes.size()) return false;
  auto want = normalized(t.nodes);
  std::vector<int> pi(P);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    bool ok = true;
    for (int q = 0; q < P && ok; ++q) ok = S.parts[q].genus == t.genera[pi[q]];
    if (!ok) continue;
    std::vector<std::pair<int, int>> e;
    for (const auto& n : S.nodes) e.push_back({pi[n.bottom_part], pi[n.top_part]});
    if (normalized(e) == want) return true;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return false;
}

}  // namespace

ConfigurationLabel classify_configuration(const CylDiagram& d) {
  if (d.genus() != 3) throw Error(ErrorKind::NotGenusThree, "configuration table is for genus three");
  int dim = core_curve_span(d).dimension;
  if (dim == 3) return ConfigurationLabel::OtherLagrangian;
  auto S = pinch_all_core_curves(d);
  for (const auto& t : degeneration_templates())
    if (matches(S, t)) return t.label;
  throw Error(ErrorKind::InvariantViolation, "degenerate surface matches no configuration: " + d.str());
}

ConfigurationLabel configuration_label(const CylDiagram& d) {
  if (d.genus() != 3) return ConfigurationLabel::OtherHighDim;
  return classify_configuration(d);
}

HomologousPartition homologous_partition(const HomBasis& B, const CylDiagram& d) {
  auto span = core_curve_span(B, d);
  const int r = d.r();
  HomologousPartition hp;
  std::vector<int> block(r, -1);
  for (int i = 0; i < r; ++i) {
    if (block[i] >= 0) continue;
    block[i] = int(hp.blocks.size());
    hp.blocks.push_back({i});
    for (int j = i + 1; j < r; ++j) {
      Vec neg = span.classes[j].coords;
      for (auto& x : neg) x = -x;
      if (span.classes[i].coords == span.classes[j].coords || span.classes[i].coords == neg) {
        block[j] = block[i];
        hp.blocks.back().push_back(j);
      }
    }
  }
  hp.freeness.assign(r, Freeness::Undetermined);
  if (hp.blocks.size() < 2) return hp;
  // gamma_a + gamma_b = gamma_c across three distinct blocks frees the singleton blocks involved
  auto sum_is = [&](int a, int b, int c) {
    const auto &x = span.classes[a].coords, &y = span.classes[b].coords, &z = span.classes[c].coords;
    for (size_t k = 0; k < x.size(); ++k)
      if (x[k] + y[k] != z[k]) return false;
    return true;
  };
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        if (c == a || c == b) continue;
        if (block[a] == block[b] || block[a] == block[c] || block[b] == block[c]) continue;
        if (!sum_is(a, b, c)) continue;
        for (int i : {a, b, c})
          if (hp.blocks[block[i]].size() == 1) hp.freeness[i] = Freeness::Free;
      }
  return hp;
}

HomologousPartition homologous_partition(const CylDiagram& d) { return homologous_partition(h1_bases(d), d); }

}  // namespace flatsurf
