#include "flatsurf/kz_monodromy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_set>

#include "flatsurf/errors.hpp"
#include "flatsurf/rational.hpp"

namespace flatsurf {

char gen_char(Gen g) { return "TSts"[int(g)]; }

Gen gen_of(char c) {
  switch (c) {
    case 'T': return Gen::T;
    case 'S': return Gen::S;
    case 't': return Gen::Tinv;
    case 's': return Gen::Sinv;
  }
  throw Error(ErrorKind::ParseError, std::string("bad generator '") + c + "'");
}

Gen gen_inverse(Gen g) { return Gen((int(g) + 2) % 4); }

std::string word_inverse(const std::string& w) {
  std::string out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(gen_char(gen_inverse(gen_of(*it))));
  return out;
}

Origami sl2z_step(const Origami& o, Gen g) {
  const Perm &h = o.h(), &v = o.v();
  switch (g) {
    case Gen::T: return Origami::make(h, perm_compose(v, perm_inverse(h)));
    case Gen::Tinv: return Origami::make(h, perm_compose(v, h));
    case Gen::S: return Origami::make(perm_inverse(v), h);
    case Gen::Sinv: return Origami::make(v, perm_inverse(h));
  }
  return o;
}

Vec push_chain(const Origami& o, Gen g, const Vec& z) {
  const int n = o.n();
  const Perm &h = o.h(), &v = o.v();
  Vec out(2 * n, 0);
  auto X = [](int k) { return 2 * k; };
  auto Y = [](int k) { return 2 * k + 1; };
  for (int k = 0; k < n; ++k) {
    Int cx = z[X(k)], cy = z[Y(k)];
    if (cx == 0 && cy == 0) continue;
    switch (g) {
      case Gen::T:
        out[X(k)] = add_checked(out[X(k)], add_checked(cx, cy));
        out[Y(h[k])] = add_checked(out[Y(h[k])], cy);
        break;
      case Gen::Tinv: {
        int p = 0;
        // h^-1 k without building the inverse
        for (int j = 0; j < n; ++j)
          if (h[j] == k) p = j;
        out[X(k)] = add_checked(out[X(k)], cx);
        out[X(p)] = add_checked(out[X(p)], -cy);
        out[Y(p)] = add_checked(out[Y(p)], cy);
        break;
      }
      case Gen::S: {
        int p = 0;
        for (int j = 0; j < n; ++j)
          if (v[j] == k) p = j;
        out[Y(p)] = add_checked(out[Y(p)], cx);
        out[X(k)] = add_checked(out[X(k)], -cy);
        break;
      }
      case Gen::Sinv: {
        int p = 0;
        for (int j = 0; j < n; ++j)
          if (h[j] == k) p = j;
        out[Y(k)] = add_checked(out[Y(k)], -cx);
        out[X(p)] = add_checked(out[X(p)], cy);
        break;
      }
    }
  }
  return out;
}

int OrbitGraph::find(const Origami& canonical) const {
  auto it = index.find(canonical.str());
  return it == index.end() ? -1 : it->second;
}

OrbitGraph orbit_graph(const Origami& o, std::size_t cap) {
  OrbitGraph G;
  auto add = [&](const Origami& c) {
    G.index.emplace(c.str(), G.size());
    G.vertices.push_back(c);
    G.next.push_back({-1, -1, -1, -1});
    G.relabel.emplace_back();
    G.parent.push_back(-1);
    G.tree_word.emplace_back();
    return G.size() - 1;
  };
  add(canonicalize(o).form);
  std::vector<int> parent_gen{-1};
  for (int u = 0; u < G.size(); ++u) {
    for (int gi = 0; gi < 2; ++gi) {
      auto c = canonicalize(sl2z_step(G.vertices[u], Gen(gi)));
      int w = G.find(c.form);
      if (w < 0) {
        if (std::size_t(G.size()) >= cap) throw Error(ErrorKind::OrbitTooLarge, "orbit exceeds " + std::to_string(cap));
        w = add(c.form);
        G.parent[w] = u;
        parent_gen.push_back(gi);
        G.tree_word[w] = G.tree_word[u] + gen_char(Gen(gi));
      }
      G.next[u][gi] = w;
      G.relabel[u][gi] = c.relabel;
    }
  }
  for (int u = 0; u < G.size(); ++u)
    for (int gi = 2; gi < 4; ++gi) {
      auto c = canonicalize(sl2z_step(G.vertices[u], Gen(gi)));
      int w = G.find(c.form);
      if (w < 0) throw Error(ErrorKind::InvariantViolation, "inverse step left the T,S orbit");
      G.next[u][gi] = w;
      G.relabel[u][gi] = c.relabel;
    }
  for (int u = 0; u < G.size(); ++u)
    for (int gi = 0; gi < 2; ++gi) {
      int w = G.next[u][gi];
      if (G.parent[w] == u && parent_gen[w] == gi) continue;
      G.loops.push_back(G.tree_word[u] + gen_char(Gen(gi)) + word_inverse(G.tree_word[w]));
    }
  std::stable_sort(G.loops.begin(), G.loops.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return G;
}

int walk(const OrbitGraph& G, int from, const std::string& word, std::vector<Vec>* chains) {
  int u = from;
  for (char ch : word) {
    Gen g = gen_of(ch);
    if (chains) {
      const Perm& pi = G.relabel[u][int(g)];
      for (auto& z : *chains) {
        Vec p = push_chain(G.vertices[u], g, z);
        Vec r(p.size(), 0);
        for (size_t k = 0; k < pi.size(); ++k) {
          r[2 * pi[k]] = p[2 * k];
          r[2 * pi[k] + 1] = p[2 * k + 1];
        }
        z = std::move(r);
      }
    }
    u = G.next[u][int(g)];
  }
  return u;
}

namespace {

std::vector<Vec> columns(const Mat& A) {
  std::vector<Vec> out;
  for (int j = 0; j < A.cols(); ++j) out.push_back(A.col(j));
  return out;
}

Mat pushforward(const OrbitGraph& G, const HomBasis& B, const std::string& word) {
  auto cols = columns(B.abs_basis);
  if (walk(G, 0, word, &cols) != 0) throw Error(ErrorKind::NotClosed, "word '" + word + "' does not return to the base");
  std::vector<Vec> coords;
  for (const auto& z : cols) coords.push_back(B.abs_coords * z);
  return Mat::from_cols(coords, B.abs_rank());
}

}  // namespace

Mat homology_action(const OrbitGraph& G, const HomBasis& B, const std::string& word) {
  // D^T J D = J, so D^-1 = J^-1 D^T J without a Smith form
  Mat D = pushforward(G, B, word);
  Mat Jinv = inverse_unimodular(B.J);
  Mat M = Jinv * D.transpose() * B.J;
  if (M * D != Mat::identity(D.rows())) throw Error(ErrorKind::InvariantViolation, "monodromy is not symplectic");
  return M;
}

Mat homology_action(const OrbitGraph& G, const std::string& word) {
  return homology_action(G, origami_homology(G.vertices[0]), word);
}

Mat nontaut_subspace(const HomBasis& B) {
  Mat P(2, B.abs_rank());
  for (int j = 0; j < B.abs_rank(); ++j)
    for (int e = 0; e < B.edges(); ++e) P(e % 2, j) += B.abs_basis(e, j);
  return kernel_basis(P);
}

Mat nontaut_subspace(const Origami& o) { return nontaut_subspace(origami_homology(o)); }

Mat taut_subspace(const HomBasis& B) {
  Mat K = nontaut_subspace(B);
  return kernel_basis(K.transpose() * B.J);
}

Mat restrict_to(const Mat& M, const Mat& W) {
  std::vector<Vec> cols;
  for (int j = 0; j < W.cols(); ++j) {
    Vec x;
    if (!solve_integer(W, M * W.col(j), x)) throw Error(ErrorKind::InvariantViolation, "sublattice is not invariant");
    cols.push_back(x);
  }
  return Mat::from_cols(cols, W.cols());
}

MonodromyRep monodromy(const OrbitGraph& G) {
  MonodromyRep R;
  R.basis = origami_homology(G.vertices[0]);
  R.K = nontaut_subspace(R.basis);
  R.taut = taut_subspace(R.basis);
  for (const auto& w : G.loops) {
    R.words.push_back(w);
    R.matrices.push_back(homology_action(G, R.basis, w));
    R.on_K.push_back(restrict_to(R.matrices.back(), R.K));
  }
  return R;
}

// ---- exact eigenvalue counting

std::vector<BigInt> charpoly(const Mat& A) {
  const int n = A.rows();
  using BM = std::vector<std::vector<BigInt>>;
  BM a(n, std::vector<BigInt>(n)), M(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = A(i, j);
  std::vector<BigInt> c(n + 1, 0);
  c[n] = 1;
  for (int k = 1; k <= n; ++k) {
    BM AM(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        BigInt s = 0;
        for (int l = 0; l < n; ++l) s += a[i][l] * M[l][j];
        AM[i][j] = s;
      }
    for (int i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    M = AM;
    BigInt tr = 0;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) tr += a[i][l] * M[l][i];
    c[n - k] = -tr / k;
  }
  return c;
}

namespace {

using Poly = std::vector<Q>;  // low degree first, no trailing zeros

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * int(i));
  trim(d);
  return d;
}

Poly rem(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Q f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

Poly quot(Poly a, const Poly& b) {
  trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Q(0));
  while (a.size() >= b.size() && !a.empty()) {
    Q f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  trim(q);
  return q;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Q lead = a.back();
    for (auto& x : a) x /= lead;
  }
  return a;
}

Q eval(const Poly& p, const Q& x) {
  Q s = 0;
  for (size_t i = p.size(); i-- > 0;) s = s * x + p[i];
  return s;
}

int sign_changes(const std::vector<Poly>& chain, const Q& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    Q v = eval(p, x);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// distinct roots of a squarefree polynomial in [lo, hi]
int distinct_roots_in(Poly p, const Q& lo, const Q& hi) {
  int count = 0;
  for (const Q& e : {lo, hi}) {
    if (p.size() > 1 && eval(p, e) == 0) {
      p = quot(p, Poly{-e, Q(1)});
      ++count;
    }
  }
  if (p.size() <= 1) return count;
  std::vector<Poly> chain{p, derivative(p)};
  while (chain.back().size() > 1) {
    Poly r = rem(chain[chain.size() - 2], chain.back());
    for (auto& x : r) x = -x;
    if (r.empty()) break;
    chain.push_back(r);
  }
  return count + sign_changes(chain, lo) - sign_changes(chain, hi);
}

}  // namespace

int unit_circle_eigenvalues(const Mat& A) {
  const int n = A.rows();
  if (n == 0) return 0;
  auto c = charpoly(A);
  if (n % 2 != 0) throw Error(ErrorKind::DomainError, "odd dimension");
  for (int i = 0; i <= n; ++i)
    if (c[i] != c[n - i]) throw Error(ErrorKind::DomainError, "characteristic polynomial is not reciprocal");
  const int m = n / 2;
  // P(x) = x^m Q(x + 1/x), with x^k + x^-k = D_k(x + 1/x)
  std::vector<Poly> D{Poly{Q(2)}, Poly{Q(0), Q(1)}};
  for (int k = 2; k <= m; ++k) {
    Poly d(k + 1, Q(0));
    for (size_t i = 0; i < D[k - 1].size(); ++i) d[i + 1] += D[k - 1][i];
    for (size_t i = 0; i < D[k - 2].size(); ++i) d[i] -= D[k - 2][i];
    D.push_back(d);
  }
  Poly Qz(m + 1, Q(0));
  Qz[0] = Q(c[m]);
  for (int k = 1; k <= m; ++k)
    for (size_t i = 0; i < D[k].size(); ++i) Qz[i] += Q(c[m + k]) * D[k][i];
  trim(Qz);
  // roots in [-2, 2] with multiplicity, one layer of repeated roots at a time
  int roots = 0;
  Poly g = Qz;
  while (g.size() > 1) {
    Poly g1 = gcd(g, derivative(g));
    Poly sf = g1.size() > 1 ? quot(g, g1) : g;
    roots += distinct_roots_in(sf, Q(-2), Q(2));
    g = g1;
  }
  return 2 * roots;
}

// ---- group closure

namespace {

struct MatHash {
  std::size_t operator()(const Mat& m) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (Int x : m.data()) {
      h ^= std::uint64_t(x);
      h *= 1099511628211ULL;
    }
    return std::size_t(h);
  }
};

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// least L with A^L = I for every finite-order integer n x n matrix: lcm of d with phi(d) <= n
long finite_order_exponent(int n) {
  long L = 1;
  for (long d = 1; d <= 4L * n * n + 6; ++d) {
    long phi = d;
    long x = d;
    for (long p = 2; p * p <= x; ++p)
      if (x % p == 0) {
        while (x % p == 0) x /= p;
        phi -= phi / p;
      }
    if (x > 1) phi -= phi / x;
    if (phi <= n) L = std::lcm(L, d);
  }
  return L;
}

bool power_is_identity(const Mat& A, long e) {
  try {
    Mat R = Mat::identity(A.rows()), P = A;
    while (e > 0) {
      if (e & 1) R = R * P;
      e >>= 1;
      if (e) P = P * P;
    }
    return R == Mat::identity(A.rows());
  } catch (const Error&) {
    return false;
  }
}

Mat power(const Mat& A, long e) {
  Mat R = Mat::identity(A.rows()), P = A;
  while (e > 0) {
    if (e & 1) R = R * P;
    e >>= 1;
    if (e) P = P * P;
  }
  return R;
}

Mat saturate(const Mat& Y) {
  if (Y.cols() == 0) return Y;
  Mat ann = kernel_basis(Y.transpose());
  if (ann.cols() == 0) return Mat::identity(Y.rows());
  return kernel_basis(ann.transpose());
}

// saturated lattice of span(W) ∩ span(U)
Mat intersect(const Mat& W, const Mat& U) {
  if (W.cols() == 0 || U.cols() == 0) return Mat(W.rows(), 0);
  Mat k = kernel_basis(hstack(W, -U));
  if (k.cols() == 0) return Mat(W.rows(), 0);
  return saturate(W * k.rows_range(0, W.cols()));
}

}  // namespace

Closure close_group(const std::vector<Mat>& gens, std::size_t cap, Int entry_cap) {
  Closure out;
  if (gens.empty()) {
    out.finite = true;
    out.order = 1;
    out.hash = hex64(0);
    return out;
  }
  const int n = gens[0].rows();
  std::vector<Mat> moves;
  for (const auto& g : gens) {
    moves.push_back(g);
    moves.push_back(inverse_unimodular(g));
  }
  std::unordered_set<Mat, MatHash> seen;
  std::deque<Mat> queue;
  Mat id = Mat::identity(n);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Mat x = queue.front();
    queue.pop_front();
    for (const auto& g : moves) {
      Mat y;
      try {
        y = x * g;
      } catch (const Error&) {
        out.entry_overflow = true;
        return out;
      }
      if (y.max_abs() > entry_cap) {
        out.entry_overflow = true;
        return out;
      }
      if (seen.insert(y).second) {
        if (seen.size() > cap) return out;
        queue.push_back(std::move(y));
      }
    }
  }
  std::vector<Mat> all(seen.begin(), seen.end());
  std::sort(all.begin(), all.end());
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& m : all)
    for (Int x : m.data()) {
      h ^= std::uint64_t(x);
      h *= 1099511628211ULL;
    }
  out.finite = true;
  out.order = all.size();
  out.hash = hex64(h);
  return out;
}

bool replay(const ForniReport& r) {
  if (r.kind != ForniCertificateKind::FiniteGroup && r.kind != ForniCertificateKind::Split) return false;
  auto c = close_group(r.generators, std::max<std::size_t>(r.order, 1) + 1, ForniCaps{}.entry_cap);
  return c.finite && c.order == r.order && c.hash == r.element_hash;
}

const char* to_string(ForniCertificateKind k) {
  switch (k) {
    case ForniCertificateKind::FiniteGroup: return "FiniteGroup";
    case ForniCertificateKind::UnboundedGrowth: return "UnboundedGrowth";
    case ForniCertificateKind::Split: return "Split";
    case ForniCertificateKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

ForniReport forni_subspace(const OrbitGraph& G, const ForniCaps& caps) {
  ForniReport rep;
  rep.caps = "group_elements=" + std::to_string(caps.group_elements) + " entry_cap=" + std::to_string(caps.entry_cap) +
             " samples=" + std::to_string(caps.samples);
  HomBasis B = origami_homology(G.vertices[0]);
  Mat K = nontaut_subspace(B);
  const int n = K.cols();
  if (n == 0) {
    rep.kind = ForniCertificateKind::FiniteGroup;
    rep.order = 1;
    rep.element_hash = close_group({}, 1, caps.entry_cap).hash;
    rep.verdicts.push_back("K = 0");
    return rep;
  }

  auto growth = [&](const Mat& A, const std::string& word) {
    rep.kind = ForniCertificateKind::UnboundedGrowth;
    rep.dim_lower = rep.dim_upper = 0;
    rep.witness_word = word;
    Mat P = A;
    for (int j = 0; j < 64; ++j) {
      Int m = P.max_abs();
      rep.norm_trace.push_back(m);
      if (m > caps.entry_cap) break;
      try {
        P = P * P;
      } catch (const Error&) {
        rep.norm_trace.push_back(-1);  // past the 64-bit range
        break;
      }
    }
    rep.verdicts.push_back("no eigenvalue of " + word + " on K lies on the unit circle");
    return rep;
  };

  // Work with pushforwards restricted to K: they generate the same group as the pullbacks, and a
  // bounded action never overflows even when the tautological block is huge.
  Smith sk = smith(K);
  Mat left = sk.V * Mat::identity(B.abs_rank()).rows_range(0, n) * sk.U;  // left * K = I
  std::vector<Vec> kchains;
  for (int j = 0; j < n; ++j) kchains.push_back(B.abs_basis * K.col(j));
  auto on_K = [&](const std::string& w) {
    auto cols = kchains;
    walk(G, 0, w, &cols);
    std::vector<Vec> xs;
    for (const auto& z : cols) {
      Vec c = B.abs_coords * z;
      Vec x = left * c;
      if (K * x != c) throw Error(ErrorKind::InvariantViolation, "monodromy does not preserve K");
      xs.push_back(x);
    }
    return Mat::from_cols(xs, n);
  };

  std::vector<Mat> gens;
  std::vector<std::string> gen_words;
  int skipped = 0;
  int best = n + 1;
  Mat best_elt;
  std::string best_word;
  for (const auto& w : G.loops) {
    Mat A;
    try {
      A = on_K(w);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Overflow) throw;
      ++skipped;
      continue;
    }
    int u = unit_circle_eigenvalues(A);
    if (u == 0) return growth(A, w);
    if (u < best) best = u, best_elt = A, best_word = w;
    gens.push_back(A);
    gen_words.push_back(w);
  }
  // short products; pushforwards compose in reverse word order
  std::mt19937_64 rng(caps.seed);
  for (int t = 0; t < caps.samples && !gens.empty(); ++t) {
    int len = 2 + int(rng() % (t < 256 ? 3 : 7));
    Mat A = Mat::identity(n);
    std::string w;
    bool ok = true;
    for (int i = 0; i < len; ++i) {
      size_t k = rng() % gens.size();
      try {
        A = gens[k] * A;
      } catch (const Error&) {
        ok = false;
        break;
      }
      w += gen_words[k];
    }
    if (!ok) continue;
    int u = unit_circle_eigenvalues(A);
    if (u == 0) return growth(A, w);
    if (u < best) best = u, best_elt = A, best_word = w;
  }
  if (skipped) rep.verdicts.push_back(std::to_string(skipped) + " loops overflowed 64-bit entries and were skipped");

  bool all_finite_order = true;
  const long L = finite_order_exponent(n);
  for (const auto& A : gens)
    if (!power_is_identity(A, L)) all_finite_order = false;
  if (all_finite_order && skipped == 0) {
    auto c = close_group(gens, caps.group_elements, caps.entry_cap);
    if (c.finite) {
      rep.kind = ForniCertificateKind::FiniteGroup;
      rep.dim_lower = rep.dim_upper = n;
      rep.generators = gens;
      rep.order = c.order;
      rep.element_hash = c.hash;
      rep.verdicts.push_back("monodromy on K generates a group of order " + std::to_string(c.order));
      return rep;
    }
  }

  rep.dim_upper = best - best % 2;
  rep.verdicts.push_back(best_word + " has " + std::to_string(best) + " eigenvalues on the unit circle");
  // largest invariant sublattice on which the best element has finite order
  Mat W;
  try {
    Mat E = power(best_elt, L) - Mat::identity(n);
    W = kernel_basis(E);
  } catch (const Error&) {
    W = Mat(n, 0);
  }
  for (bool changed = true; changed && W.cols() > 0;) {
    changed = false;
    for (const auto& A : gens) {
      Mat U = inverse_unimodular(A) * W;
      Mat I = intersect(W, U);
      if (I.cols() < W.cols()) {
        W = I;
        changed = true;
      }
      if (W.cols() == 0) break;
    }
  }
  if (W.cols() > 0) {
    std::vector<Mat> sub;
    for (const auto& A : gens) sub.push_back(restrict_to(A, W));
    auto c = close_group(sub, caps.group_elements, caps.entry_cap);
    if (c.finite) {
      rep.dim_lower = W.cols();
      rep.subspace = K * W;
      rep.generators = sub;
      rep.order = c.order;
      rep.element_hash = c.hash;
      rep.verdicts.push_back("finite action of order " + std::to_string(c.order) + " on an invariant sublattice of rank " +
                             std::to_string(W.cols()));
    }
  }
  rep.kind = rep.dim_lower == rep.dim_upper ? ForniCertificateKind::Split : ForniCertificateKind::Inconclusive;
  return rep;
}

ForniReport forni_subspace(const Origami& o, const ForniCaps& caps) { return forni_subspace(orbit_graph(o), caps); }

// ---- Lyapunov exponents

LyapEstimate lyapunov_estimate(const Origami& o, long steps, std::uint64_t seed, int reortho) {
  if (steps < 1) throw Error(ErrorKind::DomainError, "steps must be positive");
  OrbitGraph G = orbit_graph(o);
  const int V = G.size();
  std::vector<HomBasis> bases;
  for (const auto& v : G.vertices) bases.push_back(origami_homology(v));
  const int g2 = bases[0].abs_rank(), g = g2 / 2;

  // per vertex: one R = T move and one L move, as real matrices on absolute coordinates
  std::vector<Eigen::MatrixXd> step[2];
  std::vector<int> nxt[2];
  const std::string words[2] = {"T", kLowerWord};
  for (int k = 0; k < 2; ++k)
    for (int u = 0; u < V; ++u) {
      auto cols = columns(bases[u].abs_basis);
      int w = walk(G, u, words[k], &cols);
      Eigen::MatrixXd E(g2, g2);
      for (int j = 0; j < g2; ++j) {
        Vec c = bases[w].abs_coords * cols[j];
        for (int i = 0; i < g2; ++i) E(i, j) = double(c[i]);
      }
      step[k].push_back(E);
      nxt[k].push_back(w);
    }
  // full cusp cycles, so that a digit a costs O(log a)
  std::vector<Eigen::MatrixXd> cycle[2];
  std::vector<long> cyclen[2];
  for (int k = 0; k < 2; ++k)
    for (int u = 0; u < V; ++u) {
      Eigen::MatrixXd C = Eigen::MatrixXd::Identity(g2, g2);
      long len = 0;
      int w = u;
      do {
        C = step[k][w] * C;
        w = nxt[k][w];
        ++len;
      } while (w != u);
      cycle[k].push_back(C);
      cyclen[k].push_back(len);
    }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd F(g2, g);
  for (int i = 0; i < g2; ++i)
    for (int j = 0; j < g; ++j) F(i, j) = gauss(rng);
  Eigen::Vector2d taut(gauss(rng), gauss(rng));

  const int batches = 20;
  const long per_batch = std::max(1L, steps / batches);
  std::vector<std::vector<long double>> batch_logs;
  std::vector<long double> batch_taut;
  std::vector<long double> logs(g, 0), cur(g, 0);
  long double tlog = 0, tcur = 0;
  double x = unif(rng);
  int u = 0;
  auto orthonormalize = [&]() {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(F);
    Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
    Eigen::MatrixXd Qm = qr.householderQ() * Eigen::MatrixXd::Identity(g2, g);
    for (int j = 0; j < g; ++j) {
      cur[j] += std::log(std::abs(R(j, j)));
      if (R(j, j) < 0) Qm.col(j) = -Qm.col(j);
    }
    F = Qm;
    double nt = taut.norm();
    tcur += std::log(nt);
    taut /= nt;
  };
  for (long s = 0; s < steps; ++s) {
    while (!(x > 1e-12)) x = unif(rng);
    double inv = 1.0 / x;
    double fa = std::floor(inv);
    x = inv - fa;
    long a = fa > 1e12 ? long(1e12) : std::max(1L, long(fa));
    int k = int(s % 2);
    long q = a / cyclen[k][u], r = a % cyclen[k][u];
    if (q > 0) {
      Eigen::MatrixXd P = Eigen::MatrixXd::Identity(g2, g2), B = cycle[k][u];
      for (long e = q; e > 0; e >>= 1) {
        if (e & 1) P = B * P;
        if (e > 1) B = B * B;
      }
      F = P * F;
    }
    for (long i = 0; i < r; ++i) {
      F = step[k][u] * F;
      u = nxt[k][u];
    }
    if (k == 0) taut(0) += double(a) * taut(1);
    else taut(1) += double(a) * taut(0);
    // large digits would wash out the small directions in double precision
    if ((s + 1) % reortho == 0 || s + 1 == steps || F.lpNorm<Eigen::Infinity>() > 1e6) orthonormalize();
    if ((s + 1) % per_batch == 0 || s + 1 == steps) {
      if (s + 1 != steps) orthonormalize();
      batch_logs.push_back(cur);
      batch_taut.push_back(tcur);
      for (int j = 0; j < g; ++j) logs[j] += cur[j], cur[j] = 0;
      tlog += tcur;
      tcur = 0;
    }
  }

  LyapEstimate est;
  est.steps = steps;
  est.seed = seed;
  est.reortho = reortho;
  est.taut_raw = double(tlog / steps);
  std::vector<int> order(g);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return logs[i] > logs[j]; });
  const int nb = int(batch_logs.size());
  for (int j : order) {
    est.exponents.push_back(double(logs[j] / tlog));
    long double mean = 0, var = 0;
    std::vector<long double> vals;
    for (int b = 0; b < nb; ++b) {
      if (batch_taut[b] <= 0) continue;
      vals.push_back(batch_logs[b][j] / batch_taut[b]);
    }
    for (auto v : vals) mean += v;
    mean /= std::max<size_t>(1, vals.size());
    for (auto v : vals) var += (v - mean) * (v - mean);
    double se = vals.size() > 1 ? double(std::sqrt(var / (vals.size() - 1) / vals.size())) : 0.0;
    est.stderrs.push_back(se);
  }
  return est;
}

}  // namespace flatsurf
