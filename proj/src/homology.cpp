#include "flatsurf/homology.hpp"

#include <algorithm>
#include <functional>

#include "flatsurf/errors.hpp"

namespace flatsurf {

Mat CellComplex::boundary1() const {
  Mat d(vertices, int(edges.size()));
  for (int e = 0; e < int(edges.size()); ++e) {
    d(edges[e].second, e) += 1;
    d(edges[e].first, e) -= 1;
  }
  return d;
}

Mat CellComplex::boundary2() const {
  Mat d(int(edges.size()), int(faces.size()));
  for (int f = 0; f < int(faces.size()); ++f)
    for (int e = 0; e < int(edges.size()); ++e) d(e, f) = faces[f][e];
  return d;
}

Int intersection_of_cycles(const CellComplex& X, const Vec& z1, const Vec& z2) {
  // Push z2 slightly to its left; crossings happen only near vertices, where they are
  // counted against the rays of z1 swept counterclockwise from a base point.
  Int total = 0;
  for (const auto& rot : X.rotation) {
    Int prefix = 0, local = 0;
    for (const auto& he : rot) {
      Int w1 = he.outgoing ? z1[he.edge] : -z1[he.edge];
      Int w2 = he.outgoing ? z2[he.edge] : -z2[he.edge];
      Int swept = add_checked(prefix, he.outgoing ? w1 : 0);
      local = add_checked(local, mul_checked(w2, swept));
      prefix = add_checked(prefix, w1);
    }
    total = add_checked(total, local);
  }
  return total;
}

namespace {

std::uint64_t fnv(std::uint64_t h, Int x) {
  for (int b = 0; b < 8; ++b) {
    h ^= std::uint64_t((std::uint64_t(x) >> (8 * b)) & 0xff);
    h *= 1099511628211ull;
  }
  return h;
}

void require_unit_diagonal(const Smith& s, const char* what) {
  for (int i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) throw Error(ErrorKind::InvariantViolation, std::string("torsion in ") + what);
}

}  // namespace

HomBasis homology_of_complex(const CellComplex& X, bool relative) {
  HomBasis B;
  B.complex = X;
  const int E = int(X.edges.size());
  Mat d1 = X.boundary1(), d2 = X.boundary2();
  if (!(d1 * d2).is_zero()) throw Error(ErrorKind::InvariantViolation, "boundary of boundary is not zero");

  Smith s1 = smith(d1);
  const int nk = E - s1.rank;
  Mat Kb = s1.V.cols_range(s1.rank, nk);
  Mat Kl = s1.Vinv.rows_range(s1.rank, nk);
  Smith s2 = smith(Kl * d2);
  require_unit_diagonal(s2, "absolute homology");
  const int h = nk - s2.rank;
  if (h % 2) throw Error(ErrorKind::InvariantViolation, "odd first Betti number");
  Mat coords0 = s2.U.rows_range(s2.rank, h) * Kl;
  Mat basis0 = Kb * s2.Uinv.cols_range(s2.rank, h);
  Mat J0(h, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) J0(i, j) = intersection_of_cycles(X, basis0.col(i), basis0.col(j));
  Mat P = symplectic_reduction(J0);
  B.genus = h / 2;
  B.abs_basis = basis0 * P;
  B.abs_coords = inverse_unimodular(P) * coords0;
  B.J = standard_symplectic(B.genus);
  if (B.abs_coords * B.abs_basis != Mat::identity(h)) throw Error(ErrorKind::InvariantViolation, "basis/coordinate mismatch");

  if (relative) {
    Smith s = smith(d2);
    require_unit_diagonal(s, "relative homology");
    const int R = E - s.rank;
    B.has_relative = true;
    B.rel_coords = s.U.rows_range(s.rank, R);
    B.rel_basis = s.Uinv.cols_range(s.rank, R);
    B.incl = B.rel_coords * B.abs_basis;
    B.projection = B.incl.transpose();
  }

  std::uint64_t tag = 1469598103934665603ull;
  tag = fnv(tag, X.vertices);
  for (auto [a, b] : X.edges) tag = fnv(fnv(tag, a), b);
  for (const Vec& f : X.faces)
    for (Int x : f) tag = fnv(tag, x);
  for (Int x : B.abs_basis.data()) tag = fnv(tag, x);
  B.tag = tag;
  return B;
}

int crossing_edge(const CylDiagram& d, int cyl) { return d.m() + cyl; }

CellComplex diagram_complex(const CylDiagram& d) {
  CellComplex X;
  const int m = d.m(), r = d.r();
  X.vertices = d.zeros();
  for (int s = 0; s < m; ++s) {
    X.edges.push_back({d.zero_left(s), d.zero_right(s)});
    X.edge_names.push_back("s" + std::to_string(d.names()[s]));
  }
  for (int i = 0; i < r; ++i) {
    X.edges.push_back({d.zero_left(d.cylinder(i).bottom[0]), d.zero_left(d.cylinder(i).top[0])});
    X.edge_names.push_back("c" + std::to_string(i));
  }
  for (int i = 0; i < r; ++i) {
    Vec f(m + r, 0);
    for (int s : d.cylinder(i).bottom) f[s] += 1;
    for (int s : d.cylinder(i).top) f[s] -= 1;
    X.faces.push_back(f);
  }
  X.rotation.resize(X.vertices);
  for (int z = 0; z < X.vertices; ++z) {
    auto& rot = X.rotation[z];
    for (int s : d.zero_cycles()[z]) {
      rot.push_back({s, true});
      if (d.bottom_pos(s) == 0) rot.push_back({crossing_edge(d, d.bottom_cyl(s)), true});
      int p = d.bottom_pred(s);
      rot.push_back({p, false});
      if (d.top_pos(d.top_succ(p)) == 0) rot.push_back({crossing_edge(d, d.top_cyl(p)), false});
    }
  }
  return X;
}

HomBasis h1_bases(const CylDiagram& d) { return homology_of_complex(diagram_complex(d), true); }

CellComplex origami_complex(const Origami& o) {
  CellComplex X;
  const int n = o.n();
  const Perm& h = o.h();
  const Perm& v = o.v();
  Perm hi = perm_inverse(h), vi = perm_inverse(v);
  auto cyc = perm_cycles(o.vertex_perm());
  std::vector<int> vid = o.corner_vertex();
  X.vertices = int(cyc.size());
  for (int k = 0; k < n; ++k) {
    X.edges.push_back({vid[k], vid[h[k]]});
    X.edges.push_back({vid[k], vid[v[k]]});
    X.edge_names.push_back("x" + std::to_string(k + 1));
    X.edge_names.push_back("y" + std::to_string(k + 1));
  }
  for (int k = 0; k < n; ++k) {
    Vec f(2 * n, 0);
    f[2 * k] += 1;
    f[2 * h[k] + 1] += 1;
    f[2 * v[k]] -= 1;
    f[2 * k + 1] -= 1;
    X.faces.push_back(f);
  }
  X.rotation.resize(X.vertices);
  for (size_t c = 0; c < cyc.size(); ++c) {
    for (int k : cyc[c]) {
      auto& rot = X.rotation[c];
      rot.push_back({2 * k, true});
      rot.push_back({2 * k + 1, true});
      rot.push_back({2 * hi[k], false});
      rot.push_back({2 * h[vi[hi[k]]] + 1, false});
    }
  }
  return X;
}

HomBasis origami_homology(const Origami& o) { return homology_of_complex(origami_complex(o), false); }

Vec core_curve_chain(const CylDiagram& d, int cyl) {
  Vec z(d.m() + d.r(), 0);
  for (int s : d.cylinder(cyl).bottom) z[s] += 1;
  return z;
}

HomClass absolute_class(const HomBasis& B, const Vec& chain) {
  if (int(chain.size()) != B.edges()) throw Error(ErrorKind::BasisMismatch, "chain length does not match complex");
  if (!(B.complex.boundary1() * chain == Vec(B.complex.vertices, 0)))
    throw Error(ErrorKind::DomainError, "chain is not a cycle");
  return HomClass{B.tag, true, B.abs_coords * chain};
}

HomClass relative_class(const HomBasis& B, const Vec& chain) {
  if (!B.has_relative) throw Error(ErrorKind::BasisMismatch, "basis carries no relative homology");
  if (int(chain.size()) != B.edges()) throw Error(ErrorKind::BasisMismatch, "chain length does not match complex");
  return HomClass{B.tag, false, B.rel_coords * chain};
}

Vec class_chain(const HomBasis& B, const HomClass& c) {
  if (c.tag != B.tag) throw Error(ErrorKind::BasisMismatch, "class belongs to another basis");
  return c.absolute ? B.abs_basis * c.coords : B.rel_basis * c.coords;
}

HomClass basis_class(const HomBasis& B, int index) {
  Vec e(B.abs_rank(), 0);
  e.at(index) = 1;
  return HomClass{B.tag, true, e};
}

Int intersection_pairing(const HomBasis& B, const HomClass& x, const HomClass& y) {
  if (x.tag != B.tag || y.tag != B.tag) throw Error(ErrorKind::BasisMismatch, "classes from different bases");
  if (!x.absolute || !y.absolute) throw Error(ErrorKind::BasisMismatch, "intersection pairing needs absolute classes");
  return dot(x.coords, B.J * y.coords);
}

CoreSpan core_curve_span(const HomBasis& B, const CylDiagram& d) {
  CoreSpan cs;
  for (int i = 0; i < d.r(); ++i) cs.classes.push_back(absolute_class(B, core_curve_chain(d, i)));
  cs.dimension = class_rank(cs.classes);
  return cs;
}

CoreSpan core_curve_span(const CylDiagram& d) { return core_curve_span(h1_bases(d), d); }

int forni_dim_bound(int d, int g) {
  if (d < 1 || d > g) throw Error(ErrorKind::DomainError, "span dimension must satisfy 1 <= d <= g");
  return 2 * (g - d);
}

int class_rank(const std::vector<HomClass>& classes) {
  if (classes.empty()) return 0;
  std::vector<Vec> cols;
  for (const auto& c : classes) {
    if (c.tag != classes[0].tag || c.absolute != classes[0].absolute) throw Error(ErrorKind::BasisMismatch, "mixed bases");
    cols.push_back(c.coords);
  }
  return rank(Mat::from_cols(cols));
}

bool is_lagrangian(const HomBasis& B, const std::vector<HomClass>& classes) {
  for (const auto& c : classes)
    if (c.tag != B.tag || !c.absolute) throw Error(ErrorKind::BasisMismatch, "class belongs to another basis");
  if (class_rank(classes) != B.genus) return false;
  for (size_t i = 0; i < classes.size(); ++i)
    for (size_t j = i + 1; j < classes.size(); ++j)
      if (intersection_pairing(B, classes[i], classes[j]) != 0) return false;
  return true;
}

ForniCertificate certify_forni_trivial(const HomBasis& B, const std::vector<RealizedClass>& realized) {
  ForniCertificate cert;
  for (const auto& rc : realized) {
    if (rc.witness.empty()) {
      cert.reason = "missing witnesses";
      return cert;
    }
    if (rc.cls.tag != B.tag || !rc.cls.absolute) throw Error(ErrorKind::BasisMismatch, "realized class from another basis");
  }
  const int g = B.genus;
  // (i): 2g-1 independent realized classes leave a symplectic F at most one-dimensional
  std::vector<HomClass> chosen;
  std::vector<std::string> wit;
  for (const auto& rc : realized) {
    chosen.push_back(rc.cls);
    if (class_rank(chosen) < int(chosen.size())) {
      chosen.pop_back();
      continue;
    }
    wit.push_back(rc.witness);
  }
  if (int(chosen.size()) >= 2 * g - 1) {
    cert.accepted = true;
    cert.condition = "i";
    wit.resize(2 * g - 1);
    cert.witnesses = wit;
    return cert;
  }
  // (ii): a realized Lagrangian g-tuple
  const int n = int(realized.size());
  if (n < g) {
    cert.reason = "insufficient intersection pattern: " + std::to_string(n) + " realized classes in genus " + std::to_string(g);
    return cert;
  }
  std::vector<int> idx(g);
  std::function<bool(int, int)> search = [&](int pos, int from) -> bool {
    if (pos == g) {
      std::vector<HomClass> cs;
      for (int i : idx) cs.push_back(realized[i].cls);
      return is_lagrangian(B, cs);
    }
    for (int i = from; i < n; ++i) {
      idx[pos] = i;
      if (search(pos + 1, i + 1)) return true;
    }
    return false;
  };
  if (search(0, 0)) {
    cert.accepted = true;
    cert.condition = "ii";
    for (int i : idx) cert.witnesses.push_back(realized[i].witness);
    return cert;
  }
  cert.reason = "not Lagrangian: no realized " + std::to_string(g) + "-tuple is isotropic of full rank, and realized rank " +
                std::to_string(int(chosen.size())) + " < " + std::to_string(2 * g - 1);
  return cert;
}

}  // namespace flatsurf
