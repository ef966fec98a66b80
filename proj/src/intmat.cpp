#include "flatsurf/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "flatsurf/errors.hpp"

namespace flatsurf {

Int add_checked(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer addition overflow");
  return r;
}

Int mul_checked(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer multiplication overflow");
  return r;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, int cols) {
  int c = cols >= 0 ? cols : (rows.empty() ? 0 : int(rows[0].size()));
  Mat m(int(rows.size()), c);
  for (int i = 0; i < m.rows(); ++i) {
    if (int(rows[i].size()) != c) throw Error(ErrorKind::SizeMismatch, "ragged rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, int rows) {
  int r = rows >= 0 ? rows : (cols.empty() ? 0 : int(cols[0].size()));
  Mat m(r, int(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (int(cols[j].size()) != r) throw Error(ErrorKind::SizeMismatch, "ragged columns");
    for (int i = 0; i < r; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vec Mat::row(int i) const { return Vec(a_.begin() + size_t(i) * c_, a_.begin() + size_t(i + 1) * c_); }

Vec Mat::col(int j) const {
  Vec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

Mat Mat::transpose() const {
  Mat t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  Mat b(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Int x) { return x == 0; });
}

Int Mat::max_abs() const {
  Int m = 0;
  for (Int x : a_) m = std::max(m, x < 0 ? -x : x);
  return m;
}

bool Mat::operator<(const Mat& o) const {
  if (r_ != o.r_) return r_ < o.r_;
  if (c_ != o.c_) return c_ < o.c_;
  return a_ < o.a_;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << "]";
  return os.str();
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::SizeMismatch, "matrix product shape");
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      Int x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) c(i, j) = add_checked(c(i, j), mul_checked(x, b(k, j)));
    }
  return c;
}

Vec operator*(const Mat& a, const Vec& v) {
  if (a.cols() != int(v.size())) throw Error(ErrorKind::SizeMismatch, "matrix-vector shape");
  Vec r(a.rows(), 0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && v[j] != 0) r[i] = add_checked(r[i], mul_checked(a(i, j), v[j]));
  return r;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::SizeMismatch, "matrix sum shape");
  Mat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = add_checked(a(i, j), b(i, j));
  return c;
}

Mat operator-(const Mat& a) { return scalar_mul(-1, a); }
Mat operator-(const Mat& a, const Mat& b) { return a + (-b); }

Mat scalar_mul(Int s, const Mat& a) {
  Mat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = mul_checked(s, a(i, j));
  return c;
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::SizeMismatch, "hstack rows");
  Mat c(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::SizeMismatch, "vstack cols");
  Mat c(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

Int dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::SizeMismatch, "dot length");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) s = add_checked(s, mul_checked(a[i], b[i]));
  return s;
}

Vec Smith::diag() const {
  Vec d;
  for (int i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// Row/column operations applied to D together with the transforms and their inverses.
struct SmithState {
  Mat D, U, Uinv, V, Vinv;

  void add_row(int dst, int src, Int q) {  // row_dst += q row_src
    if (q == 0) return;
    for (int j = 0; j < D.cols(); ++j) D(dst, j) = add_checked(D(dst, j), mul_checked(q, D(src, j)));
    for (int j = 0; j < U.cols(); ++j) U(dst, j) = add_checked(U(dst, j), mul_checked(q, U(src, j)));
    for (int i = 0; i < Uinv.rows(); ++i) Uinv(i, src) = add_checked(Uinv(i, src), mul_checked(-q, Uinv(i, dst)));
  }
  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < D.cols(); ++j) std::swap(D(a, j), D(b, j));
    for (int j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
    for (int i = 0; i < Uinv.rows(); ++i) std::swap(Uinv(i, a), Uinv(i, b));
  }
  void negate_row(int a) {
    for (int j = 0; j < D.cols(); ++j) D(a, j) = -D(a, j);
    for (int j = 0; j < U.cols(); ++j) U(a, j) = -U(a, j);
    for (int i = 0; i < Uinv.rows(); ++i) Uinv(i, a) = -Uinv(i, a);
  }
  void add_col(int dst, int src, Int q) {  // col_dst += q col_src
    if (q == 0) return;
    for (int i = 0; i < D.rows(); ++i) D(i, dst) = add_checked(D(i, dst), mul_checked(q, D(i, src)));
    for (int i = 0; i < V.rows(); ++i) V(i, dst) = add_checked(V(i, dst), mul_checked(q, V(i, src)));
    for (int j = 0; j < Vinv.cols(); ++j) Vinv(src, j) = add_checked(Vinv(src, j), mul_checked(-q, Vinv(dst, j)));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < D.rows(); ++i) std::swap(D(i, a), D(i, b));
    for (int i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
    for (int j = 0; j < Vinv.cols(); ++j) std::swap(Vinv(a, j), Vinv(b, j));
  }
};

Int iabs(Int x) { return x < 0 ? -x : x; }

}  // namespace

Smith smith(const Mat& A) {
  const int m = A.rows(), n = A.cols();
  SmithState s{A, Mat::identity(m), Mat::identity(m), Mat::identity(n), Mat::identity(n)};
  int t = 0;
  for (; t < std::min(m, n); ++t) {
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j) {
        Int x = iabs(s.D(i, j));
        if (x != 0 && (best == 0 || x < best)) best = x, pi = i, pj = j;
      }
    if (pi < 0) break;
    s.swap_rows(t, pi);
    s.swap_cols(t, pj);
    for (;;) {
      bool dirty = false;
      for (int i = t + 1; i < m; ++i) {
        while (s.D(i, t) != 0) {
          s.add_row(i, t, -(s.D(i, t) / s.D(t, t)));
          if (s.D(i, t) != 0) s.swap_rows(i, t), dirty = true;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        while (s.D(t, j) != 0) {
          s.add_col(j, t, -(s.D(t, j) / s.D(t, t)));
          if (s.D(t, j) != 0) s.swap_cols(j, t), dirty = true;
        }
      }
      if (!dirty) break;
    }
    if (s.D(t, t) < 0) s.negate_row(t);
  }
  Smith out;
  out.U = std::move(s.U);
  out.Uinv = std::move(s.Uinv);
  out.D = std::move(s.D);
  out.V = std::move(s.V);
  out.Vinv = std::move(s.Vinv);
  out.rank = t;
  return out;
}

int rank(const Mat& A) { return smith(A).rank; }

Mat kernel_basis(const Mat& A) {
  Smith s = smith(A);
  return s.V.cols_range(s.rank, A.cols() - s.rank);
}

Int abs_det(const Mat& A) {
  if (A.rows() != A.cols()) throw Error(ErrorKind::SizeMismatch, "determinant of non-square matrix");
  Smith s = smith(A);
  if (s.rank < A.rows()) return 0;
  Int d = 1;
  for (Int x : s.diag()) d = mul_checked(d, x);
  return d;
}

Mat inverse_unimodular(const Mat& A) {
  if (abs_det(A) != 1) throw Error(ErrorKind::DomainError, "matrix is not unimodular");
  Smith s = smith(A);
  return s.V * s.U;
}

bool solve_integer(const Mat& A, const Vec& b, Vec& x) {
  Smith s = smith(A);
  Vec c = s.U * b;
  Vec y(A.cols(), 0);
  for (int i = 0; i < int(c.size()); ++i) {
    if (i < s.rank) {
      if (c[i] % s.D(i, i) != 0) return false;
      y[i] = c[i] / s.D(i, i);
    } else if (c[i] != 0) {
      return false;
    }
  }
  x = s.V * y;
  return true;
}

Mat column_lattice_basis(const Mat& A) {
  Smith s = smith(A);
  Mat B(A.rows(), s.rank);
  for (int j = 0; j < s.rank; ++j)
    for (int i = 0; i < A.rows(); ++i) B(i, j) = mul_checked(s.D(j, j), s.Uinv(i, j));
  return B;
}

Mat standard_symplectic(int g) {
  Mat J(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    J(i, g + i) = 1;
    J(g + i, i) = -1;
  }
  return J;
}

namespace {

Int pair(const Mat& J, const Vec& u, const Vec& v) { return dot(u, J * v); }

Vec axpy(Int a, const Vec& x, const Vec& y) {  // a x + y
  Vec r(y);
  for (size_t i = 0; i < r.size(); ++i) r[i] = add_checked(r[i], mul_checked(a, x[i]));
  return r;
}

}  // namespace

Mat symplectic_reduction(const Mat& J) {
  const int n = J.rows();
  if (J.cols() != n || n % 2) throw Error(ErrorKind::DomainError, "intersection matrix must be square of even size");
  if (J.transpose() != -J) throw Error(ErrorKind::DomainError, "intersection matrix is not skew");
  std::vector<Vec> rem;
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    rem.push_back(e);
  }
  std::vector<Vec> es, fs;
  while (!rem.empty()) {
    const Vec e = rem[0];
    // extended gcd over the pairings <e, rem_j>
    Int g = 0;
    Vec f(n, 0);
    for (const Vec& v : rem) {
      Int r = pair(J, e, v);
      if (r == 0) continue;
      // find a, b with a g + b r = gcd(g, r)
      Int a0 = 1, b0 = 0, a1 = 0, b1 = 1, x = g, y = r;
      while (y != 0) {
        Int q = x / y;
        Int t = x - q * y;
        x = y, y = t;
        t = a0 - q * a1, a0 = a1, a1 = t;
        t = b0 - q * b1, b0 = b1, b1 = t;
      }
      Vec nf(n, 0);
      for (int i = 0; i < n; ++i) nf[i] = add_checked(mul_checked(a0, f[i]), mul_checked(b0, v[i]));
      f = nf;
      g = x;
    }
    if (g < 0) {
      g = -g;
      for (Int& x : f) x = -x;
    }
    if (g != 1) throw Error(ErrorKind::DomainError, "intersection form is not unimodular");
    std::vector<Vec> proj;
    for (const Vec& v : rem) {
      Vec p = axpy(-pair(J, e, v), f, v);
      p = axpy(pair(J, f, v), e, p);
      proj.push_back(p);
    }
    es.push_back(e);
    fs.push_back(f);
    Mat B = column_lattice_basis(Mat::from_cols(proj, n));
    rem.clear();
    for (int j = 0; j < B.cols(); ++j) rem.push_back(B.col(j));
  }
  std::vector<Vec> cols = es;
  cols.insert(cols.end(), fs.begin(), fs.end());
  Mat P = Mat::from_cols(cols, n);
  if (P.transpose() * J * P != standard_symplectic(n / 2))
    throw Error(ErrorKind::InvariantViolation, "symplectic reduction failed");
  return P;
}

}  // namespace flatsurf
