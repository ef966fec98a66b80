#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flatsurf {

using Int = long long;
using Vec = std::vector<Int>;

Int add_checked(Int a, Int b);
Int mul_checked(Int a, Int b);

// Dense row-major integer matrix with overflow-checked arithmetic.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * size_t(cols), 0) {}
  static Mat identity(int n);
  static Mat from_rows(const std::vector<Vec>& rows, int cols = -1);
  static Mat from_cols(const std::vector<Vec>& cols, int rows = -1);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Int& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
  Int operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }
  const std::vector<Int>& data() const { return a_; }

  Vec row(int i) const;
  Vec col(int j) const;
  Mat transpose() const;
  Mat block(int r0, int c0, int nr, int nc) const;
  Mat rows_range(int r0, int nr) const { return block(r0, 0, nr, c_); }
  Mat cols_range(int c0, int nc) const { return block(0, c0, r_, nc); }
  bool is_zero() const;
  Int max_abs() const;

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const;

  std::string str() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Int> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& v);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat scalar_mul(Int s, const Mat& a);
Int dot(const Vec& a, const Vec& b);

// U * A * V = D with D diagonal (nonnegative entries), U, V unimodular.
struct Smith {
  Mat U, Uinv, D, V, Vinv;
  int rank = 0;
  Vec diag() const;
};
Smith smith(const Mat& A);

int rank(const Mat& A);
// Columns form a saturated Z-basis of ker A.
Mat kernel_basis(const Mat& A);
// |det| via Smith form; 0 if singular. Square input only.
Int abs_det(const Mat& A);
Mat inverse_unimodular(const Mat& A);
// x with A x = b over Z if one exists.
bool solve_integer(const Mat& A, const Vec& b, Vec& x);
// Columns give a Z-basis of the lattice spanned by the columns of A.
Mat column_lattice_basis(const Mat& A);

// The standard symplectic form [[0, I], [-I, 0]] on Z^{2g}.
Mat standard_symplectic(int g);
// Unimodular P with P^T J P = standard_symplectic(g); requires J skew and unimodular.
Mat symplectic_reduction(const Mat& J);

}  // namespace flatsurf
