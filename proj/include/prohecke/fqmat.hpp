#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prohecke/fq.hpp"

namespace prohecke {

// Dense matrix over F_q, row-major. Vectors are columns; subspaces are
// represented by a matrix whose columns form a basis.
class Mat {
 public:
  Mat() = default;
  Mat(const Field* F, int rows, int cols) : F_(F), r_(rows), c_(cols), a_(size_t(rows) * cols, 0) {}
  static Mat identity(const Field* F, int n);
  static Mat scalar(const Field* F, int n, uint32_t s);

  const Field* field() const { return F_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  uint32_t operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }
  uint32_t& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const std::vector<uint32_t>& data() const { return a_; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat& operator+=(const Mat& o);
  Mat scaled(uint32_t s) const;
  Mat transpose() const;
  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_identity() const;

  Mat col(int j) const;
  Mat cols(const std::vector<int>& idx) const;
  Mat block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Mat& b);

  std::string str() const;

 private:
  const Field* F_ = nullptr;
  int r_ = 0, c_ = 0;
  std::vector<uint32_t> a_;
};

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);

struct Echelon {
  Mat R;                    // reduced row echelon form
  std::vector<int> pivots;  // pivot column of each nonzero row
};
Echelon rref(const Mat& m);
int rank(const Mat& m);
Mat nullspace(const Mat& m);  // columns span {x : m x = 0}
Mat colspace(const Mat& m);   // independent columns spanning the column space
uint32_t det(const Mat& m);
std::optional<Mat> inverse(const Mat& m);
std::optional<Mat> solve(const Mat& a, const Mat& b);  // some X with aX = b

// Subspace calculus on column-basis matrices of an ambient F_q^n.
Mat span_sum(const Mat& u, const Mat& v);
Mat intersect(const Mat& u, const Mat& v);
bool contains(const Mat& u, const Mat& v);  // col(v) ⊆ col(u)
bool same_space(const Mat& u, const Mat& v);

// Basis change adapted to a subspace U of F^n: columns of U followed by
// standard vectors completing it. Used to read off quotient actions.
struct AdaptedBasis {
  Mat B, Binv;
  int sub_dim = 0;
};
AdaptedBasis adapted_basis(const Mat& u, int n);

}  // namespace prohecke
