#include "prohecke/fqmat.hpp"

#include <stdexcept>

namespace prohecke {

namespace {
void require_same_field(const Field* a, const Field* b) {
  if (a && b && a != b) throw std::invalid_argument("Mat: mixed fields");
}
}  // namespace

Mat Mat::identity(const Field* F, int n) { return scalar(F, n, 1); }

Mat Mat::scalar(const Field* F, int n, uint32_t s) {
  Mat m(F, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  require_same_field(F_, o.F_);
  if (c_ != o.r_) throw std::invalid_argument("Mat: dimension mismatch in product");
  const Field* F = F_ ? F_ : o.F_;
  Mat r(F, r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      uint32_t x = (*this)(i, k);
      if (!x) continue;
      const uint32_t* row = &o.a_[size_t(k) * o.c_];
      uint32_t* out = &r.a_[size_t(i) * o.c_];
      for (int j = 0; j < o.c_; ++j)
        if (row[j]) out[j] = F->add(out[j], F->mul(x, row[j]));
    }
  return r;
}

Mat& Mat::operator+=(const Mat& o) {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: dimension mismatch in sum");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] = F_->add(a_[i], o.a_[i]);
  return *this;
}

Mat Mat::operator+(const Mat& o) const {
  Mat r = *this;
  r += o;
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: dimension mismatch in difference");
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->sub(a_[i], o.a_[i]);
  return r;
}

Mat Mat::scaled(uint32_t s) const {
  Mat r = *this;
  for (auto& x : r.a_) x = F_->mul(x, s);
  return r;
}

Mat Mat::transpose() const {
  Mat r(F_, c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool Mat::is_zero() const {
  for (auto x : a_)
    if (x) return false;
  return true;
}

bool Mat::is_identity() const {
  if (r_ != c_) return false;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

Mat Mat::col(int j) const { return block(0, j, r_, 1); }

Mat Mat::cols(const std::vector<int>& idx) const {
  Mat r(F_, r_, static_cast<int>(idx.size()));
  for (int i = 0; i < r_; ++i)
    for (size_t k = 0; k < idx.size(); ++k) r(i, static_cast<int>(k)) = (*this)(i, idx[k]);
  return r;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  Mat r(F_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
  return r;
}

void Mat::set_block(int r0, int c0, const Mat& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

std::string Mat::str() const {
  std::string s = "[";
  for (int i = 0; i < r_; ++i) {
    if (i) s += ";";
    for (int j = 0; j < c_; ++j) {
      if (j) s += " ";
      s += F_->str((*this)(i, j));
    }
  }
  return s + "]";
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  const Field* F = a.field() ? a.field() : b.field();
  Mat r(F, a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  const Field* F = a.field() ? a.field() : b.field();
  Mat r(F, a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

Echelon rref(const Mat& m) {
  Echelon e{m, {}};
  Mat& R = e.R;
  const Field* F = m.field();
  int row = 0;
  for (int c = 0; c < R.cols() && row < R.rows(); ++c) {
    int piv = -1;
    for (int i = row; i < R.rows(); ++i)
      if (R(i, c)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < R.cols(); ++j) std::swap(R(piv, j), R(row, j));
    uint32_t inv = F->inv(R(row, c));
    for (int j = c; j < R.cols(); ++j) R(row, j) = F->mul(R(row, j), inv);
    for (int i = 0; i < R.rows(); ++i) {
      if (i == row || !R(i, c)) continue;
      uint32_t f = F->neg(R(i, c));
      for (int j = c; j < R.cols(); ++j)
        if (R(row, j)) R(i, j) = F->add(R(i, j), F->mul(f, R(row, j)));
    }
    e.pivots.push_back(c);
    ++row;
  }
  return e;
}

int rank(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return static_cast<int>(rref(m).pivots.size());
}

Mat nullspace(const Mat& m) {
  const Field* F = m.field();
  int n = m.cols();
  if (m.rows() == 0) return Mat::identity(F, n);
  Echelon e = rref(m);
  std::vector<bool> is_piv(n, false);
  for (int c : e.pivots) is_piv[c] = true;
  std::vector<int> free;
  for (int c = 0; c < n; ++c)
    if (!is_piv[c]) free.push_back(c);
  Mat N(F, n, static_cast<int>(free.size()));
  for (size_t k = 0; k < free.size(); ++k) {
    int fc = free[k];
    N(fc, static_cast<int>(k)) = 1;
    for (size_t r = 0; r < e.pivots.size(); ++r)
      N(e.pivots[r], static_cast<int>(k)) = F->neg(e.R(static_cast<int>(r), fc));
  }
  return N;
}

Mat colspace(const Mat& m) {
  if (m.cols() == 0) return m;
  return m.cols(rref(m).pivots);
}

uint32_t det(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square");
  const Field* F = m.field();
  Mat R = m;
  int n = R.rows();
  uint32_t d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (R(i, c)) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(R(piv, j), R(c, j));
      d = F->neg(d);
    }
    d = F->mul(d, R(c, c));
    uint32_t inv = F->inv(R(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (!R(i, c)) continue;
      uint32_t f = F->neg(F->mul(R(i, c), inv));
      for (int j = c; j < n; ++j) R(i, j) = F->add(R(i, j), F->mul(f, R(c, j)));
    }
  }
  return d;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  int n = m.rows();
  Echelon e = rref(hstack(m, Mat::identity(m.field(), n)));
  if (static_cast<int>(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  return e.R.block(0, n, n, n);
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const Field* F = a.field();
  int n = a.cols();
  Echelon e = rref(hstack(a, b));
  Mat X(F, n, b.cols());
  for (size_t r = 0; r < e.pivots.size(); ++r) {
    int c = e.pivots[r];
    if (c >= n) return std::nullopt;  // inconsistent
    for (int j = 0; j < b.cols(); ++j) X(c, j) = e.R(static_cast<int>(r), n + j);
  }
  return X;
}

Mat span_sum(const Mat& u, const Mat& v) { return colspace(hstack(u, v)); }

Mat intersect(const Mat& u, const Mat& v) {
  const Field* F = u.field() ? u.field() : v.field();
  if (u.cols() == 0 || v.cols() == 0) return Mat(F, u.rows(), 0);
  Mat uu = colspace(u), vv = colspace(v);
  Mat N = nullspace(hstack(uu, vv));
  Mat coeffs = N.block(0, 0, uu.cols(), N.cols());
  return colspace(uu * coeffs);
}

bool contains(const Mat& u, const Mat& v) {
  if (v.cols() == 0) return true;
  return rank(hstack(u, v)) == rank(u);
}

bool same_space(const Mat& u, const Mat& v) {
  int ru = rank(u);
  return ru == rank(v) && rank(hstack(u, v)) == ru;
}

AdaptedBasis adapted_basis(const Mat& u, int n) {
  const Field* F = u.field();
  Mat U = u.cols() ? colspace(u) : Mat(F, n, 0);
  Mat B = hstack(U, Mat::identity(F, n));
  std::vector<int> piv = rref(B).pivots;
  AdaptedBasis ab;
  ab.B = B.cols(piv);
  ab.sub_dim = U.cols();
  ab.Binv = *inverse(ab.B);
  return ab;
}

}  // namespace prohecke
