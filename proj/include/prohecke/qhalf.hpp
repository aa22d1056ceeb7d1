#pragma once

#include <array>
#include <map>
#include <string>

#include "prohecke/fq.hpp"

namespace prohecke {

constexpr int kMaxOrbitVars = 4;

// Exponent tuple: entry o is the exponent of q_o^{1/2}.
using QExps = std::array<int, kMaxOrbitVars>;

// Laurent polynomials over F_q in the square roots q_o^{1/2}, one variable per
// W-orbit on S_aff. Zero coefficients are never stored.
class QHalfPoly {
 public:
  QHalfPoly() = default;
  QHalfPoly(const Field* F, int nvars) : F_(F), nvars_(nvars) {}

  static QHalfPoly constant(const Field* F, int nvars, uint32_t c);
  static QHalfPoly monomial(const Field* F, int nvars, const QExps& e, uint32_t c = 1);
  // q_o = (q_o^{1/2})^2
  static QHalfPoly q_var(const Field* F, int nvars, int orbit);

  const Field* field() const { return F_; }
  int nvars() const { return nvars_; }
  const std::map<QExps, uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_negative_exponent() const;

  QHalfPoly operator+(const QHalfPoly& o) const;
  QHalfPoly operator-(const QHalfPoly& o) const;
  QHalfPoly operator-() const;
  QHalfPoly operator*(const QHalfPoly& o) const;
  QHalfPoly& operator+=(const QHalfPoly& o);
  QHalfPoly& operator-=(const QHalfPoly& o);
  bool operator==(const QHalfPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const QHalfPoly& o) const { return !(*this == o); }

  QHalfPoly scaled(uint32_t c) const;
  QHalfPoly shifted(const QExps& e) const;  // multiply by a monomial

  // q_o^{1/2} -> 0 for every o. Throws std::domain_error if a negative
  // exponent is present: such a value did not land in the polynomial ring.
  Fq specialize_zero() const;
  // q_o^{1/2} -> values[o]; negative exponents need nonzero values.
  Fq specialize(const std::array<Fq, kMaxOrbitVars>& values) const;

  std::string str() const;

 private:
  void add_term(const QExps& e, uint32_t c);
  const Field* F_ = nullptr;
  int nvars_ = 0;
  std::map<QExps, uint32_t> terms_;
};

}  // namespace prohecke
