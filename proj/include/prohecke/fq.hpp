#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace prohecke {

// F_{p^f} with full addition and multiplication tables. Elements are encoded
// as integers 0..q-1 whose base-p digits are the polynomial coefficients
// modulo the fixed irreducible `modulus`. The modulus is the lexicographically
// smallest monic primitive polynomial, so `gen()` (the class of x) generates
// F_q^*; for f = 1 it is the smallest primitive root instead.
class Field {
 public:
  Field(int p, int f);

  int p() const { return p_; }
  int f() const { return f_; }
  int q() const { return q_; }

  uint32_t add(uint32_t a, uint32_t b) const { return add_[a * q_ + b]; }
  uint32_t sub(uint32_t a, uint32_t b) const { return add_[a * q_ + neg_[b]]; }
  uint32_t neg(uint32_t a) const { return neg_[a]; }
  uint32_t mul(uint32_t a, uint32_t b) const { return mul_[a * q_ + b]; }
  uint32_t inv(uint32_t a) const;  // throws on 0
  uint32_t from_int(long long n) const;
  uint32_t gen() const { return gen_; }
  uint32_t gen_pow(long long k) const;  // gen^k, k reduced mod q-1
  int log(uint32_t a) const;            // discrete log base gen; throws on 0
  std::vector<int> digits(uint32_t a) const;
  std::string str(uint32_t a) const;
  const std::vector<int>& modulus() const { return modulus_; }

 private:
  int p_, f_, q_;
  std::vector<int> modulus_;
  std::vector<uint32_t> add_, mul_, neg_, exp_;
  std::vector<int> log_;
  uint32_t gen_ = 1;
};

using FieldPtr = std::shared_ptr<const Field>;

// A field element bound to its field; the convenience type for callers and
// tests. Hot loops use the raw table interface of Field directly.
struct Fq {
  const Field* F = nullptr;
  uint32_t v = 0;

  static Fq zero(const Field* F) { return {F, 0}; }
  static Fq one(const Field* F) { return {F, 1}; }
  static Fq of(const Field* F, long long n) { return {F, F->from_int(n)}; }

  bool is_zero() const { return v == 0; }
  Fq operator+(Fq o) const { return {F, F->add(v, o.v)}; }
  Fq operator-(Fq o) const { return {F, F->sub(v, o.v)}; }
  Fq operator-() const { return {F, F->neg(v)}; }
  Fq operator*(Fq o) const { return {F, F->mul(v, o.v)}; }
  Fq operator/(Fq o) const { return {F, F->mul(v, F->inv(o.v))}; }
  Fq& operator+=(Fq o) { v = F->add(v, o.v); return *this; }
  Fq& operator-=(Fq o) { v = F->sub(v, o.v); return *this; }
  Fq& operator*=(Fq o) { v = F->mul(v, o.v); return *this; }
  bool operator==(const Fq& o) const { return v == o.v; }
  bool operator!=(const Fq& o) const { return v != o.v; }
  Fq inv() const { return {F, F->inv(v)}; }
  std::string str() const { return F->str(v); }
};

}  // namespace prohecke
