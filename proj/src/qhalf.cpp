#include "prohecke/qhalf.hpp"

#include <stdexcept>

namespace prohecke {

QHalfPoly QHalfPoly::constant(const Field* F, int nvars, uint32_t c) {
  QHalfPoly r(F, nvars);
  if (c) r.terms_[QExps{}] = c;
  return r;
}

QHalfPoly QHalfPoly::monomial(const Field* F, int nvars, const QExps& e, uint32_t c) {
  QHalfPoly r(F, nvars);
  if (c) r.terms_[e] = c;
  return r;
}

QHalfPoly QHalfPoly::q_var(const Field* F, int nvars, int orbit) {
  if (orbit < 0 || orbit >= nvars) throw std::out_of_range("QHalfPoly: orbit index");
  QExps e{};
  e[orbit] = 2;
  return monomial(F, nvars, e);
}

bool QHalfPoly::has_negative_exponent() const {
  for (auto& [e, c] : terms_)
    for (int i = 0; i < nvars_; ++i)
      if (e[i] < 0) return true;
  return false;
}

void QHalfPoly::add_term(const QExps& e, uint32_t c) {
  if (!c) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = F_->add(it->second, c);
  if (!it->second) terms_.erase(it);
}

QHalfPoly& QHalfPoly::operator+=(const QHalfPoly& o) {
  if (!F_) { F_ = o.F_; nvars_ = o.nvars_; }
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

QHalfPoly& QHalfPoly::operator-=(const QHalfPoly& o) {
  if (!F_) { F_ = o.F_; nvars_ = o.nvars_; }
  for (auto& [e, c] : o.terms_) add_term(e, F_->neg(c));
  return *this;
}

QHalfPoly QHalfPoly::operator+(const QHalfPoly& o) const {
  QHalfPoly r = *this;
  r += o;
  return r;
}

QHalfPoly QHalfPoly::operator-(const QHalfPoly& o) const {
  QHalfPoly r = *this;
  r -= o;
  return r;
}

QHalfPoly QHalfPoly::operator-() const {
  QHalfPoly r(F_, nvars_);
  for (auto& [e, c] : terms_) r.terms_[e] = F_->neg(c);
  return r;
}

QHalfPoly QHalfPoly::operator*(const QHalfPoly& o) const {
  const Field* F = F_ ? F_ : o.F_;
  QHalfPoly r(F, std::max(nvars_, o.nvars_));
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) {
      QExps e;
      for (int i = 0; i < kMaxOrbitVars; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, F->mul(c1, c2));
    }
  return r;
}

QHalfPoly QHalfPoly::scaled(uint32_t c) const {
  QHalfPoly r(F_, nvars_);
  if (!c) return r;
  for (auto& [e, d] : terms_) r.terms_[e] = F_->mul(d, c);
  return r;
}

QHalfPoly QHalfPoly::shifted(const QExps& s) const {
  QHalfPoly r(F_, nvars_);
  for (auto& [e, c] : terms_) {
    QExps f;
    for (int i = 0; i < kMaxOrbitVars; ++i) f[i] = e[i] + s[i];
    r.terms_[f] = c;
  }
  return r;
}

Fq QHalfPoly::specialize_zero() const {
  if (has_negative_exponent())
    throw std::domain_error("polynomiality gate: negative power of q^{1/2} at zero specialization: " + str());
  auto it = terms_.find(QExps{});
  return {F_, it == terms_.end() ? 0u : it->second};
}

Fq QHalfPoly::specialize(const std::array<Fq, kMaxOrbitVars>& values) const {
  uint32_t acc = 0;
  for (auto& [e, c] : terms_) {
    uint32_t m = c;
    for (int i = 0; i < nvars_; ++i) {
      uint32_t base = values[i].v;
      int k = e[i];
      if (k < 0) {
        if (!base) throw std::domain_error("specialize: negative power of a zero value");
        base = F_->inv(base);
        k = -k;
      }
      for (int j = 0; j < k; ++j) m = F_->mul(m, base);
    }
    acc = F_->add(acc, m);
  }
  return {F_, acc};
}

std::string QHalfPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [e, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += F_->str(c);
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) s += "*h" + std::to_string(i) + "^" + std::to_string(e[i]);
  }
  return s;
}

}  // namespace prohecke
