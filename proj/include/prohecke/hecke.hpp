#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "prohecke/propw.hpp"
#include "prohecke/qhalf.hpp"

namespace prohecke {

using DatumPtr = std::shared_ptr<const Datum>;

// Coefficients with every q_s specialized to 0. A negative power of q_o^{1/2}
// cannot be specialized and throws std::domain_error.
struct SpecCoeffs {
  using R = Fq;
  static constexpr bool generic = false;
  const Field* F = nullptr;
  int nvars = 0;
  R zero() const { return Fq::zero(F); }
  R one() const { return Fq::one(F); }
  R of(long long n) const { return Fq::of(F, n); }
  R qhalf(const QExps& e) const;
  std::string str(const R& r) const { return r.str(); }
};

// Generic coefficients: Laurent polynomials in the q_o^{1/2}.
struct GenCoeffs {
  using R = QHalfPoly;
  static constexpr bool generic = true;
  const Field* F = nullptr;
  int nvars = 0;
  R zero() const { return QHalfPoly(F, nvars); }
  R one() const { return QHalfPoly::constant(F, nvars, 1); }
  R of(long long n) const { return QHalfPoly::constant(F, nvars, F->from_int(n)); }
  R qhalf(const QExps& e) const { return QHalfPoly::monomial(F, nvars, e); }
  std::string str(const R& r) const { return r.str(); }
};

// Element of H_J in the basis {T_w}: a sparse map with no zero coefficients.
// `tag` is the Levi mask J of the algebra it lives in.
template <class R>
struct HElt {
  ParMask tag = 0;
  std::map<PElt, R> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const HElt& o) const { return tag == o.tag && terms == o.terms; }
  bool operator!=(const HElt& o) const { return !(*this == o); }

  void add_term(const PElt& w, const R& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  HElt& operator+=(const HElt& o) {
    check_tag(o);
    for (auto& [w, c] : o.terms) add_term(w, c);
    return *this;
  }
  HElt& operator-=(const HElt& o) {
    check_tag(o);
    for (auto& [w, c] : o.terms) add_term(w, -c);
    return *this;
  }
  HElt operator+(const HElt& o) const { HElt r = *this; return r += o; }
  HElt operator-(const HElt& o) const { HElt r = *this; return r -= o; }
  HElt operator-() const {
    HElt r{tag, {}};
    for (auto& [w, c] : terms) r.terms.emplace(w, -c);
    return r;
  }
  HElt scaled(const R& s) const {
    HElt r{tag, {}};
    for (auto& [w, c] : terms) r.add_term(w, c * s);
    return r;
  }
  R coeff(const PElt& w, const R& zero) const {
    auto it = terms.find(w);
    return it == terms.end() ? zero : it->second;
  }

 private:
  void check_tag(const HElt& o) const {
    if (o.tag != tag) throw std::invalid_argument("Hecke elements of different algebras");
  }
};

using SpecElt = HElt<Fq>;
using GenElt = HElt<QHalfPoly>;

// q_o^{1/2} -> 0 on every coefficient, through the polynomiality gate.
SpecElt specialize(const GenElt& x);

// The pro-p Iwahori Hecke algebra H_J of the Levi J (H itself for J = Δ) with
// parameters c_s = Σ_{u∈k^*} T_{α_s^∨(u)} on the standard lifts. Orientations
// are indexed by v ∈ W_0: the chamber of v(-ρ^∨), so o_- = 1 and o_+ = w_G,
// and o·w is the chamber of lin(w)^{-1}v(-ρ^∨).
template <class C>
class Hecke {
 public:
  using R = typename C::R;
  using Elt = HElt<R>;

  Hecke(DatumPtr D, ParMask J);

  const Datum& datum() const { return *D_; }
  const DatumPtr& datum_ptr() const { return D_; }
  const Levi& levi() const { return *L_; }
  ParMask tag() const { return J_; }
  const C& coeffs() const { return C_; }
  int length(const PElt& w) const { return L_->length(w); }

  Elt zero() const { return Elt{J_, {}}; }
  Elt unit() const { return T(D_->identity()); }
  Elt T(const PElt& w) const;
  Elt T(const PElt& w, const R& c) const;
  // c_s̃ for any lift s̃ of a simple affine reflection: c_{ts} = t·c_s
  Elt c_of(const PElt& s) const;
  Elt c_std(int i) const;

  // q_w^{1/2} as exponents per orbit variable; q_w = (q_w^{1/2})^2
  QExps half_exps(const PElt& w) const;
  R qhalf_of(const PElt& w) const { return C_.qhalf(half_exps(w)); }
  R q_of(const PElt& w) const;

  Elt mul(const Elt& x, const Elt& y) const;
  Elt right_simple(const Elt& x, int i, bool star) const;  // x·T_s̃ or x·(T_s̃ - c_s̃)
  Elt right_shift(const Elt& x, const PElt& u) const;       // x·T_u for ℓ(u) = 0

  Elt star(const PElt& w) const;
  Elt orient(int o, const PElt& w) const;  // E_o(w)
  int o_minus() const { return 0; }
  int o_plus() const { return D_->W0().longest(); }
  int o_act(int o, const PElt& w) const { return D_->W0().mul(D_->W0().inv(w.w), o); }
  // E_-(n_wλ) = q_{n_wλ}^{1/2} q_{n_w}^{-1/2} q_λ^{-1/2} T*_{n_w} E_{o_-}(λ)
  Elt e_minus_def(const PElt& w) const;
  // the same element as the walk E_{w·o_-}(n_wλ); E_+ uses o_+ instead
  Elt e_minus(const PElt& w) const { return orient(w.w, w); }
  Elt e_plus(const PElt& w) const { return orient(D_->W0().mul(w.w, o_plus()), w); }

  Elt iota(const Elt& x) const;
  Elt zeta(const Elt& x) const;
  Elt z_orbit(const std::vector<PElt>& orbit, int o) const;

  // Coordinates of x in a basis b ↦ basis(b) with basis(b) ∈ T_b + (shorter terms).
  std::map<PElt, R> expand(const Elt& x, const std::function<Elt(const PElt&)>& basis) const;
  std::map<PElt, R> expand_star(const Elt& x) const;

  // w = s̃_{i_1} ⋯ s̃_{i_l}·u with standard lifts and ℓ_J(u) = 0
  struct Word {
    std::vector<int> letters;
    PElt u;
  };
  const Word& word(const PElt& w) const;
  std::string str(const Elt& x) const;

 private:
  DatumPtr D_;
  ParMask J_;
  const Levi* L_;
  C C_;
  mutable std::mutex mu_;
  mutable std::map<PElt, Word> word_cache_;
  mutable std::map<std::pair<int, PElt>, Elt> orient_cache_;
  mutable std::map<PElt, Elt> star_cache_;
};

using SpecHecke = Hecke<SpecCoeffs>;
using GenHecke = Hecke<GenCoeffs>;

// ⟨α, ν(w)⟩ sign condition for α ∈ Σ_Q^+ \ Σ_P^+ (sign -1: ≥ 0, sign +1: ≤ 0)
bool in_relative_cone(const Datum& D, const PElt& w, ParMask P, ParMask Q, int sign);

// j_P^{Q±}(T^P_w) = T^Q_w, or j_P^{Q±*}(T^{P*}_w) = T^{Q*}_w when `star`.
// Throws std::invalid_argument when the support leaves W_P^{Q±}(1).
template <class C>
HElt<typename C::R> j_transport(const Hecke<C>& HP, const Hecke<C>& HQ, const HElt<typename C::R>& x, int sign,
                               bool star);

}  // namespace prohecke
