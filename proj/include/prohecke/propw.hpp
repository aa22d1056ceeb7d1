#pragma once

#include <memory>
#include <string>
#include <vector>

#include "prohecke/fq.hpp"
#include "prohecke/weyl.hpp"

namespace prohecke {

// Element of Z_κ = T(k) ≅ (k^*)^r: exponents of the fixed generator of k^*,
// one per basis vector of X_*, reduced into [0, q-1).
using Tor = std::array<int, kMaxLattice>;

// Element n_w·λ of W(1), with λ = (coweight x, torus t) ∈ Λ(1) ≅ X_* × T(k).
// Acts on the apartment through its image n_w·t_x in W.
struct PElt {
  int w = 0;
  Cow x{};
  Tor t{};
  bool operator==(const PElt& o) const { return w == o.w && x == o.x && t == o.t; }
  bool operator!=(const PElt& o) const { return !(*this == o); }
  bool operator<(const PElt& o) const {
    if (w != o.w) return w < o.w;
    if (x != o.x) return x < o.x;
    return t < o.t;
  }
  AffElt image() const { return AffElt{w, x}; }
  bool in_lambda() const { return w == 0; }
};

class Datum;

// Factorization a = s̃_{i_1} ⋯ s̃_{i_l} · u_1^{e_1} ⋯ u_m^{e_m} · t of an element of
// W_J(1) into standard affine simple lifts, Ω_J(1) generators and a torus part.
struct Decomp {
  std::vector<int> letters;
  std::vector<int> omega_exps;
  Tor t{};
};

// The Levi W_J(1) together with its Coxeter data, standard lifts, parameters
// c of the standard lifts, Ω_J(1) generators and length function ℓ_J.
class Levi {
 public:
  Levi(const Datum& D, ParMask J, const Levi* full);

  const Datum& datum() const { return *D_; }
  ParMask mask() const { return J_; }
  const AffineSystem& aff() const { return aff_; }
  int num_simples() const { return aff_.num_simples(); }
  const PElt& lift(int i) const { return lifts_[i]; }
  const PElt& lift_inv(int i) const { return lift_inv_[i]; }
  // c of the standard lift i as a multiset of torus elements: Σ_t T_t
  const std::vector<Tor>& c_tori(int i) const { return c_[i]; }
  int orbit_var(int i) const { return orbit_var_[i]; }
  const std::vector<PElt>& omega_gens() const { return omega_gens_; }
  const std::vector<int>& omega_cols() const { return omega_cols_; }
  const std::vector<int>& omega_orders() const { return omega_orders_; }  // 0 = infinite order mod Z_κ

  bool contains(const PElt& a) const { return aff_.contains(a.image()); }
  int length(const PElt& a) const { return aff_.length(a.image()); }
  Decomp decompose(const PElt& a, bool reverse_descents = false) const;
  PElt compose(const Decomp& d) const;
  // length-zero element u as Π u_k^{e_k} · t
  Decomp decompose_length_zero(const PElt& u) const;

  // P-negative (sign = -1) or P-positive (sign = +1) element of W_J(1)
  bool is_sign(const PElt& a, int sign) const;
  PElt central_lambda(int sign) const;
  bool in_aff(const PElt& a) const;  // membership in W_{aff,J}(1)
  // index of the simple affine reflection that a lifts, or -1
  int simple_index_of(const PElt& a) const;

 private:
  const Datum* D_;
  ParMask J_;
  AffineSystem aff_;
  std::vector<PElt> lifts_, lift_inv_;
  std::vector<std::vector<Tor>> c_;
  std::vector<int> orbit_var_;
  std::vector<PElt> omega_gens_;
  std::vector<int> omega_cols_, omega_orders_;
  std::vector<Tor> coroot_torus_;  // the subgroup generated by α^∨(k^*), α ∈ Δ_J
};

// Algebra datum: split root datum, residue field F_q (also the coefficient
// field), W(1) with its Tits section, and all standard Levis.
class Datum {
 public:
  Datum(const RootDatum& rd, int p, int f);
  static std::shared_ptr<const Datum> make(const std::string& preset, int p, int f = 1);

  const RootDatum& root_datum() const { return W_.datum(); }
  const FiniteWeyl& W0() const { return W_; }
  const Field* field() const { return F_.get(); }
  int q() const { return F_->q(); }
  int tmod() const { return F_->q() - 1; }
  int rank() const { return W_.datum().rank; }
  int lattice_rank() const { return W_.datum().lattice_rank; }
  int num_orbit_vars() const { return nvars_; }

  const Levi& levi(ParMask J) const { return *levis_.at(J); }
  const Levi& G() const { return levi(W_.datum().full_mask()); }

  // group law
  PElt identity() const { return PElt{}; }
  PElt mul(const PElt& a, const PElt& b) const;
  PElt inv(const PElt& a) const;
  PElt conj(const PElt& g, const PElt& h) const { return mul(mul(g, h), inv(g)); }
  PElt n(int w) const { return PElt{w, Cow{}, Tor{}}; }  // Tits lift n_w
  PElt lambda(const Cow& x, const Tor& t = Tor{}) const { return PElt{0, x, reduce(t)}; }
  PElt torus(const Tor& t) const { return PElt{0, Cow{}, reduce(t)}; }
  const Tor& cocycle(int w1, int w2) const { return tau_[size_t(w1) * W_.size() + w2]; }

  // torus arithmetic and the W_0-action on Λ(1)
  Tor reduce(const Tor& t) const;
  Tor tor_add(const Tor& a, const Tor& b) const;
  Tor tor_neg(const Tor& a) const;
  Tor tor_act(int w, const Tor& t) const;
  PElt act_lambda(int w, const PElt& lam) const;  // w·λ = n_w λ n_w^{-1}
  Tor coroot_torus(int root, int a) const;        // β^∨(g^a)
  Tor coroot_minus_one(int root) const;           // β^∨(-1)

  int length(const PElt& a) const { return G().length(a); }
  Cow nu(const PElt& lam) const { return lam.x; }
  bool is_P_sign(const PElt& a, ParMask P, int sign) const;
  PElt central_lambda(ParMask P, int sign) const { return levi(P).central_lambda(sign); }
  std::vector<PElt> orbit_of(const PElt& lam, int cap = 100000) const;
  bool in_aff(const PElt& a) const { return G().in_aff(a); }
  bool bruhat_leq(const PElt& a, const PElt& b) const;

  std::string str(const PElt& a) const;
  std::string str(const Tor& t) const;

 private:
  FieldPtr F_;
  FiniteWeyl W_;
  std::vector<Tor> tau_;
  int nvars_ = 0;
  std::map<ParMask, std::unique_ptr<Levi>> levis_;
};

using DatumPtr = std::shared_ptr<const Datum>;

}  // namespace prohecke
