#include "prohecke/hecke.hpp"

#include <algorithm>
#include <sstream>

namespace prohecke {

Fq SpecCoeffs::qhalf(const QExps& e) const {
  bool positive = false;
  for (int k : e) {
    if (k < 0) throw std::domain_error("polynomiality gate: negative power of q^{1/2} at q = 0");
    if (k > 0) positive = true;
  }
  return positive ? zero() : one();
}

SpecElt specialize(const GenElt& x) {
  SpecElt r{x.tag, {}};
  for (auto& [w, c] : x.terms) r.add_term(w, c.specialize_zero());
  return r;
}

template <class C>
Hecke<C>::Hecke(DatumPtr D, ParMask J) : D_(std::move(D)), J_(J), L_(&D_->levi(J)) {
  C_.F = D_->field();
  C_.nvars = D_->num_orbit_vars();
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::T(const PElt& w) const {
  return T(w, C_.one());
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::T(const PElt& w, const R& c) const {
  if (!L_->contains(w)) throw std::invalid_argument("T_w: element outside W_J(1)");
  Elt r = zero();
  r.add_term(w, c);
  return r;
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::c_std(int i) const {
  Elt r = zero();
  for (const Tor& t : L_->c_tori(i)) r.add_term(D_->torus(t), C_.one());
  return r;
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::c_of(const PElt& s) const {
  int i = L_->simple_index_of(s);
  if (i < 0) throw std::invalid_argument("c_s: not a lift of a simple affine reflection");
  PElt t = D_->mul(s, L_->lift_inv(i));
  Elt r = zero();
  for (const Tor& u : L_->c_tori(i)) r.add_term(D_->mul(t, D_->torus(u)), C_.one());
  return r;
}

template <class C>
const typename Hecke<C>::Word& Hecke<C>::word(const PElt& w) const {
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = word_cache_.find(w);
    if (it != word_cache_.end()) return it->second;
  }
  Decomp d = L_->decompose(w);
  Word wd;
  wd.letters = d.letters;
  PElt prefix = D_->identity();
  for (int i : d.letters) prefix = D_->mul(prefix, L_->lift(i));
  wd.u = D_->mul(D_->inv(prefix), w);
  std::lock_guard<std::mutex> g(mu_);
  return word_cache_.emplace(w, std::move(wd)).first->second;
}

template <class C>
QExps Hecke<C>::half_exps(const PElt& w) const {
  QExps e{};
  for (int i : word(w).letters) e[L_->orbit_var(i)] += 1;
  return e;
}

template <class C>
typename Hecke<C>::R Hecke<C>::q_of(const PElt& w) const {
  QExps e = half_exps(w);
  for (int& k : e) k *= 2;
  return C_.qhalf(e);
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::right_simple(const Elt& x, int i, bool star) const {
  const PElt& s = L_->lift(i);
  const PElt& sinv = L_->lift_inv(i);
  const auto& ctor = L_->c_tori(i);
  Elt r = zero();
  QExps qe{};
  qe[L_->orbit_var(i)] = 2;
  for (auto& [a, c] : x.terms) {
    PElt as = D_->mul(a, s);
    if (length(as) > length(a)) {
      r.add_term(as, c);
    } else {
      // T_a T_s = q_s T_{as} + Σ_t T_{a s^{-1} t s}
      if constexpr (C::generic) r.add_term(as, c * C_.qhalf(qe));
      PElt a1 = D_->mul(a, sinv);
      for (const Tor& t : ctor) r.add_term(D_->mul(D_->mul(a1, D_->torus(t)), s), c);
    }
    if (star)
      for (const Tor& t : ctor) r.add_term(D_->mul(a, D_->torus(t)), -c);
  }
  return r;
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::right_shift(const Elt& x, const PElt& u) const {
  if (u == D_->identity()) return x;
  Elt r = zero();
  for (auto& [a, c] : x.terms) r.add_term(D_->mul(a, u), c);
  return r;
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::mul(const Elt& x, const Elt& y) const {
  if (x.tag != J_ || y.tag != J_) throw std::invalid_argument("Hecke::mul: algebra tag mismatch");
  Elt r = zero();
  for (auto& [b, cb] : y.terms) {
    const Word& wd = word(b);
    Elt X = x;
    for (int i : wd.letters) X = right_simple(X, i, false);
    X = right_shift(X, wd.u);
    r += X.scaled(cb);
  }
  return r;
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::star(const PElt& w) const {
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = star_cache_.find(w);
    if (it != star_cache_.end()) return it->second;
  }
  const Word& wd = word(w);
  Elt X = unit();
  for (int i : wd.letters) X = right_simple(X, i, true);
  X = right_shift(X, wd.u);
  std::lock_guard<std::mutex> g(mu_);
  return star_cache_.emplace(w, X).first->second;
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::orient(int o, const PElt& w) const {
  auto key = std::make_pair(o, w);
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = orient_cache_.find(key);
    if (it != orient_cache_.end()) return it->second;
  }
  const FiniteWeyl& W = D_->W0();
  const Word& wd = word(w);
  const int oinv = W.inv(o);
  Elt X = unit();
  PElt prefix = D_->identity();
  for (int i : wd.letters) {
    const AffSimple& s = L_->aff().simples()[i];
    // the crossed wall faces the orientation iff <γ, lin(prefix)^{-1} o(-ρ^∨)> > 0
    int k = W.act_root_index(W.mul(oinv, prefix.w), s.root);
    bool plain = (s.gamma_sign < 0) == W.root_positive(k);
    X = right_simple(X, i, !plain);
    prefix = D_->mul(prefix, L_->lift(i));
  }
  X = right_shift(X, wd.u);
  std::lock_guard<std::mutex> g(mu_);
  return orient_cache_.emplace(key, X).first->second;
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::e_minus_def(const PElt& w) const {
  PElt nw = D_->n(w.w);
  PElt lam = D_->mul(D_->inv(nw), w);
  QExps e = half_exps(w), a = half_exps(nw), b = half_exps(lam);
  for (int k = 0; k < kMaxOrbitVars; ++k) e[k] -= a[k] + b[k];
  return mul(star(nw), orient(o_minus(), lam)).scaled(C_.qhalf(e));
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::iota(const Elt& x) const {
  Elt r = zero();
  for (auto& [w, c] : x.terms) {
    Elt s = star(w);
    r += (length(w) % 2 ? -s : s).scaled(c);
  }
  return r;
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::zeta(const Elt& x) const {
  Elt r = zero();
  for (auto& [w, c] : x.terms) r.add_term(D_->inv(w), c);
  return r;
}

template <class C>
typename Hecke<C>::Elt Hecke<C>::z_orbit(const std::vector<PElt>& orbit, int o) const {
  Elt r = zero();
  for (const PElt& l : orbit) r += orient(o, l);
  return r;
}

template <class C>
std::map<PElt, typename Hecke<C>::R> Hecke<C>::expand(const Elt& x,
                                                       const std::function<Elt(const PElt&)>& basis) const {
  std::map<PElt, R> out;
  Elt rest = x;
  while (!rest.is_zero()) {
    auto top = rest.terms.begin();
    int lt = length(top->first);
    for (auto it = rest.terms.begin(); it != rest.terms.end(); ++it) {
      int l = length(it->first);
      if (l > lt) {
        top = it;
        lt = l;
      }
    }
    PElt b = top->first;
    R c = top->second;
    Elt e = basis(b);
    for (auto& [v, cv] : e.terms) {
      if (v == b) {
        if (cv != C_.one()) throw std::logic_error("expand: basis element is not unitriangular");
      } else if (length(v) >= lt) {
        throw std::logic_error("expand: basis element is not triangular");
      }
    }
    rest -= e.scaled(c);
    auto it = out.find(b);
    if (it == out.end()) out.emplace(b, c);
    else it->second += c;
  }
  return out;
}

template <class C>
std::map<PElt, typename Hecke<C>::R> Hecke<C>::expand_star(const Elt& x) const {
  return expand(x, [this](const PElt& b) { return star(b); });
}

template <class C>
std::string Hecke<C>::str(const Elt& x) const {
  if (x.is_zero()) return "0";
  std::vector<std::pair<int, PElt>> keys;
  for (auto& [w, c] : x.terms) keys.emplace_back(length(w), w);
  std::sort(keys.begin(), keys.end());
  std::ostringstream os;
  bool first = true;
  for (auto& [l, w] : keys) {
    if (!first) os << " + ";
    first = false;
    os << "(" << C_.str(x.terms.at(w)) << ")*T" << D_->str(w);
  }
  return os.str();
}

bool in_relative_cone(const Datum& D, const PElt& w, ParMask P, ParMask Q, int sign) {
  const FiniteWeyl& W = D.W0();
  if (!W.in_parabolic(w.w, P)) return false;
  for (int k : W.positive_roots(Q)) {
    if (W.root_in(k, P)) continue;
    int v = D.root_datum().pair(W.root_functional(k), w.x);
    if (sign < 0 ? v < 0 : v > 0) return false;
  }
  return true;
}

template <class C>
HElt<typename C::R> j_transport(const Hecke<C>& HP, const Hecke<C>& HQ, const HElt<typename C::R>& x, int sign,
                               bool star) {
  const ParMask P = HP.tag(), Q = HQ.tag();
  if ((P & Q) != P) throw std::invalid_argument("j_transport: target does not contain the source Levi");
  if (x.tag != P) throw std::invalid_argument("j_transport: element not in the source algebra");
  const Datum& D = HP.datum();
  auto check = [&](const PElt& w) {
    if (!in_relative_cone(D, w, P, Q, sign))
      throw std::invalid_argument("j_transport: support leaves the " + std::string(sign < 0 ? "negative" : "positive") +
                                  " cone: " + D.str(w));
  };
  HElt<typename C::R> r = HQ.zero();
  if (!star) {
    for (auto& [w, c] : x.terms) {
      check(w);
      r.add_term(w, c);
    }
    return r;
  }
  for (auto& [w, c] : HP.expand_star(x)) {
    check(w);
    r += HQ.star(w).scaled(c);
  }
  return r;
}

template class Hecke<SpecCoeffs>;
template class Hecke<GenCoeffs>;
template SpecElt j_transport<SpecCoeffs>(const SpecHecke&, const SpecHecke&, const SpecElt&, int, bool);
template GenElt j_transport<GenCoeffs>(const GenHecke&, const GenHecke&, const GenElt&, int, bool);

}  // namespace prohecke
