#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "prohecke/hecke.hpp"

using namespace prohecke;

namespace {

PElt random_in_levi(const Datum& D, ParMask J, std::mt19937_64& rng, int maxlen, int box = 2) {
  const Levi& L = D.levi(J);
  auto elts = D.W0().parabolic_elements(J);
  for (;;) {
    PElt a;
    a.w = elts[rng() % elts.size()];
    for (int i = 0; i < D.lattice_rank(); ++i) {
      a.x[i] = int(rng() % (2 * box + 1)) - box;
      a.t[i] = rng() % D.tmod();
    }
    if (L.length(a) <= maxlen) return a;
  }
}

template <class H>
typename H::Elt random_elt(const H& A, std::mt19937_64& rng, int maxlen, int terms = 2) {
  auto x = A.zero();
  for (int k = 0; k < terms; ++k)
    x.add_term(random_in_levi(A.datum(), A.tag(), rng, maxlen), A.coeffs().of(1 + rng() % (A.datum().q() - 1)));
  return x;
}

// All elements of W(1) with ℓ ≤ maxlen (coweights in a box wide enough for these lengths).
std::vector<PElt> ball(const Datum& D, int maxlen, int box) {
  std::vector<PElt> out;
  const int r = D.lattice_rank();
  std::vector<int> xs(r, -box);
  for (;;) {
    Cow x{};
    for (int i = 0; i < r; ++i) x[i] = xs[i];
    for (int w = 0; w < D.W0().size(); ++w) {
      PElt a{w, x, Tor{}};
      if (D.length(a) <= maxlen) out.push_back(a);
    }
    int i = 0;
    while (i < r && ++xs[i] > box) xs[i++] = -box;
    if (i == r) break;
  }
  return out;
}

bool orthogonal_complement(const RootDatum& rd, ParMask P) {
  for (int i = 0; i < rd.rank; ++i)
    for (int j = 0; j < rd.rank; ++j)
      if ((P >> i & 1) && !(P >> j & 1) && rd.cartan[i][j] != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("quadratic relation in SL2") {
  auto D = Datum::make("SL2", 3);
  GenHecke Hg(D, 1);
  SpecHecke Hs(D, 1);
  PElt ns = D->n(1);
  PElt ns2 = D->mul(ns, ns);
  auto lhs = Hg.mul(Hg.T(ns), Hg.T(ns));
  auto rhs = Hg.T(ns2, Hg.q_of(ns)) + Hg.mul(Hg.c_of(ns), Hg.T(ns));
  CHECK(lhs == rhs);
  CHECK(Hs.mul(Hs.T(ns), Hs.T(ns)) == Hs.mul(Hs.c_of(ns), Hs.T(ns)));
  CHECK(Hs.mul(Hs.unit(), Hs.T(ns)) == Hs.T(ns));
  // c_{ts} = t c_s
  PElt t = D->torus(Tor{1, 0, 0});
  CHECK(Hs.c_of(D->mul(t, ns)) == Hs.mul(Hs.T(t), Hs.c_of(ns)));
}

TEST_CASE("c parameters are conjugation equivariant") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"PGL2", 3}, {"SL3", 3}, {"GL2", 5}}) {
    auto D = Datum::make(name, p);
    SpecHecke H(D, D->root_datum().full_mask());
    const Levi& G = D->G();
    std::mt19937_64 rng(3);
    for (int it = 0; it < 40; ++it) {
      PElt w = random_in_levi(*D, G.mask(), rng, 4);
      PElt s = G.lift(rng() % G.num_simples());
      PElt conj = D->conj(w, s);
      if (G.simple_index_of(conj) < 0) continue;
      // c_{wsw^{-1}} = w·c_s
      auto rhs = H.zero();
      for (auto& [t, c] : H.c_of(s).terms) rhs.add_term(D->conj(w, t), c);
      CHECK(H.c_of(conj) == rhs);
    }
  }
}

TEST_CASE("braid relations hold for every Coxeter pair") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"PGL2", 3}, {"GL2", 3}, {"SL3", 2}, {"SL3", 3}}) {
    auto D = Datum::make(name, p);
    SpecHecke H(D, D->root_datum().full_mask());
    const Levi& G = D->G();
    for (int a = 0; a < G.num_simples(); ++a)
      for (int b = a + 1; b < G.num_simples(); ++b) {
        int m = G.aff().coxeter_m(a, b);
        if (m == 0) continue;
        auto lhs = H.unit(), rhs = H.unit();
        PElt pl = D->identity(), pr = D->identity();
        for (int k = 0; k < m; ++k) {
          int i = k % 2 ? b : a, j = k % 2 ? a : b;
          lhs = H.mul(lhs, H.T(G.lift(i)));
          rhs = H.mul(rhs, H.T(G.lift(j)));
          pl = D->mul(pl, G.lift(i));
          pr = D->mul(pr, G.lift(j));
        }
        CHECK(lhs == H.T(pl));
        CHECK(rhs == H.T(pr));
        CHECK(pl.image() == pr.image());
      }
  }
}

TEST_CASE("associativity in both modes") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"PGL2", 3}, {"SL3", 2}}) {
    auto D = Datum::make(name, p);
    ParMask full = D->root_datum().full_mask();
    SpecHecke Hs(D, full);
    GenHecke Hg(D, full);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 60; ++it) {
      auto a = random_elt(Hs, rng, 4), b = random_elt(Hs, rng, 4), c = random_elt(Hs, rng, 4);
      CHECK(Hs.mul(Hs.mul(a, b), c) == Hs.mul(a, Hs.mul(b, c)));
    }
    for (int it = 0; it < 20; ++it) {
      auto a = random_elt(Hg, rng, 3), b = random_elt(Hg, rng, 3), c = random_elt(Hg, rng, 3);
      auto abc = Hg.mul(Hg.mul(a, b), c);
      CHECK(abc == Hg.mul(a, Hg.mul(b, c)));
      CHECK(specialize(abc) == Hs.mul(Hs.mul(specialize(a), specialize(b)), specialize(c)));
    }
  }
}

TEST_CASE("q_w is multiplicative along reduced words and inverse invariant") {
  auto D = Datum::make("SL3", 2);
  GenHecke H(D, 3);
  CHECK(H.q_of(D->n(D->W0().longest())) == QHalfPoly::monomial(D->field(), 1, QExps{6, 0, 0, 0}));
  std::mt19937_64 rng(5);
  for (int it = 0; it < 50; ++it) {
    PElt w = random_in_levi(*D, 3, rng, 6);
    CHECK(H.q_of(w) == H.q_of(D->inv(w)));
    Decomp d = D->G().decompose(w, true);
    QExps e{};
    for (int i : d.letters) e[D->G().orbit_var(i)] += 2;
    CHECK(H.q_of(w) == QHalfPoly::monomial(D->field(), 1, e));
  }
  auto D2 = Datum::make("SL2", 3);
  GenHecke H2(D2, 1);
  CHECK(H2.q_of(D2->torus(Tor{1, 0, 0})) == QHalfPoly::constant(D2->field(), 2, 1));
}

TEST_CASE("T* basis: definition, independence, triangularity, inverse") {
  auto D = Datum::make("SL2", 3);
  SpecHecke H(D, 1);
  GenHecke Hg(D, 1);
  PElt ns = D->n(1);
  CHECK(H.star(ns) == H.T(ns) - H.c_of(ns));
  PElt t = D->torus(Tor{1, 0, 0});
  CHECK(H.star(t) == H.T(t));
  for (auto [name, p] : {std::pair{"SL2", 3}, {"PGL2", 3}, {"SL3", 2}}) {
    auto Dn = Datum::make(name, p);
    ParMask full = Dn->root_datum().full_mask();
    SpecHecke A(Dn, full);
    GenHecke Ag(Dn, full);
    for (const PElt& w : ball(*Dn, 4, 2)) {
      auto s = A.star(w);
      CHECK(s.coeff(w, A.coeffs().zero()) == A.coeffs().one());
      for (auto& [v, c] : s.terms)
        if (v != w) CHECK(Dn->bruhat_leq(v, w));
      // the other reduced decomposition gives the same element
      Decomp d = Dn->G().decompose(w, true);
      auto alt = A.unit();
      for (int i : d.letters) alt = A.right_simple(alt, i, true);
      PElt pre = Dn->identity();
      for (int i : d.letters) pre = Dn->mul(pre, Dn->G().lift(i));
      alt = A.right_shift(alt, Dn->mul(Dn->inv(pre), w));
      CHECK(alt == s);
      if (Dn->length(w) <= 3) {
        // T*_w = q_w T_{w^{-1}}^{-1}
        CHECK(Ag.mul(Ag.star(w), Ag.T(Dn->inv(w))) == Ag.T(Dn->identity(), Ag.q_of(w)));
      }
    }
  }
}

TEST_CASE("orientation bases: pins, triangularity, product formula") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"PGL2", 3}, {"SL3", 2}}) {
    auto D = Datum::make(name, p);
    ParMask full = D->root_datum().full_mask();
    GenHecke H(D, full);
    SpecHecke Hs(D, full);
    const FiniteWeyl& W = D->W0();
    // finite part: E_{o_+}(n_w) = T*_{n_w} and E_{o_-}(n_w) = T_{n_w}
    for (int w = 0; w < W.size(); ++w) {
      CHECK(H.orient(H.o_plus(), D->n(w)) == H.star(D->n(w)));
      CHECK(H.orient(H.o_minus(), D->n(w)) == H.T(D->n(w)));
    }
    // dominant translations: E_{o_-}(λ) = T*_λ and E_{o_+}(λ) = T_λ
    PElt lam = D->central_lambda(0, -1);
    for (int k = 1; k <= 2; ++k) {
      PElt l = D->lambda(cow_scale(lam.x, k));
      CHECK(H.orient(H.o_minus(), l) == H.star(l));
      CHECK(H.orient(H.o_plus(), l) == H.T(l));
    }
    PElt t = D->torus(Tor{1, 1, 0});
    CHECK(H.orient(0, t) == H.T(t));
    for (const PElt& w : ball(*D, 4, 2))
      for (int o : {0, W.longest(), W.simple(0)}) {
        auto e = Hs.orient(o, w);
        CHECK(e.coeff(w, Hs.coeffs().zero()) == Hs.coeffs().one());
        for (auto& [v, c] : e.terms)
          if (v != w) CHECK(D->bruhat_leq(v, w));
      }
    std::mt19937_64 rng(21);
    int tested = 0;
    while (tested < 60) {
      PElt w1 = random_in_levi(*D, full, rng, 3), w2 = random_in_levi(*D, full, rng, 3);
      int o = rng() % W.size();
      PElt w12 = D->mul(w1, w2);
      auto lhs = H.mul(H.orient(o, w1), H.orient(H.o_act(o, w1), w2));
      QExps e = H.half_exps(w1), b = H.half_exps(w2), c = H.half_exps(w12);
      for (int k = 0; k < kMaxOrbitVars; ++k) e[k] += b[k] - c[k];
      CHECK(lhs == H.orient(o, w12).scaled(H.coeffs().qhalf(e)));
      ++tested;
    }
  }
}

TEST_CASE("E_- basis: walk form, polynomiality and the Bernstein claim") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"SL3", 2}}) {
    auto D = Datum::make(name, p);
    ParMask full = D->root_datum().full_mask();
    GenHecke H(D, full);
    SpecHecke Hs(D, full);
    for (const PElt& w : ball(*D, 3, 2)) {
      auto def = H.e_minus_def(w);
      CHECK(def == H.e_minus(w));
      CHECK_NOTHROW(specialize(def));
      CHECK(specialize(def) == Hs.e_minus(w));
      if (w.w == 0) CHECK(Hs.e_minus(w) == Hs.orient(0, w));
      if (w.x == Cow{} && w.t == Tor{}) CHECK(Hs.e_minus(w) == Hs.star(w));
    }
    // E_-(λ n_s^{-1})(T_{n_s} - c_{n_s}) = E_{o_-}(λ) for λ = w·(λ_P^-)^2, Δ_P ⊥ Δ \ Δ_P, P ⊂ Q, w ∈ W_0^Q with
    // Δ_w = Δ_Q, s = s_α with sw > w, Δ_{sw} = Δ_w and w^{-1}(α) ∈ Σ^+ \ Σ_Q^+ not simple
    const FiniteWeyl& W = D->W0();
    auto is_simple = [&](int k) {
      for (int j = 0; j < D->rank(); ++j)
        if (W.simple_root_index(j) == k) return true;
      return false;
    };
    int checked = 0;
    for (int w = 0; w < W.size(); ++w) {
      const ParMask Q = W.delta_w(w);
      for (int i = 0; i < D->rank(); ++i) {
        int sw = W.mul(W.simple(i), w);
        if (W.length(sw) < W.length(w) || W.delta_w(sw) != Q) continue;
        int k = W.act_root_index(W.inv(w), W.simple_root_index(i));
        if (!W.root_positive(k) || W.root_in(k, Q) || is_simple(k)) continue;
        for (ParMask P = 0; P <= Q; ++P) {
          if ((P & Q) != P || !orthogonal_complement(D->root_datum(), P)) continue;
          PElt lp = D->central_lambda(P, -1);
          PElt lam = D->act_lambda(w, D->mul(lp, lp));
          PElt ns = D->n(W.simple(i));
          auto lhs = Hs.mul(Hs.e_minus(D->mul(lam, D->inv(ns))), Hs.T(ns) - Hs.c_of(ns));
          CHECK(lhs == Hs.orient(0, lam));
          ++checked;
        }
      }
    }
    if (std::string(name) == "SL3") CHECK(checked > 0);
    if (std::string(name) == "SL2") {
      // no SL2 instance meets the hypothesis (w^{-1}(α) is always simple); the identity fails for w = s
      CHECK(checked == 0);
      PElt lb = D->central_lambda(0, -1);
      PElt lam = D->act_lambda(W.simple(0), D->mul(lb, lb));
      PElt ns = D->n(W.simple(0));
      CHECK_FALSE(Hs.mul(Hs.e_minus(D->mul(lam, D->inv(ns))), Hs.T(ns) - Hs.c_of(ns)) == Hs.orient(0, lam));
    }
  }
}

TEST_CASE("involutions") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"SL3", 2}}) {
    auto D = Datum::make(name, p);
    ParMask full = D->root_datum().full_mask();
    SpecHecke H(D, full);
    PElt s = D->n(D->W0().simple(0));
    CHECK(H.iota(H.T(s)) == -H.T(s) + H.c_of(s));
    PElt t = D->torus(Tor{1, 0, 0});
    CHECK(H.iota(H.T(t)) == H.T(t));
    CHECK(H.zeta(H.unit()) == H.unit());
    for (const PElt& w : ball(*D, 4, 2)) {
      auto x = H.T(w);
      CHECK(H.iota(H.iota(x)) == x);
      CHECK(H.zeta(H.zeta(x)) == x);
      CHECK(H.zeta(H.star(w)) == H.star(D->inv(w)));
      CHECK(H.zeta(H.iota(x)) == H.iota(H.zeta(x)));
      for (int o : {0, D->W0().longest()}) {
        auto e = H.orient(o, w);
        CHECK(H.iota(e) == (D->length(w) % 2 ? -H.orient(D->W0().mul(D->W0().longest(), o), w)
                                                : H.orient(D->W0().mul(D->W0().longest(), o), w)));
      }
    }
    std::mt19937_64 rng(2);
    for (int it = 0; it < 60; ++it) {
      auto a = random_elt(H, rng, 3), b = random_elt(H, rng, 3);
      CHECK(H.iota(H.mul(a, b)) == H.mul(H.iota(a), H.iota(b)));
      CHECK(H.zeta(H.mul(a, b)) == H.mul(H.zeta(b), H.zeta(a)));
    }
  }
}

TEST_CASE("central elements z_O") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"PGL2", 3}, {"SL3", 2}}) {
    auto D = Datum::make(name, p);
    ParMask full = D->root_datum().full_mask();
    SpecHecke H(D, full);
    const Levi& G = D->G();
    CHECK(H.z_orbit({D->identity()}, 0) == H.unit());
    std::vector<PElt> reps;
    for (const PElt& w : ball(*D, 4, 2))
      if (w.w == 0) reps.push_back(w);
    for (const PElt& lam : reps) {
      auto O = D->orbit_of(lam);
      if (O.front() != lam) continue;
      auto z = H.z_orbit(O, 0);
      CHECK(z == H.z_orbit(O, D->W0().longest()));
      CHECK(z == H.z_orbit(O, D->W0().simple(0)));
      std::vector<PElt> gens;
      for (int i = 0; i < G.num_simples(); ++i) gens.push_back(G.lift(i));
      for (auto& u : G.omega_gens()) gens.push_back(u);
      for (int j = 0; j < D->lattice_rank(); ++j) {
        Tor e{};
        e[j] = 1;
        gens.push_back(D->torus(e));
      }
      for (const PElt& g : gens) CHECK(H.mul(z, H.T(g)) == H.mul(H.T(g), z));
      int l = D->length(lam);
      CHECK(H.iota(z) == (l % 2 ? -z : z));
    }
  }
}

TEST_CASE("j transport and Levi localization") {
  auto D = Datum::make("SL3", 2);
  const ParMask P = 1;
  SpecHecke HP(D, P), HG(D, 3);
  GenHecke GP(D, P), GG(D, 3);
  PElt lm = D->central_lambda(P, -1);
  // E^P_{o_-}(λ_P^-) = T^P = T^{P*} is central in H_P
  CHECK(HP.orient(0, lm) == HP.T(lm));
  CHECK(HP.star(lm) == HP.T(lm));
  for (int i = 0; i < HP.levi().num_simples(); ++i) {
    auto g = HP.T(HP.levi().lift(i));
    CHECK(HP.mul(g, HP.T(lm)) == HP.mul(HP.T(lm), g));
  }
  for (auto& u : HP.levi().omega_gens()) CHECK(HP.mul(HP.T(u), HP.T(lm)) == HP.mul(HP.T(lm), HP.T(u)));
  // j^{-*}(E^P_-(c)) = E_-(c) and j^{-*}(E^P_{o_-}(λ)) = E_{o_-}(λ) on P-negative elements
  std::mt19937_64 rng(4);
  int tested = 0;
  while (tested < 40) {
    PElt c = random_in_levi(*D, P, rng, 5);
    if (!in_relative_cone(*D, c, P, 3, -1)) {
      CHECK_THROWS_AS(j_transport(HP, HG, HP.T(c), -1, false), std::invalid_argument);
      continue;
    }
    ++tested;
    CHECK(j_transport(HP, HG, HP.e_minus(c), -1, true) == HG.e_minus(c));
    CHECK(j_transport(HP, HG, HP.e_plus(c), -1, false) == HG.e_plus(c));
    CHECK(j_transport(GP, GG, GP.e_minus(c), -1, true) == GG.e_minus(c));
  }
  // homomorphism on P-negative products
  std::vector<PElt> neg;
  while (neg.size() < 12) {
    PElt c = random_in_levi(*D, P, rng, 3);
    if (in_relative_cone(*D, c, P, 3, -1)) neg.push_back(c);
  }
  for (auto& a : neg)
    for (auto& b : neg) {
      auto x = HP.T(a), y = HP.T(b);
      for (bool star : {false, true})
        CHECK(j_transport(HP, HG, HP.mul(x, y), -1, star) ==
              HG.mul(j_transport(HP, HG, x, -1, star), j_transport(HP, HG, y, -1, star)));
    }
  PElt t = D->torus(Tor{});
  CHECK(j_transport(HP, HG, HP.T(t), 1, false) == HG.T(t));
  // SL2, P = B: j^{-*}(E^B(λ_B^-)) = E_{o_-}(λ_B^-)
  auto D2 = Datum::make("SL2", 3);
  GenHecke B(D2, 0), G2(D2, 1);
  PElt lb = D2->central_lambda(0, -1);
  CHECK(specialize(j_transport(B, G2, B.orient(0, lb), -1, true)) == specialize(G2.orient(0, lb)));
}
