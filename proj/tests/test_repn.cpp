#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "prohecke/constructions.hpp"

using namespace prohecke;

namespace {

PElt random_in(const Datum& D, ParMask J, std::mt19937_64& rng, int maxlen) {
  const auto elts = D.W0().parabolic_elements(J);
  for (;;) {
    PElt a;
    a.w = elts[rng() % elts.size()];
    for (int i = 0; i < D.lattice_rank(); ++i) {
      a.x[i] = static_cast<int>(rng() % 5) - 2;
      a.t[i] = static_cast<int>(rng() % D.tmod());
    }
    if (D.levi(J).length(a) <= maxlen) return a;
  }
}

SSData data(ParMask P, std::array<int, kMaxLattice> k, std::vector<int> J, std::vector<uint32_t> vals) {
  SSData d;
  d.P = P;
  d.k = k;
  d.J = std::move(J);
  d.omega_vals = std::move(vals);
  return d;
}

// {α : ⟨Δ_P, α^∨⟩ = 0} ∪ Δ_P read off the Cartan matrix
ParMask orthogonal_closure(const RootDatum& rd, ParMask P) {
  ParMask r = P;
  for (int a = 0; a < rd.rank; ++a) {
    bool orth = true;
    for (int b = 0; b < rd.rank; ++b)
      if ((P >> b & 1) && rd.cartan[a][b] != 0) orth = false;
    if (orth) r |= ParMask(1) << a;
  }
  return r;
}

bool nilpotent(const Mat& m) { return mat_pow(m, std::max(1, m.rows())).is_zero(); }

}  // namespace

TEST_CASE("act: unit, trivial character and right-module contravariance") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"PGL2", 3}, {"SL3", 2}}) {
    auto C = Ctx::make(name, p);
    const Datum& D = C->D();
    const ParMask G = C->full();
    FinModule triv = trivial_module(C, G);
    CHECK(triv.act_T(D.identity()).is_identity());
    std::mt19937_64 rng(1);
    for (int it = 0; it < 40; ++it) {
      PElt w = random_in(D, G, rng, 5);
      // triv(T_w) = q_w at q = 0
      CHECK(triv.act_T(w)(0, 0) == (D.length(w) == 0 ? 1u : 0u));
    }
    const SpecHecke& H = C->H(G);
    for (auto& s : supersingular_inventory(C, G)) {
      CHECK(s.module.act(H.unit()).is_identity());
      for (int it = 0; it < 10; ++it) {
        SpecElt x = H.T(random_in(D, G, rng, 4)) + H.T(random_in(D, G, rng, 4));
        SpecElt y = H.T(random_in(D, G, rng, 4));
        CHECK(s.module.act(H.mul(x, y)) == s.module.act(y) * s.module.act(x));
      }
    }
  }
}

TEST_CASE("relation failures are reported with a witness") {
  auto C = Ctx::make("SL2", 3);
  FinModule triv = trivial_module(C, 1);
  auto gens = triv.gens();
  gens[0] = Mat::scalar(C->F(), 1, 1);  // T_s ↦ 1 breaks T_s^2 = c_s T_s since c_s ↦ -1
  FinModule bad(C, 1, 1, gens);
  CHECK(bad.relation_failure().has_value());
  CHECK_THROWS_AS(bad.validate(), ModuleError);
}

TEST_CASE("supersingular modules of SL2, p = 3") {
  auto C = Ctx::make("SL2", 3);
  // J = ∅, trivial χ, trivial V: Ω trivial, so the module is Ξ itself
  FinModule xi = supersingular_module(C, data(1, {0}, {}, {}));
  CHECK(xi.dim() == 1);
  // Z_κ ∩ W_aff(1) = {±1}; the nontrivial χ has χ(c_s) = χ(1) + χ(-1) = 0, so S_aff,χ = ∅
  SSData odd = data(1, {1}, {}, {});
  CHECK(s_aff_chi(*C, odd).empty());
  FinModule m = supersingular_module(C, odd);
  CHECK(m.dim() == 1);
  CHECK(is_supersingular_data(*C, odd));
  // trivial χ: S_aff,χ = {s0, s1}; J and its complement must both be proper
  CHECK(s_aff_chi(*C, data(1, {0}, {}, {})).size() == 2);
  CHECK_FALSE(is_supersingular_data(*C, data(1, {0}, {}, {})));
  CHECK(is_supersingular_data(*C, data(1, {0}, {0}, {})));
  CHECK(supersingular_inventory(C, 1).size() == 3);
  CHECK_THROWS_AS(supersingular_module(C, data(1, {1}, {0}, {})), ModuleError);  // J ⊄ S_aff,χ
}

TEST_CASE("supersingular modules of PGL2 have dimension [Ω : Ω_Ξ]") {
  auto C = Ctx::make("PGL2", 3);
  for (auto& s : supersingular_inventory(C, 1)) {
    CHECK(xi_orbit_size(*C, s.data) == 2);
    CHECK(s.module.dim() == 2);
  }
}

TEST_CASE("z_O acts nilpotently on supersingular modules") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"PGL2", 3}, {"SL3", 2}}) {
    auto C = Ctx::make(name, p);
    const Datum& D = C->D();
    const SpecHecke& H = C->H(C->full());
    std::vector<std::vector<PElt>> orbs;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        PElt lam = D.lambda(Cow{a, b, 0});
        if (D.lattice_rank() < 2 && b != 0) continue;
        if (D.length(lam) == 0 || D.length(lam) > 4) continue;
        auto O = D.orbit_of(lam);
        if (O.front() == lam) orbs.push_back(O);
      }
    REQUIRE_FALSE(orbs.empty());
    for (auto& s : supersingular_inventory(C, C->full()))
      for (auto& O : orbs) CHECK(nilpotent(s.module.act(H.z_orbit(O, 0))));
  }
}

TEST_CASE("is_supersingular") {
  auto C = Ctx::make("SL2", 3);
  CHECK(is_supersingular(FinModule::zero(C, 1), 4));
  CHECK_FALSE(is_supersingular(trivial_module(C, 1), 4));
  for (auto& s : supersingular_inventory(C, 1)) CHECK(is_supersingular(s.module, 4));
  // SL3: the shortest orbit with nonzero length has ℓ = 4, so a smaller cap proves nothing
  auto C3 = Ctx::make("SL3", 2);
  CHECK(is_supersingular(trivial_module(C3, 3), 3));
  CHECK_FALSE(is_supersingular(trivial_module(C3, 3), 4));
}

TEST_CASE("delta_of_sigma") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"PGL2", 3}, {"GL2", 3}, {"SL3", 2}, {"SL3", 3}}) {
    auto C = Ctx::make(name, p);
    const RootDatum& rd = C->D().root_datum();
    for (ParMask P = 0; P <= C->full(); ++P) CHECK(delta_of_sigma(trivial_module(C, P)) == orthogonal_closure(rd, P));
    for (auto& s : supersingular_inventory(C, C->full())) CHECK(delta_of_sigma(s.module) == C->full());
  }
  auto C = Ctx::make("SL3", 2);
  CHECK(delta_of_sigma(trivial_module(C, 0)) == 3);
  // SL2, p = 3: a character of H_B with ψ nontrivial on α^∨(k^*) has Δ(σ) = ∅
  auto C2 = Ctx::make("SL2", 3);
  CHECK(delta_of_sigma(supersingular_module(C2, data(0, {1}, {}, {1}))) == 0);
}

TEST_CASE("extend") {
  auto C = Ctx::make("SL3", 2);
  for (ParMask P = 0; P <= 3; ++P) {
    FinModule tp = trivial_module(C, P);
    CHECK(extend(tp, P).gens() == tp.gens());
    for (ParMask Q : masks_between(P, delta_of_sigma(tp))) CHECK(extend(tp, Q).gens() == trivial_module(C, Q).gens());
  }
  // e_G(σ)(T*_{n_s}) = 1 for both finite simple reflections
  FinModule e = extend(trivial_module(C, 0), 3);
  const SpecHecke& H = C->H(3);
  for (int i = 0; i < 2; ++i) CHECK(e.act(H.star(C->D().n(C->D().W0().simple(i)))).is_identity());
  CHECK_THROWS_AS(extend(supersingular_module(Ctx::make("SL2", 3), data(0, {1}, {}, {1})), 1), ModuleError);
}

TEST_CASE("induce: dimensions and coordinates") {
  auto C2 = Ctx::make("SL2", 3);
  for (auto& s : supersingular_inventory(C2, 0)) {
    CHECK(Induced(s.module, 1, false).dim() == 2);
    CHECK(Induced(s.module, 1, true).dim() == 2);
  }
  auto C = Ctx::make("SL3", 2);
  const Datum& D = C->D();
  for (ParMask P = 0; P <= 3; ++P)
    for (auto& s : supersingular_inventory(C, P)) {
      const int coset = 6 / static_cast<int>(D.W0().parabolic_elements(P).size());
      Induced I(s.module, 3, false);
      CHECK(I.module().dim() == coset * s.module.dim());
      if (P == 3) CHECK(I.module().gens() == s.module.gens());
    }
  // evaluate_hom: T_{n_w} reads off coordinates; T_{n_w} j^{-*}(h) applies σ(h)
  FinModule sigma = trivial_module(C, 1);
  Induced I(sigma, 3, false);
  const SpecHecke& H = C->H(3);
  const SpecHecke& HP = C->H(1);
  const int d = sigma.dim();
  for (size_t k = 0; k < I.reps().size(); ++k) {
    const int w = I.reps()[k];
    Mat sel(C->F(), d, I.dim());
    sel(0, int(k)) = 1;
    CHECK(I.eval_T(D.n(w)) == sel);
    PElt lam = D.central_lambda(1, -1);
    SpecElt h = HP.star(lam);
    CHECK(I.eval(H.mul(H.T(D.n(w)), j_transport(HP, H, h, -1, true))) == sigma.act(h) * sel);
  }
}

TEST_CASE("evaluate_hom agrees with the generator action on long words") {
  std::mt19937_64 rng(9);
  int cases = 0;
  for (auto [name, p] : {std::pair{"SL2", 3}, {"SL3", 2}}) {
    auto C = Ctx::make(name, p);
    const Datum& D = C->D();
    const SpecHecke& H = C->H(C->full());
    for (bool prime : {false, true}) {
      Induced I(trivial_module(C, 0), C->full(), prime);
      for (int it = 0; it < 25; ++it, ++cases) {
        SpecElt Y = H.T(random_in(D, C->full(), rng, 7));
        Mat A = I.module().act(Y);
        for (size_t k = 0; k < I.reps().size(); ++k)
          CHECK(A.block(int(k), 0, 1, I.dim()) == I.eval(H.mul(Y, H.T(D.n(I.reps()[k])))));
      }
    }
  }
  CHECK(cases == 100);
}

TEST_CASE("inclusion_map") {
  auto C = Ctx::make("SL3", 2);
  FinModule sigma = trivial_module(C, 0);
  Induced IB(sigma, 3, false);
  CHECK(inclusion_map(IB, IB).is_identity());
  Induced IP(extend(sigma, 1), 3, false);
  Mat M = inclusion_map(IP, IB);
  CHECK(M.rows() == 6);
  CHECK(M.cols() == 3);
  CHECK(rank(M) == 3);
  CHECK(is_stable(IB.module(), M));
  CHECK_THROWS_AS(inclusion_map(IB, IP), ModuleError);
}

TEST_CASE("steinberg") {
  auto C2 = Ctx::make("SL2", 3);
  FinModule t2 = trivial_module(C2, 0);
  CHECK(steinberg(t2, 0, 1).dim() == 1);
  CHECK(steinberg(t2, 1, 1).gens() == extend(t2, 1).gens());
  auto C = Ctx::make("SL3", 2);
  FinModule t = trivial_module(C, 0);
  int total = 0;
  for (ParMask Q = 0; Q <= 3; ++Q) total += steinberg(t, Q, 3).dim();
  CHECK(total == 6);
  CHECK_THROWS_AS(steinberg(supersingular_module(C2, data(0, {1}, {}, {1})), 0, 1), ModuleError);
}

TEST_CASE("twist_iota") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"PGL2", 3}, {"SL3", 2}}) {
    auto C = Ctx::make(name, p);
    const Datum& D = C->D();
    FinModule triv = trivial_module(C, C->full());
    FinModule ti = twist_iota(triv);
    CHECK(twist_iota(ti).gens() == triv.gens());
    // triv(T*_w) = 1, so triv^ι(T_w) = (-1)^{ℓ(w)}
    const SpecHecke& H = C->H(C->full());
    std::mt19937_64 rng(2);
    for (int it = 0; it < 20; ++it) {
      PElt w = random_in(D, C->full(), rng, 4);
      uint32_t expect = D.length(w) % 2 ? C->F()->neg(1) : 1;
      CHECK(ti.act(H.T(w))(0, 0) == expect);
    }
  }
  // Q = P case of the twist of Steinberg: St_P(σ)^ι ≅ e_G(σ')
  auto C = Ctx::make("SL3", 2);
  FinModule sigma = trivial_module(C, 0);
  FinModule sp = twist_sign(twist_iota(sigma));
  CHECK(is_isomorphic(twist_iota(steinberg(sigma, 0, 3)), extend(sp, 3)).iso);
}

TEST_CASE("twist_sign") {
  for (auto [name, p] : {std::pair{"SL2", 3}, {"GL2", 3}, {"SL3", 3}}) {
    auto C = Ctx::make(name, p);
    for (ParMask P = 0; P <= C->full(); ++P)
      for (auto& s : supersingular_inventory(C, P)) {
        if (P == C->full()) CHECK(twist_sign(s.module).gens() == s.module.gens());
        CHECK(twist_sign(twist_sign(s.module)).gens() == s.module.gens());
        CHECK(twist_sign(twist_iota(s.module)).gens() == twist_iota(twist_sign(s.module)).gens());
      }
  }
}

TEST_CASE("twist_by_n") {
  auto C2 = Ctx::make("SL2", 3);
  for (auto& s : supersingular_inventory(C2, 1)) CHECK(twist_by_n(s.module).gens() == s.module.gens());
  CHECK(twist_by_n(trivial_module(C2, 0)).tag() == 0);
  auto C = Ctx::make("SL3", 2);
  CHECK(twist_by_n(trivial_module(C, 1)).tag() == 2);
  CHECK(twist_by_n(trivial_module(C, 2)).tag() == 1);
}

TEST_CASE("dual") {
  auto C = Ctx::make("SL2", 3);
  FinModule triv = trivial_module(C, 1);
  CHECK(dual(triv).gens() == triv.gens());
  for (ParMask P = 0; P <= 1; ++P)
    for (auto& s : supersingular_inventory(C, P)) {
      FinModule d = dual(s.module);
      CHECK(d.dim() == s.module.dim());
      CHECK(is_isomorphic(dual(d), s.module).iso);
      CHECK(is_isomorphic(d, supersingular_module(C, dual_data(*C, s.data))).iso);
    }
}

TEST_CASE("intertwiners and Schur") {
  auto C = Ctx::make("SL2", 3);
  auto inv = supersingular_inventory(C, 0);
  REQUIRE(inv.size() == 4);
  for (size_t a = 0; a < inv.size(); ++a) {
    auto self = intertwiners(inv[a].module, inv[a].module);
    REQUIRE(self.size() == 1);
    CHECK(is_intertwiner(inv[a].module, inv[a].module, Mat::identity(C->F(), 1)));
    for (size_t b = 0; b < inv.size(); ++b)
      if (a != b) CHECK(intertwiners(inv[a].module, inv[b].module).empty());
  }
  auto C3 = Ctx::make("SL3", 2);
  for (auto& s : supersingular_inventory(C3, 1)) {
    SimplicityResult r = is_simple(s.module);
    CHECK(r.simple);
    if (r.absolutely) CHECK(intertwiners(s.module, s.module).size() == 1);
  }
}

TEST_CASE("simple_module") {
  auto C2 = Ctx::make("SL2", 3);
  for (auto& s : supersingular_inventory(C2, 1)) CHECK(simple_module(s.module, 1).gens() == s.module.gens());
  FinModule st = simple_module(trivial_module(C2, 0), 0);
  CHECK(st.dim() == 1);
  CHECK(is_simple(st).simple);
  CHECK_FALSE(is_isomorphic(st, trivial_module(C2, 1)).iso);
  auto C = Ctx::make("SL3", 2);
  FinModule t = trivial_module(C, 0);
  int total = 0;
  for (ParMask Q = 0; Q <= 3; ++Q) {
    FinModule m = simple_module(t, Q);
    CHECK(is_simple(m).simple);
    total += m.dim();
  }
  CHECK(total == 6);
}

TEST_CASE("phi_map") {
  auto C2 = Ctx::make("SL2", 3);
  for (auto& s : supersingular_inventory(C2, 1)) {
    Induced I(s.module, 1, false), Ip(s.module, 1, true);
    CHECK(phi_map(I, Ip).is_identity());
  }
  // regular characters: I_B(σ) simple and Φ invertible
  for (auto& s : supersingular_inventory(C2, 0)) {
    if (delta_of_sigma(s.module) != 0) continue;
    Induced I(s.module, 1, false), Ip(s.module, 1, true);
    CHECK(is_simple(I.module()).simple);
    CHECK(rank(phi_map(I, Ip)) == 2);
  }
  auto C = Ctx::make("SL3", 2);
  FinModule t = trivial_module(C, 0);
  for (ParMask Q = 0; Q <= 3; ++Q) {
    Induced IQ(extend(t, Q), 3, false), IpQ(extend(t, Q), 3, true);
    Mat F = phi_map(IQ, IpQ);
    CHECK_FALSE(F.is_zero());
    Mat U = sum_of_larger(t, Q, 3, IQ);
    Mat K = nullspace(F);
    if (Q == 3) CHECK(K.cols() == 0);
    else CHECK(same_space(U, K));
  }
}

TEST_CASE("iprime_filtration") {
  auto C2 = Ctx::make("SL2", 3);
  for (auto& s : supersingular_inventory(C2, 1)) {
    auto F = iprime_filtration(Induced(s.module, 1, true));
    REQUIRE(F.size() == 1);
    CHECK(F[0].first == 1);
    CHECK(F[0].second.is_identity());
  }
  // SL2, P = B, trivial σ: the sub of I'_B is the Steinberg module, opposite to I_B
  FinModule t = trivial_module(C2, 0);
  Induced Ip(t, 1, true), I(t, 1, false);
  auto F = iprime_filtration(Ip);
  REQUIRE(F.size() == 2);
  CHECK(F[0].first == 0);
  CHECK(F[0].second.cols() == 1);
  CHECK(F[1].second.cols() == 2);
  FinModule bottom = submodule(Ip.module(), F[0].second);
  CHECK(is_isomorphic(bottom, simple_module(t, 0)).iso);
  Mat sub_I = inclusion_map(Induced(extend(t, 1), 1, false), I);
  CHECK(is_isomorphic(submodule(I.module(), sub_I), trivial_module(C2, 1)).iso);
  // dimensions add up in SL3, including P ⊊ P(σ) ⊊ G
  for (auto [name, p] : {std::pair{"SL3", 2}, {"SL3", 3}}) {
    auto C = Ctx::make(name, p);
    for (ParMask P = 0; P <= 3; ++P)
      for (auto& s : supersingular_inventory(C, P)) {
        Induced J(s.module, 3, true);
        auto G = iprime_filtration(J);
        CHECK(G.size() == masks_between(P, delta_of_sigma(s.module)).size());
        int total = 0;
        for (auto& [Q, U] : G) total += simple_module(s.module, Q).dim();
        CHECK(total == J.dim());
      }
  }
}

TEST_CASE("serialization is canonical") {
  auto C = Ctx::make("SL2", 3);
  CHECK(trivial_module(C, 1).serialize() == "tag 1 dim 1\ng0 [0]\ng1 [0]\ng2 [1]\n");
  auto P = Ctx::make("PGL2", 3);
  auto inv = supersingular_inventory(P, 1);
  REQUIRE(inv.size() == 4);
  CHECK(inv.back().key == "G psi=(1) J={s1} V=(1)");
  CHECK(inv.back().module.serialize() == "tag 1 dim 2\ng0 [2 0] [0 0]\ng1 [0 0] [0 2]\ng2 [2 0] [0 2]\ng3 [0 1] [1 0]\n");
}
