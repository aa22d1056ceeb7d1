#include "prohecke/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <random>
#include <sstream>

#include "json.hpp"

namespace prohecke {

namespace {

// ------------------------------------------------------------------ recording

struct Outcome {
  std::string status = "pass", witness, detail;
};
Outcome pass(std::string detail = {}) { return Outcome{"pass", {}, std::move(detail)}; }
Outcome fail(std::string witness, std::string detail = {}) {
  return Outcome{"fail", std::move(witness), std::move(detail)};
}
Outcome flagged(std::string witness, std::string detail = {}) {
  return Outcome{"flagged", std::move(witness), std::move(detail)};
}

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}
  // Any exception thrown by the body is a failure with its message as witness.
  void check(const std::string& instance, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = fail(e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out_.push_back(CheckResult{suite_, instance, o.status, o.witness, o.detail, ms});
  }
  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::string suite_;
  std::vector<CheckResult> out_;
};

// Collects the first failure of a family of identities.
struct FirstFailure {
  int checked = 0;
  std::string witness;
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (!ok && witness.empty()) witness = what();
  }
  Outcome result() const {
    std::string d = std::to_string(checked) + " identities";
    return witness.empty() ? pass(d) : fail(witness, d);
  }
};

std::string num(long long v) { return std::to_string(v); }

// ------------------------------------------------------------------ element samplers

PElt random_in(const Datum& D, ParMask J, std::mt19937_64& rng, int maxlen, int box) {
  const Levi& L = D.levi(J);
  const auto elts = D.W0().parabolic_elements(J);
  for (;;) {
    PElt a;
    a.w = elts[rng() % elts.size()];
    for (int i = 0; i < D.lattice_rank(); ++i) {
      a.x[i] = static_cast<int>(rng() % (2 * box + 1)) - box;
      a.t[i] = static_cast<int>(rng() % D.tmod());
    }
    if (L.length(a) <= maxlen) return a;
  }
}

// Elements n_w t_x of W(1) with ℓ ≤ maxlen and |x_i| ≤ box, trivial torus part.
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

// Orbit representatives λ ∈ Λ(1) with 0 < ℓ(λ) ≤ cap.
std::vector<std::vector<PElt>> orbits(const Datum& D, int cap) {
  std::vector<std::vector<PElt>> out;
  for (const PElt& w : ball(D, cap, cap)) {
    if (w.w != 0 || D.length(w) == 0) continue;
    auto O = D.orbit_of(w);
    if (O.front() == w) out.push_back(std::move(O));
  }
  return out;
}

// ------------------------------------------------------------------ module helpers

Mat subquotient(const FinModule& M, const Mat& U, const Mat& S, FinModule* out) {
  FinModule sub = submodule(M, U);
  if (S.cols() == 0) {
    *out = sub;
    return U;
  }
  auto Sc = solve(U, S);
  if (!Sc) throw ModuleError("subquotient", "lower term not contained in the upper term");
  *out = quotient(sub, *Sc);
  return U;
}

Outcome iso_outcome(const FinModule& a, const FinModule& b, uint64_t seed, int dim_cap) {
  if (a.dim() != b.dim()) return fail("dimensions differ: " + num(a.dim()) + " vs " + num(b.dim()));
  if (a.dim() > dim_cap) return flagged("dimension above cap", "dim=" + num(a.dim()));
  IsoResult r = is_isomorphic(a, b, seed);
  std::string d = "dim=" + num(a.dim()) + " hom_dim=" + num(r.hom_dim);
  if (r.iso) return pass(d);
  if (!r.conclusive) return flagged("no invertible intertwiner found over F_q; hom space > 1", d);
  return fail(r.hom_dim == 0 ? "Hom space is zero" : "no invertible intertwiner", d);
}

Outcome simple_outcome(const FinModule& m, uint64_t seed, int dim_cap) {
  if (m.dim() > dim_cap) return flagged("dimension above cap", "dim=" + num(m.dim()));
  SimplicityResult r = is_simple(m, seed);
  std::string d = "dim=" + num(m.dim()) + (r.absolutely ? " absolutely" : "");
  if (r.simple && r.conclusive) return pass(d);
  if (r.simple) return flagged("scan incomplete at this dimension", d);
  return fail("proper submodule of dimension " + num(r.witness.cols()), d);
}

// The inventory shared by the representation suites: simple supersingular
// π_{χ,J,V} over every Levi, in a fixed order.
struct Inventory {
  std::vector<SSInstance> items;
  std::vector<TripleInstance> triples;
};

Inventory build_inventory(const CtxPtr& C, int cap) {
  Inventory inv;
  for (ParMask P = 0; P <= C->full(); ++P)
    for (auto& s : supersingular_inventory(C, P, cap)) inv.items.push_back(std::move(s));
  for (auto& s : inv.items) {
    const ParMask Ps = delta_of_sigma(s.module);
    for (ParMask Q : masks_between(s.data.P, Ps))
      inv.triples.push_back(TripleInstance{s, Ps, Q, s.key + " Q=" + mask_name(C->D(), Q)});
  }
  return inv;
}

// π_Q/Σ_{Q1⊊Q} π_{Q1} from a filtration
FinModule filtration_step(const FinModule& M, const std::vector<std::pair<ParMask, Mat>>& F, ParMask Q) {
  Mat U, S(M.F(), M.dim(), 0);
  for (auto& [Q1, U1] : F) {
    if (Q1 == Q) U = U1;
    else if ((Q1 & Q) == Q1) S = hstack(S, U1);
  }
  FinModule out;
  subquotient(M, U, S.cols() ? colspace(S) : S, &out);
  return out;
}

struct Env {
  CtxPtr C;
  const SuiteConfig* cfg;
  const Inventory* inv;
  std::mt19937_64 rng;
  uint64_t next_seed() { return rng(); }
};

// ------------------------------------------------------------------ algebra-relations

void suite_algebra(Env& E, Recorder& rec) {
  const Datum& D = E.C->D();
  const ParMask full = E.C->full();
  const SpecHecke& H = E.C->H(full);
  GenHecke Hg(E.C->datum_ptr(), full);
  const Levi& G = D.G();

  for (int i = 0; i < G.num_simples(); ++i)
    rec.check("quadratic s" + num(i), [&] {
      FirstFailure ff;
      PElt s = G.lift(i);
      ff.expect(H.mul(H.T(s), H.T(s)) == H.mul(H.c_of(s), H.T(s)), [&] { return "T_s^2 != c_s T_s at q = 0"; });
      auto lhs = Hg.mul(Hg.T(s), Hg.T(s));
      auto rhs = Hg.T(D.mul(s, s), Hg.q_of(s)) + Hg.mul(Hg.c_of(s), Hg.T(s));
      ff.expect(lhs == rhs, [&] { return "T_s^2 != q_s T_{s^2} + c_s T_s: " + Hg.str(lhs); });
      return ff.result();
    });

  for (int a = 0; a < G.num_simples(); ++a)
    for (int b = a + 1; b < G.num_simples(); ++b) {
      const int m = G.aff().coxeter_m(a, b);
      if (m == 0) continue;
      rec.check("braid s" + num(a) + ",s" + num(b), [&] {
        auto lhs = H.unit(), rhs = H.unit();
        PElt pl = D.identity(), pr = D.identity();
        for (int k = 0; k < m; ++k) {
          int i = k % 2 ? b : a, j = k % 2 ? a : b;
          lhs = H.mul(lhs, H.T(G.lift(i)));
          rhs = H.mul(rhs, H.T(G.lift(j)));
          pl = D.mul(pl, G.lift(i));
          pr = D.mul(pr, G.lift(j));
        }
        if (pl.image() != pr.image()) return fail("braid words have different images in W");
        if (lhs != H.T(pl) || rhs != H.T(pr)) return fail("braid product is not a single basis element");
        // the lifts may differ by Z_κ; T_{pl} and T_{pr} then differ by T_t
        return pass("m=" + num(m));
      });
    }

  rec.check("Z_kappa group relations", [&] {
    FirstFailure ff;
    const int r = D.lattice_rank(), tm = D.tmod();
    for (int j = 0; j < r; ++j) {
      Tor e{};
      e[j] = 1;
      auto x = H.unit();
      for (int k = 0; k < tm; ++k) x = H.mul(x, H.T(D.torus(e)));
      ff.expect(x == H.unit(), [&] { return "T_{e_" + num(j) + "}^{q-1} != 1"; });
      for (int k = 0; k < r; ++k) {
        Tor f{};
        f[k] = 1;
        ff.expect(H.mul(H.T(D.torus(e)), H.T(D.torus(f))) == H.T(D.torus(D.tor_add(e, f))),
                  [&] { return "T_t T_t' != T_{tt'}"; });
      }
      for (int i = 0; i < G.num_simples(); ++i) {
        PElt s = G.lift(i), t = D.torus(e);
        ff.expect(H.mul(H.T(t), H.T(s)) == H.T(D.mul(t, s)), [&] { return "T_t T_s != T_{ts}"; });
        ff.expect(H.mul(H.T(s), H.T(t)) == H.T(D.mul(s, t)), [&] { return "T_s T_t != T_{st}"; });
      }
    }
    return ff.result();
  });

  for (size_t k = 0; k < G.omega_gens().size(); ++k)
    rec.check("Omega u" + num(static_cast<long long>(k)), [&] {
      FirstFailure ff;
      const PElt& u = G.omega_gens()[k];
      PElt ui = D.inv(u);
      ff.expect(H.mul(H.T(u), H.T(ui)) == H.unit(), [&] { return "T_u T_{u^{-1}} != 1"; });
      for (int i = 0; i < G.num_simples(); ++i) {
        PElt c = D.conj(u, G.lift(i));
        ff.expect(G.simple_index_of(c) >= 0, [&] { return "u s u^{-1} is not a simple lift"; });
        ff.expect(H.mul(H.mul(H.T(u), H.T(G.lift(i))), H.T(ui)) == H.T(c), [&] { return "T_u T_s T_u^{-1} != T_{usu^{-1}}"; });
      }
      std::mt19937_64 rng(E.next_seed());
      for (int it = 0; it < 50; ++it) {
        PElt w = random_in(D, full, rng, 6, 3);
        ff.expect(H.mul(H.T(u), H.T(w)) == H.T(D.mul(u, w)), [&] { return "T_u T_w != T_{uw} at w = " + D.str(w); });
        ff.expect(H.mul(H.T(w), H.T(u)) == H.T(D.mul(w, u)), [&] { return "T_w T_u != T_{wu} at w = " + D.str(w); });
      }
      return ff.result();
    });

  for (bool generic : {false, true})
    rec.check(std::string("associativity ") + (generic ? "generic" : "specialized") + " 1000 basis triples l<=6", [&] {
      FirstFailure ff;
      std::mt19937_64 rng(E.next_seed());
      for (int it = 0; it < 1000; ++it) {
        PElt a = random_in(D, full, rng, 6, 3), b = random_in(D, full, rng, 6, 3), c = random_in(D, full, rng, 6, 3);
        auto what = [&] { return "(T_a T_b) T_c != T_a (T_b T_c) at " + D.str(a) + ", " + D.str(b) + ", " + D.str(c); };
        if (generic) {
          auto abc = Hg.mul(Hg.mul(Hg.T(a), Hg.T(b)), Hg.T(c));
          ff.expect(abc == Hg.mul(Hg.T(a), Hg.mul(Hg.T(b), Hg.T(c))), what);
          ff.expect(specialize(abc) == H.mul(H.mul(H.T(a), H.T(b)), H.T(c)),
                    [&] { return "specialization is not multiplicative at " + D.str(a); });
        } else {
          ff.expect(H.mul(H.mul(H.T(a), H.T(b)), H.T(c)) == H.mul(H.T(a), H.mul(H.T(b), H.T(c))), what);
        }
      }
      return ff.result();
    });

  for (auto& s : E.inv->items)
    rec.check("module relations " + s.key, [&] {
      auto f = s.module.relation_failure();
      return f ? fail(*f) : pass("dim=" + num(s.module.dim()));
    });
}

// ------------------------------------------------------------------ bases

void suite_bases(Env& E, Recorder& rec) {
  const Datum& D = E.C->D();
  const ParMask full = E.C->full();
  const SpecHecke& H = E.C->H(full);
  GenHecke Hg(E.C->datum_ptr(), full);
  const int L = E.cfg->caps.length;
  const auto elts = ball(D, L, L);
  const FiniteWeyl& W = D.W0();

  auto unitri = [&](const SpecElt& x, const PElt& w, FirstFailure& ff, const std::string& name) {
    ff.expect(x.coeff(w, H.coeffs().zero()) == H.coeffs().one(), [&] { return name + " leading coefficient != 1 at " + D.str(w); });
    for (auto& [v, c] : x.terms)
      if (v != w) ff.expect(D.bruhat_leq(v, w), [&] { return name + " term " + D.str(v) + " not below " + D.str(w); });
  };

  rec.check("T* unitriangular l<=" + num(L), [&] {
    FirstFailure ff;
    for (const PElt& w : elts) unitri(H.star(w), w, ff, "T*");
    Outcome o = ff.result();
    o.detail += ", " + num(static_cast<long long>(elts.size())) + " elements";
    return o;
  });

  for (int o = 0; o < W.size(); ++o)
    rec.check("E_o unitriangular o=" + W.word_str(o) + " l<=" + num(L), [&] {
      FirstFailure ff;
      for (const PElt& w : elts) unitri(H.orient(o, w), w, ff, "E_o");
      return ff.result();
    });

  rec.check("product formula generic 500 pairs", [&] {
    FirstFailure ff;
    std::mt19937_64 rng(E.next_seed());
    for (int it = 0; it < 500; ++it) {
      PElt w1 = random_in(D, full, rng, 3, 2), w2 = random_in(D, full, rng, 3, 2);
      int o = static_cast<int>(rng() % W.size());
      PElt w12 = D.mul(w1, w2);
      auto lhs = Hg.mul(Hg.orient(o, w1), Hg.orient(Hg.o_act(o, w1), w2));
      QExps e = Hg.half_exps(w1), b = Hg.half_exps(w2), c = Hg.half_exps(w12);
      for (int k = 0; k < kMaxOrbitVars; ++k) e[k] += b[k] - c[k];
      ff.expect(lhs == Hg.orient(o, w12).scaled(Hg.coeffs().qhalf(e)),
                [&] { return "E_o(w1)E_{o.w1}(w2) != q-factor E_o(w1w2) at " + D.str(w1) + ", " + D.str(w2); });
    }
    return ff.result();
  });

  rec.check("E_- polynomiality gate l<=" + num(L), [&] {
    FirstFailure ff;
    for (const PElt& w : elts) {
      auto def = Hg.e_minus_def(w);
      SpecElt s;
      try {
        s = specialize(def);
      } catch (const std::domain_error&) {
        ff.expect(false, [&] { return "E_-(" + D.str(w) + ") has a negative q-power"; });
        continue;
      }
      ff.expect(s == H.e_minus(w), [&] { return "E_- normalization differs from the walk at " + D.str(w); });
    }
    return ff.result();
  });
}

// ------------------------------------------------------------------ involutions

void suite_involutions(Env& E, Recorder& rec) {
  const Datum& D = E.C->D();
  const ParMask full = E.C->full();
  const SpecHecke& H = E.C->H(full);
  const int L = E.cfg->caps.length;
  const auto elts = ball(D, L, L);

  rec.check("iota and zeta are involutions l<=" + num(L), [&] {
    FirstFailure ff;
    for (const PElt& w : elts) {
      auto x = H.T(w);
      ff.expect(H.iota(H.iota(x)) == x, [&] { return "iota^2 != id at " + D.str(w); });
      ff.expect(H.zeta(H.zeta(x)) == x, [&] { return "zeta^2 != id at " + D.str(w); });
    }
    return ff.result();
  });

  rec.check("iota multiplicative, zeta anti-multiplicative 200 pairs", [&] {
    FirstFailure ff;
    std::mt19937_64 rng(E.next_seed());
    for (int it = 0; it < 200; ++it) {
      PElt a = random_in(D, full, rng, 4, 2), b = random_in(D, full, rng, 4, 2);
      auto x = H.T(a) + H.T(b, H.coeffs().of(2));
      auto y = H.T(random_in(D, full, rng, 4, 2));
      ff.expect(H.iota(H.mul(x, y)) == H.mul(H.iota(x), H.iota(y)), [&] { return "iota(xy) != iota(x)iota(y) at " + D.str(a); });
      ff.expect(H.zeta(H.mul(x, y)) == H.mul(H.zeta(y), H.zeta(x)), [&] { return "zeta(xy) != zeta(y)zeta(x) at " + D.str(a); });
    }
    return ff.result();
  });

  rec.check("zeta(T*_w) = T*_{w^-1} l<=" + num(L - 1), [&] {
    FirstFailure ff;
    for (const PElt& w : elts)
      if (D.length(w) <= L - 1)
        ff.expect(H.zeta(H.star(w)) == H.star(D.inv(w)), [&] { return "zeta(T*_w) != T*_{w^-1} at " + D.str(w); });
    return ff.result();
  });

  rec.check("iota(z_O) = (-1)^l(O) z_O l(O)<=" + num(E.cfg->caps.orbit), [&] {
    FirstFailure ff;
    for (auto& O : orbits(D, E.cfg->caps.orbit)) {
      auto z = H.z_orbit(O, 0);
      int l = D.length(O.front());
      ff.expect(H.iota(z) == (l % 2 ? -z : z), [&] { return "iota(z_O) sign wrong at O of " + D.str(O.front()); });
    }
    return ff.result();
  });
}

// ------------------------------------------------------------------ Möbius

void suite_moebius(Env& E, Recorder& rec) {
  const FiniteWeyl& W = E.C->D().W0();
  const ParMask full = E.C->full();
  const Datum& D = E.C->D();
  for (ParMask J = 0; J <= full; ++J)
    rec.check("deodhar vs inversion J=" + mask_name(D, J), [&] {
      FirstFailure ff;
      auto reps = W.min_coset_reps(J);
      for (int v : reps)
        for (int w : reps)
          if (W.bruhat_leq(v, w)) {
            int a = W.mobius_deodhar(v, w, J), b = W.mobius_bruteforce(v, w, J);
            ff.expect(a == b, [&] {
              return "mu(" + W.word_str(v) + "," + W.word_str(w) + ") closed form " + num(a) + " vs " + num(b);
            });
          }
      return ff.result();
    });
  for (ParMask Q = 0; Q <= full; ++Q)
    rec.check("mu^Q(w, w_G w_Q) Q=" + mask_name(D, Q), [&] {
      FirstFailure ff;
      const int wQ = W.longest(Q), wc = W.longest(full & ~Q);
      const int top = W.mul(W.longest(), wQ);
      const int special = W.mul(W.mul(W.longest(), wc), wQ);
      for (int w : W.min_coset_reps(Q)) {
        if (W.delta_w(W.mul(w, wQ)) != (full & ~Q)) continue;
        int expect = w == special ? (W.length(wc) % 2 ? -1 : 1) : 0;
        int got = W.mobius_bruteforce(w, top, Q);
        ff.expect(got == expect, [&] { return "mu^Q(" + W.word_str(w) + ") = " + num(got) + ", expected " + num(expect); });
      }
      return ff.result();
    });
}

// ------------------------------------------------------------------ induction

// (φE_{o_-}(λ))(T_{n_w}) = φ(T_{n_w})σ(E^P(n_w^{-1}·λ)) when n_w^{-1}·λ is P-negative, else 0.
FirstFailure a_module_formula(const Induced& I, const FinModule& sigma, std::mt19937_64& rng, int samples) {
  const CtxPtr& C = sigma.ctx();
  const Datum& D = C->D();
  const ParMask full = C->full();
  const SpecHecke& H = C->H(full);
  const SpecHecke& HP = C->H(sigma.tag());
  const int d = sigma.dim();
  FirstFailure ff;
  for (int it = 0; it < samples; ++it) {
    Cow x{};
    Tor t{};
    for (int i = 0; i < D.lattice_rank(); ++i) {
      x[i] = static_cast<int>(rng() % 5) - 2;
      t[i] = static_cast<int>(rng() % D.tmod());
    }
    PElt lam = D.lambda(x, t);
    Mat A = I.module().act(H.orient(H.o_minus(), lam));
    for (size_t k = 0; k < I.reps().size(); ++k) {
      const int w = I.reps()[k];
      PElt mu = D.mul(D.mul(D.inv(D.n(w)), lam), D.n(w));
      Mat got = A.block(int(k) * d, 0, d, I.dim());
      Mat sel(C->F(), d, I.dim());
      for (int i = 0; i < d; ++i) sel(i, int(k) * d + i) = 1;
      Mat expect = D.is_P_sign(mu, sigma.tag(), -1) ? sigma.act(HP.orient(HP.o_minus(), mu)) * sel
                                                       : Mat(C->F(), d, I.dim());
      ff.expect(got == expect, [&] { return "A-module formula fails at lambda = " + D.str(lam) + ", w = " + D.W0().word_str(w); });
    }
  }
  return ff;
}


// φ ↦ φ(Y·T_{n_{v_k}}) computed directly agrees with the generator action on Y
FirstFailure evaluation_consistency(const Induced& I, std::mt19937_64& rng, int samples) {
  const CtxPtr& C = I.sigma().ctx();
  const Datum& D = C->D();
  const SpecHecke& H = C->H(I.Q0());
  const int d = I.sigma().dim();
  FirstFailure ff;
  for (int it = 0; it < samples; ++it) {
    PElt a = random_in(D, I.Q0(), rng, 4, 2), b = random_in(D, I.Q0(), rng, 4, 2);
    SpecElt Y = H.T(a) + H.T(b, H.coeffs().of(1 + rng() % (D.q() - 1)));
    Mat A = I.module().act(Y);
    for (size_t k = 0; k < I.reps().size(); ++k)
      ff.expect(A.block(int(k) * d, 0, d, I.dim()) == I.eval(H.mul(Y, H.T(D.n(I.reps()[k])))),
                [&] { return "act(Y) disagrees with evaluate_hom at " + D.str(a); });
  }
  return ff;
}

void suite_induction(Env& E, Recorder& rec) {
  const CtxPtr& C = E.C;
  const FiniteWeyl& W = C->D().W0();
  const ParMask G = C->full();
  for (auto& s : E.inv->items) {
    const FinModule& sigma = s.module;
    const ParMask P = sigma.tag();
    const int expect = static_cast<int>(W.min_coset_reps(P).size()) * sigma.dim();
    rec.check("dimensions " + s.key, [&] {
      Induced I(sigma, G, false), Ip(sigma, G, true);
      std::string d = "dim I=" + num(I.module().dim()) + " dim I'=" + num(Ip.module().dim()) + " expected " + num(expect);
      if (I.module().dim() != expect || Ip.module().dim() != expect) return fail("dimension mismatch", d);
      return pass(d);
    });
    rec.check("A-module formula I_P " + s.key, [&] {
      std::mt19937_64 rng(E.next_seed());
      return a_module_formula(Induced(sigma, G, false), sigma, rng, 30).result();
    });
    const ParMask Ps = delta_of_sigma(sigma);
    for (ParMask Q : masks_between(P, Ps)) {
      if (Q == P) continue;
      rec.check("A-module formula I_Q(e_Q) " + s.key + " Q=" + mask_name(C->D(), Q), [&] {
        std::mt19937_64 rng(E.next_seed());
        return a_module_formula(Induced(extend(sigma, Q), G, false), sigma, rng, 30).result();
      });
    }
    rec.check("evaluate_hom consistency " + s.key, [&] {
      std::mt19937_64 rng(E.next_seed());
      FirstFailure a = evaluation_consistency(Induced(sigma, G, false), rng, 10);
      FirstFailure b = evaluation_consistency(Induced(sigma, G, true), rng, 10);
      if (!a.witness.empty()) return fail("I: " + a.witness);
      if (!b.witness.empty()) return fail("I': " + b.witness);
      return pass(num(a.checked + b.checked) + " identities");
    });
    rec.check("Phi " + s.key, [&] {
      Induced I(sigma, G, false), Ip(sigma, G, true);
      Mat F = phi_map(I, Ip);
      const int r = rank(F);
      std::string d = "rank=" + num(r) + " of " + num(I.dim());
      if (r == 0) return fail("Phi is zero", d);
      if (I.dim() <= E.cfg->caps.dim) {
        SimplicityResult sr = is_simple(I.module(), E.next_seed());
        if (sr.simple && r != I.dim()) return fail("I_P(sigma) simple but Phi not invertible", d);
      }
      return pass(d);
    });
  }
}

// ------------------------------------------------------------------ steinberg

void suite_steinberg(Env& E, Recorder& rec) {
  const CtxPtr& C = E.C;
  const Datum& D = C->D();
  const FiniteWeyl& W = D.W0();
  for (auto& s : E.inv->items) {
    const FinModule& sigma = s.module;
    const ParMask P = sigma.tag(), Ps = delta_of_sigma(sigma);
    rec.check("dimension sum " + s.key, [&] {
      int total = 0;
      std::string d;
      for (ParMask Q : masks_between(P, Ps)) {
        int dq = steinberg(sigma, Q, Ps).dim();
        total += dq;
        d += (d.empty() ? "" : " ") + mask_name(D, Q) + ":" + num(dq);
      }
      int expect = 0;
      for (int v : W.min_coset_reps(P)) expect += W.in_parabolic(v, Ps);
      expect *= sigma.dim();
      d += " total=" + num(total) + " expected " + num(expect);
      return total == expect ? pass(d) : fail("sum of Steinberg dimensions differs from dim I_P", d);
    });
    rec.check("top term " + s.key, [&] {
      return iso_outcome(steinberg(sigma, Ps, Ps), extend(sigma, Ps), E.next_seed(), E.cfg->caps.dim);
    });
  }
  for (auto& t : E.inv->triples)
    rec.check("simple " + t.key, [&] {
      return simple_outcome(simple_module(t.sigma.module, t.Q), E.next_seed(), E.cfg->caps.dim);
    });
  // distinct Q give non-isomorphic simple modules
  for (auto& s : E.inv->items) {
    const ParMask P = s.data.P, Ps = delta_of_sigma(s.module);
    if (P == Ps) continue;
    rec.check("pairwise distinct " + s.key, [&] {
      auto Qs = masks_between(P, Ps);
      std::vector<FinModule> ms;
      for (ParMask Q : Qs) ms.push_back(simple_module(s.module, Q));
      for (size_t a = 0; a < ms.size(); ++a)
        for (size_t b = a + 1; b < ms.size(); ++b)
          if (ms[a].dim() == ms[b].dim() && is_isomorphic(ms[a], ms[b], E.next_seed()).iso)
            return fail("I(P,sigma," + mask_name(D, Qs[a]) + ") = I(P,sigma," + mask_name(D, Qs[b]) + ")");
      return pass(num(static_cast<long long>(ms.size())) + " modules");
    });
  }
}

// ------------------------------------------------------------------ twist theorems

void suite_twists(Env& E, Recorder& rec) {
  const CtxPtr& C = E.C;
  const Datum& D = C->D();
  const ParMask G = C->full();
  for (auto& s : E.inv->items) {
    const FinModule& sigma = s.module;
    const ParMask P = sigma.tag(), Ps = delta_of_sigma(sigma);
    rec.check("twists commute and square to one " + s.key, [&] {
      FirstFailure ff;
      ff.expect(twist_sign(twist_iota(sigma)).gens() == twist_iota(twist_sign(sigma)).gens(),
                [] { return "(sigma^iota)_{l-l_P} != (sigma_{l-l_P})^iota"; });
      ff.expect(twist_iota(twist_iota(sigma)).gens() == sigma.gens(), [] { return "iota twist is not an involution"; });
      ff.expect(twist_sign(twist_sign(sigma)).gens() == sigma.gens(), [] { return "sign twist is not an involution"; });
      return ff.result();
    });
    rec.check("supersingular " + s.key, [&] {
      return iso_outcome(twist_iota(sigma), supersingular_module(C, complement_data(*C, s.data)), E.next_seed(),
                         E.cfg->caps.dim);
    });
    if (Ps != G) continue;
    const FinModule sp = twist_sign(twist_iota(sigma));
    for (ParMask Q : masks_between(P, G))
      rec.check("steinberg " + s.key + " Q=" + mask_name(D, Q), [&] {
        return iso_outcome(twist_iota(steinberg(sigma, Q, G)), steinberg(sp, P | (G & ~Q), G), E.next_seed(),
                           E.cfg->caps.dim);
      });
  }
  for (auto& t : E.inv->triples)
    rec.check("simple module " + t.key, [&] {
      const SSData d2 = sign_twist_data(*C, complement_data(*C, t.sigma.data));
      FinModule s2 = supersingular_module(C, d2);
      if (delta_of_sigma(s2) != t.Psigma) return fail("P(sigma) changes under the twist");
      const ParMask Qc = complement_in(t.sigma.data.P, t.Psigma, t.Q);
      Outcome o = iso_outcome(twist_iota(simple_module(t.sigma.module, t.Q)), simple_module(s2, Qc), E.next_seed(),
                              E.cfg->caps.dim);
      o.detail += " target " + data_str(*C, d2) + " Q=" + mask_name(D, Qc);
      return o;
    });
}

// ------------------------------------------------------------------ duality theorems

void suite_duality(Env& E, Recorder& rec) {
  const CtxPtr& C = E.C;
  const Datum& D = C->D();
  const FiniteWeyl& W = D.W0();
  const ParMask G = C->full();
  const int cap = E.cfg->caps.dim;
  for (auto& s : E.inv->items) {
    const FinModule& sigma = s.module;
    const ParMask P = sigma.tag(), Ps = delta_of_sigma(sigma);
    const FinModule sd = twist_by_n(dual(sigma));
    rec.check("supersingular " + s.key, [&] {
      return iso_outcome(dual(sigma), supersingular_module(C, dual_data(*C, s.data)), E.next_seed(), cap);
    });
    rec.check("double dual " + s.key, [&] { return iso_outcome(dual(dual(sigma)), sigma, E.next_seed(), cap); });
    rec.check("induction I " + s.key, [&] {
      return iso_outcome(dual(Induced(sigma, G, false).module()), Induced(sd, G, true).module(), E.next_seed(), cap);
    });
    rec.check("induction I' " + s.key, [&] {
      return iso_outcome(dual(Induced(sigma, G, true).module()), Induced(sd, G, false).module(), E.next_seed(), cap);
    });
    if (Ps != G) continue;
    rec.check("extension " + s.key, [&] {
      return iso_outcome(dual(extend(sigma, G)), extend(dual(sigma), G), E.next_seed(), cap);
    });
    for (ParMask Q : masks_between(P, G))
      rec.check("steinberg " + s.key + " Q=" + mask_name(D, Q), [&] {
        return iso_outcome(dual(steinberg(sigma, Q, G)), steinberg(sd, W.neg_wG(Q), G), E.next_seed(), cap);
      });
  }
  for (auto& t : E.inv->triples)
    rec.check("simple module " + t.key, [&] {
      FinModule sd = twist_by_n(supersingular_module(C, dual_data(*C, t.sigma.data)));
      FinModule I = simple_module(t.sigma.module, t.Q);
      Outcome o = iso_outcome(dual(I), simple_module(sd, W.neg_wG(t.Q)), E.next_seed(), cap);
      if (o.status == "pass") {
        Outcome dd = iso_outcome(dual(dual(I)), I, E.next_seed(), cap);
        if (dd.status != "pass") return fail("double dual: " + dd.witness);
      }
      return o;
    });
}

// ------------------------------------------------------------------ exactness

void exactness_for(Env& E, Recorder& rec, const FinModule& sigma, const std::string& key) {
  const CtxPtr& C = E.C;
  const Datum& D = C->D();
  const FiniteWeyl& W = D.W0();
  const ParMask G = C->full(), P = sigma.tag();
  for (ParMask Q : masks_between(P, G)) {
    const std::string inst = key + " Q=" + mask_name(D, Q);
    const FinModule eQ = extend(sigma, Q);
    rec.check("exact at I_Q " + inst, [&] {
      Induced IQ(eQ, G, false), IpQ(eQ, G, true);
      Mat U = sum_of_larger(sigma, Q, G, IQ);
      Mat K = nullspace(phi_map(IQ, IpQ));
      std::string d = "rank image=" + num(U.cols()) + " dim ker Phi=" + num(K.cols());
      bool ok = U.cols() == 0 ? K.cols() == 0 : same_space(U, K);
      return ok ? pass(d) : fail("image of the sum differs from ker Phi", d);
    });
    rec.check("exact at I'_Q " + inst, [&] {
      Induced IQ(eQ, G, false), IpQ(eQ, G, true);
      Mat F = phi_map(IQ, IpQ);
      Mat Cn(C->F(), 0, IpQ.dim());
      for (ParMask Q1 : masks_between(Q, G))
        if (Q1 != Q) Cn = vstack(Cn, connecting_map(IpQ, Induced(extend(sigma, Q1), G, true)));
      Mat K = Cn.rows() ? nullspace(Cn) : Mat::identity(C->F(), IpQ.dim());
      std::string d = "rank Phi=" + num(rank(F)) + " dim ker=" + num(K.cols());
      return same_space(colspace(F), K) ? pass(d) : fail("image of Phi differs from the kernel", d);
    });
    rec.check("kernel by T* coordinates " + inst, [&] {
      Induced IpQ(eQ, G, true);
      Mat Cn(C->F(), 0, IpQ.dim());
      for (ParMask Q1 : masks_between(Q, G))
        if (Q1 != Q) Cn = vstack(Cn, connecting_map(IpQ, Induced(extend(sigma, Q1), G, true)));
      const Mat S = IpQ.star_coords();
      const int d = IpQ.sigma().dim(), wQ = W.longest(Q);
      Mat R(C->F(), 0, IpQ.dim());
      for (size_t k = 0; k < IpQ.reps().size(); ++k)
        if (W.delta_w(W.mul(IpQ.reps()[k], wQ)) != (G & ~Q)) R = vstack(R, S.block(int(k) * d, 0, d, IpQ.dim()));
      Mat K1 = Cn.rows() ? nullspace(Cn) : Mat::identity(C->F(), IpQ.dim());
      Mat K2 = R.rows() ? nullspace(R) : Mat::identity(C->F(), IpQ.dim());
      return same_space(K1, K2) ? pass("dim=" + num(K1.cols())) : fail("kernel differs from the T*-vanishing subspace");
    });
    rec.check("T* coordinates on I'_Q " + inst, [&] {
      Induced IpQ(eQ, G, true);
      const int d = IpQ.sigma().dim();
      const auto& reps = IpQ.reps();
      Mat expect(C->F(), IpQ.dim(), IpQ.dim());
      for (size_t a = 0; a < reps.size(); ++a)
        for (size_t b = 0; b < reps.size(); ++b)
          if (W.bruhat_leq(reps[b], reps[a]))
            for (int i = 0; i < d; ++i) expect(int(a) * d + i, int(b) * d + i) = 1;
      return IpQ.star_coords() == expect ? pass() : fail("psi(T*_{n_w}) != sum over v <= w of psi(T_{n_v})");
    });
    for (ParMask Q1 : masks_between(Q, G)) {
      if (Q1 == Q) continue;
      const std::string inst1 = inst + " Q1=" + mask_name(D, Q1);
      rec.check("composite vanishes " + inst1, [&] {
        Induced IQ(eQ, G, false), IpQ(eQ, G, true), Ip1(extend(sigma, Q1), G, true);
        return (connecting_map(IpQ, Ip1) * phi_map(IQ, IpQ)).is_zero() ? pass() : fail("I_Q -> I'_Q -> I'_Q1 is nonzero");
      });
      rec.check("connecting map formula " + inst1, [&] {
        Induced IpQ(eQ, G, true), Ip1(extend(sigma, Q1), G, true);
        const Mat M = connecting_map(IpQ, Ip1);
        const Mat lhs = Ip1.star_coords() * M, S = IpQ.star_coords();
        const int d = sigma.dim(), x = W.mul(W.longest(Q1), W.longest(Q));
        const uint32_t sgn = W.length(x) % 2 ? C->F()->neg(1) : 1;
        FirstFailure ff;
        for (size_t k = 0; k < Ip1.reps().size(); ++k) {
          const int w = Ip1.reps()[k];
          const int j = IpQ.block_of(W.mul(w, x));
          if (j < 0) {
            ff.expect(false, [&] { return "w w_Q1 w_Q is not in W^Q at w = " + W.word_str(w); });
            continue;
          }
          ff.expect(lhs.block(int(k) * d, 0, d, IpQ.dim()) == S.block(j * d, 0, d, IpQ.dim()).scaled(sgn),
                    [&] { return "phi'(T*_{n_w}) formula fails at w = " + W.word_str(w); });
        }
        return ff.result();
      });
    }
  }
}

void suite_exactness(Env& E, Recorder& rec) {
  const CtxPtr& C = E.C;
  const ParMask G = C->full();
  const FinModule triv = trivial_module(C, 0);
  rec.check("P(sigma)=G for triv_B", [&] {
    ParMask Ps = delta_of_sigma(triv);
    return Ps == G ? pass() : fail("Delta(triv_B) = " + mask_name(C->D(), Ps));
  });
  if (delta_of_sigma(triv) == G) exactness_for(E, rec, triv, "triv_B");
  for (auto& s : E.inv->items)
    if (delta_of_sigma(s.module) == G && s.data.P != G && s.module.serialize() != triv.serialize())
      exactness_for(E, rec, s.module, s.key);
}

// ------------------------------------------------------------------ filtration

void suite_filtration(Env& E, Recorder& rec) {
  const CtxPtr& C = E.C;
  const Datum& D = C->D();
  const ParMask G = C->full();
  for (auto& s : E.inv->items) {
    const FinModule& sigma = s.module;
    const ParMask P = sigma.tag();
    rec.check("structure of I'_P " + s.key, [&] {
      Induced Ip(sigma, G, true);
      auto F = iprime_filtration(Ip, E.next_seed());
      for (auto& [Q1, U1] : F)
        for (auto& [Q2, U2] : F)
          if ((Q1 & Q2) == Q1 && !contains(U2, U1))
            return fail("pi_" + mask_name(D, Q1) + " not inside pi_" + mask_name(D, Q2));
      int total = 0;
      std::string d;
      for (auto& [Q, U] : F) {
        FinModule step = filtration_step(Ip.module(), F, Q);
        Outcome o = iso_outcome(step, simple_module(sigma, Q), E.next_seed(), E.cfg->caps.dim);
        if (o.status != "pass") {
          o.witness = "subquotient at Q=" + mask_name(D, Q) + ": " + o.witness;
          return o;
        }
        total += step.dim();
        d += (d.empty() ? "" : " ") + mask_name(D, Q) + ":" + num(step.dim());
      }
      d += " total=" + num(total) + " dim I'=" + num(Ip.dim());
      if (total != Ip.dim()) return fail("subquotient dimensions do not add up", d);
      if (F.size() != masks_between(P, delta_of_sigma(sigma)).size()) return fail("missing filtration steps", d);
      return pass(d);
    });
  }
}

// ------------------------------------------------------------------ registry

using SuiteFn = void (*)(Env&, Recorder&);
struct SuiteEntry {
  const char* id;
  SuiteFn fn;
  bool needs_inventory;
};
const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> r = {
      {"algebra-relations", suite_algebra, true},  {"bases", suite_bases, false},
      {"involutions", suite_involutions, false},   {"induction", suite_induction, true},
      {"steinberg", suite_steinberg, true},        {"twist-theorems", suite_twists, true},
      {"duality-theorems", suite_duality, true},   {"moebius", suite_moebius, false},
      {"exactness", suite_exactness, true},        {"filtration", suite_filtration, true},
  };
  return r;
}

uint64_t suite_seed(uint64_t seed, const std::string& id) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : id) h = (h ^ c) * 1099511628211ull;
  std::seed_seq sq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(h),
                   static_cast<uint32_t>(h >> 32)};
  std::mt19937_64 g(sq);
  return g();
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (auto& e : registry()) v.push_back(e.id);
    return v;
  }();
  return ids;
}

SuiteConfig normalize(const SuiteConfig& cfg) {
  SuiteConfig c = cfg;
  const auto names = RootDatum::preset_names();
  if (std::find(names.begin(), names.end(), c.preset) == names.end())
    throw ConfigError("unknown preset '" + c.preset + "'");
  try {
    Field F(c.p, c.f);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid field: ") + e.what());
  }
  if (c.caps.length <= 0 || c.caps.orbit <= 0 || c.caps.dim <= 0) throw ConfigError("caps must be positive");
  if (c.suites.empty()) c.suites = {"all"};
  const auto& ids = suite_ids();
  for (auto& s : c.suites)
    if (s != "all" && std::find(ids.begin(), ids.end(), s) == ids.end()) throw ConfigError("unknown suite id '" + s + "'");
  std::vector<std::string> out;
  for (auto& id : ids)
    if (std::find(c.suites.begin(), c.suites.end(), "all") != c.suites.end() ||
        std::find(c.suites.begin(), c.suites.end(), id) != c.suites.end())
      out.push_back(id);
  c.suites = out;
  return c;
}

std::vector<CheckResult> run_suites(const SuiteConfig& raw) {
  const SuiteConfig cfg = normalize(raw);
  CtxPtr C = Ctx::make(cfg.preset, cfg.p, cfg.f);
  bool need_inv = false;
  for (auto& e : registry())
    if (e.needs_inventory && std::find(cfg.suites.begin(), cfg.suites.end(), e.id) != cfg.suites.end()) need_inv = true;
  Inventory inv;
  if (need_inv) inv = build_inventory(C, cfg.caps.orbit);

  std::vector<std::future<std::vector<CheckResult>>> jobs;
  for (auto& e : registry()) {
    if (std::find(cfg.suites.begin(), cfg.suites.end(), e.id) == cfg.suites.end()) continue;
    jobs.push_back(std::async(std::launch::async, [&, e] {
      Env env{C, &cfg, &inv, std::mt19937_64(suite_seed(cfg.seed, e.id))};
      Recorder rec(e.id);
      e.fn(env, rec);
      return rec.take();
    }));
  }
  std::vector<CheckResult> all;
  for (auto& j : jobs)
    for (auto& r : j.get()) all.push_back(std::move(r));
  std::stable_sort(all.begin(), all.end(), [](const CheckResult& a, const CheckResult& b) {
    return std::tie(a.suite, a.instance) < std::tie(b.suite, b.instance);
  });
  return all;
}

bool any_failure(const std::vector<CheckResult>& rs) {
  return std::any_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.status == "fail"; });
}

std::string to_jsonl(const std::vector<CheckResult>& rs, bool timings) {
  std::ostringstream os;
  for (auto& r : rs) {
    nlohmann::ordered_json j;
    j["schema"] = "propp.check/1";
    j["suite"] = r.suite;
    j["instance"] = r.instance;
    j["status"] = r.status;
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (!r.detail.empty()) j["detail"] = r.detail;
    j["ms"] = timings ? std::round(r.ms * 10) / 10 : 0.0;
    os << j.dump() << '\n';
  }
  return os.str();
}

}  // namespace prohecke
