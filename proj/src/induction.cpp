#include "prohecke/induction.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace prohecke {

std::vector<ParMask> masks_between(ParMask P, ParMask Q) {
  std::vector<ParMask> out;
  if ((P & Q) != P) return out;
  const ParMask free = Q & ~P;
  for (ParMask s = free;; s = (s - 1) & free) {
    out.push_back(P | s);
    if (s == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr int kShiftCap = 64;

Mat zero_cols(const Field* F, int rows) { return Mat(F, rows, 0); }

}  // namespace

Induced::Induced(const FinModule& sigma, ParMask Q0, bool prime) : sigma_(sigma), Q0_(Q0), prime_(prime) {
  const CtxPtr& C = sigma_.ctx();
  const Datum& D = C->D();
  const FiniteWeyl& W = D.W0();
  const ParMask P = sigma_.tag();
  if ((P & Q0) != P) throw ModuleError("induce", "ambient Levi does not contain P");
  for (int v : W.min_coset_reps(P))
    if (W.in_parabolic(v, Q0)) reps_.push_back(v);
  std::sort(reps_.begin(), reps_.end());
  lam_ = D.central_lambda(P, -1);
  auto inv = inverse(sigma_.act_T(lam_));
  if (!inv) throw ModuleError("induce", "σ(T_λ) is singular for central λ");
  A_inv_ = *inv;

  if (!prime_) {
    // φ(T*_{n_w}) from the T-coordinates: T_y = T_{n_{u_1}}·j^{-*}(T^P_{n_{u_1}^{-1}y})
    const SpecHecke& HQ = C->H(Q0);
    for (int w : reps_) {
      Mat f(sigma_.F(), sigma_.dim(), dim());
      for (auto& [y, c] : HQ.star(D.n(w)).terms) {
        int u1 = split(y.w);
        PElt z = D.mul(D.inv(D.n(u1)), y);
        f += (sigma_.act_T(z) * select(block_of(u1))).scaled(c.v);
      }
      fstar_.push_back(f);
    }
  }

  const SpecHecke& HQ = C->H(Q0);
  FinModule shape = FinModule::zero(C, Q0);
  std::vector<Mat> gens;
  for (int g = 0; g < shape.num_gens(); ++g) {
    SpecElt Tg = HQ.T(shape.gen_elt(g));
    Mat m(sigma_.F(), 0, dim());
    for (int v : reps_) m = vstack(m, eval(HQ.mul(Tg, HQ.T(D.n(v)))));
    gens.push_back(m);
  }
  mod_ = FinModule(C, Q0, dim(), std::move(gens));
  mod_.validate();
}

int Induced::block_of(int v) const {
  auto it = std::lower_bound(reps_.begin(), reps_.end(), v);
  return it != reps_.end() && *it == v ? static_cast<int>(it - reps_.begin()) : -1;
}

int Induced::split(int w) const {
  const FiniteWeyl& W = sigma_.ctx()->D().W0();
  for (int v : reps_)
    if (W.in_parabolic(W.mul(W.inv(v), w), P())) return v;
  throw std::logic_error("Induced: element outside W_{0,Q0}");
}

Mat Induced::select(int k) const {
  const int d = sigma_.dim();
  Mat s(sigma_.F(), d, dim());
  for (int i = 0; i < d; ++i) s(i, k * d + i) = 1;
  return s;
}

Mat Induced::eval_basis(const PElt& b) const {
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = cache_.find(b);
    if (it != cache_.end()) return it->second;
  }
  const CtxPtr& C = sigma_.ctx();
  const Datum& D = C->D();
  const SpecHecke& HQ = C->H(Q0_);
  const SpecHecke& HP = C->H(P());
  const int w1 = split(b.w);
  // E_∓(b)·E_{o_∓}(λ)^N = E_∓(bλ^N) when lengths add, else 0; bλ^N = n_{w_1}c with c P-negative
  PElt c = D.mul(D.inv(D.n(w1)), b);
  int N = 0;
  while (!in_relative_cone(D, c, P(), Q0_, -1)) {
    if (++N > kShiftCap) throw ModuleError("evaluate_hom", "centrality shift exceeds the cap for " + D.str(b));
    c = D.mul(c, lam_);
  }
  PElt bl = D.mul(D.n(w1), c);
  Mat r(sigma_.F(), sigma_.dim(), dim());
  if (HQ.length(b) + N * HQ.length(lam_) == HQ.length(bl)) {
    if (HQ.length(bl) != D.W0().length(w1) + HQ.length(c))
      throw std::logic_error("evaluate_hom: n_{w_1}c is not length-additive");
    Mat head = mat_pow(A_inv_, N);
    if (prime_) r = head * sigma_.act(HP.e_plus(c)) * select(block_of(w1));
    else r = head * sigma_.act(HP.e_minus(c)) * fstar_[block_of(w1)];
  }
  std::lock_guard<std::mutex> g(mu_);
  max_shift_ = std::max(max_shift_, N);
  cache_.emplace(b, r);
  return r;
}

Mat Induced::eval(const SpecElt& Y) const {
  const SpecHecke& HQ = sigma_.ctx()->H(Q0_);
  if (Y.tag != Q0_) throw std::invalid_argument("evaluate_hom: element of the wrong algebra");
  auto basis = [&](const PElt& b) { return prime_ ? HQ.e_plus(b) : HQ.e_minus(b); };
  Mat r(sigma_.F(), sigma_.dim(), dim());
  for (auto& [b, c] : HQ.expand(Y, basis)) r += eval_basis(b).scaled(c.v);
  return r;
}

Mat Induced::eval_T(const PElt& w) const { return eval(sigma_.ctx()->H(Q0_).T(w)); }

Mat Induced::star_coords() const {
  const CtxPtr& C = sigma_.ctx();
  const SpecHecke& HQ = C->H(Q0_);
  Mat m(sigma_.F(), 0, dim());
  for (int v : reps_) m = vstack(m, eval(HQ.star(C->D().n(v))));
  return m;
}

// ------------------------------------------------------------------ maps between inductions

Mat phi_map(const Induced& I, const Induced& Ip) {
  if (I.prime() || !Ip.prime() || I.P() != Ip.P() || I.Q0() != Ip.Q0())
    throw std::invalid_argument("phi_map: expects I and I' of the same σ");
  const CtxPtr& C = I.sigma().ctx();
  const Datum& D = C->D();
  const FiniteWeyl& W = D.W0();
  const SpecHecke& H = C->H(I.Q0());
  const Field* F = C->F();
  const PElt n = D.n(W.mul(W.longest(I.Q0()), W.longest(I.P())));
  const SpecElt Tn = H.T(n);
  Mat A(F, 0, Ip.dim()), B(F, 0, I.dim());
  auto add = [&](const PElt& x) {
    SpecElt X = H.mul(H.T(x), Tn);
    A = vstack(A, Ip.eval(X));
    B = vstack(B, I.eval(X));
  };
  const auto WQ = W.parabolic_elements(I.Q0());
  for (int v : WQ) add(D.n(v));
  // widen the sample by translations until Φ is determined
  const int r = D.lattice_rank();
  for (int radius = 1; rank(A) < Ip.dim() && radius <= 2; ++radius) {
    Cow x{};
    std::function<void(int)> rec = [&](int j) {
      if (j == r) {
        if (x == Cow{}) return;
        for (int v : WQ) add(D.mul(D.n(v), D.lambda(x)));
        return;
      }
      for (int e = -radius; e <= radius; ++e) {
        x[j] = e;
        rec(j + 1);
      }
      x[j] = 0;
    };
    rec(0);
  }
  if (rank(A) < Ip.dim()) throw ModuleError("phi_map", "sample of X T_n does not determine Φ");
  auto Fm = solve(A, B);
  if (!Fm || A * *Fm != B) throw ModuleError("phi_map", "no map with Φ(φ)(X T_n) = φ(X T_n)");
  if (!is_intertwiner(I.module(), Ip.module(), *Fm)) throw ModuleError("phi_map", "Φ is not an intertwiner");
  return *Fm;
}

Mat inclusion_map(const Induced& from, const Induced& to) {
  if (from.prime() || to.prime() || from.Q0() != to.Q0())
    throw std::invalid_argument("inclusion_map: expects plain inductions over one ambient Levi");
  if ((to.P() & from.P()) != to.P()) throw ModuleError("inclusion_map", "chain condition Q ⊆ Q1 violated");
  const int d = from.sigma().dim();
  if (to.sigma().dim() != d) throw ModuleError("inclusion_map", "different underlying spaces");
  Mat M(from.sigma().F(), to.dim(), from.dim());
  for (size_t k = 0; k < from.reps().size(); ++k) {
    int j = to.block_of(from.reps()[k]);
    if (j < 0) throw std::logic_error("inclusion_map: W_0^{Q1} ⊄ W_0^Q");
    for (int i = 0; i < d; ++i) M(j * d + i, int(k) * d + i) = 1;
  }
  if (!is_intertwiner(from.module(), to.module(), M))
    throw ModuleError("inclusion_map", "extension by zero is not an intertwiner");
  return M;
}

Mat sum_of_larger(const FinModule& sigma, ParMask Q, ParMask P0, const Induced& IQ) {
  Mat U = zero_cols(sigma.F(), IQ.dim());
  for (ParMask Q1 : masks_between(Q, P0)) {
    if (Q1 == Q) continue;
    Induced I1(extend(sigma, Q1), P0, false);
    U = hstack(U, inclusion_map(I1, IQ));
  }
  return U.cols() ? colspace(U) : U;
}

FinModule steinberg(const FinModule& sigma, ParMask Q, ParMask P0) {
  const ParMask P = sigma.tag();
  const ParMask Ps = delta_of_sigma(sigma);
  if ((P & Q) != P || (Q & P0) != Q || (P0 & Ps) != P0)
    throw ModuleError("steinberg", "chain P ⊆ Q ⊆ P0 ⊆ P(σ) violated");
  Induced IQ(extend(sigma, Q), P0, false);
  Mat U = sum_of_larger(sigma, Q, P0, IQ);
  if (U.cols() == 0) return IQ.module();
  return quotient(IQ.module(), U);
}

FinModule simple_module(const FinModule& sigma, ParMask Q) {
  const ParMask Ps = delta_of_sigma(sigma);
  FinModule st = steinberg(sigma, Q, Ps);
  return Induced(st, sigma.ctx()->full(), false).module();
}

Mat connecting_map(const Induced& from, const Induced& to) {
  if (!from.prime() || !to.prime() || from.Q0() != to.Q0())
    throw std::invalid_argument("connecting_map: expects primed inductions over one ambient Levi");
  const CtxPtr& C = from.sigma().ctx();
  const Datum& D = C->D();
  const FiniteWeyl& W = D.W0();
  const SpecHecke& H = C->H(from.Q0());
  const ParMask Q = from.P(), Q1 = to.P();
  if ((Q & Q1) != Q) throw ModuleError("connecting_map", "Q ⊄ Q1");
  const int w = W.mul(W.longest(Q1), W.longest(Q));
  const SpecElt tail = H.star(D.n(w));
  const uint32_t sgn = W.length(w) % 2 ? C->F()->neg(1) : 1;
  Mat M(C->F(), 0, from.dim());
  for (int v : to.reps()) M = vstack(M, from.eval(H.mul(H.T(D.n(v)), tail)).scaled(sgn));
  if (!is_intertwiner(from.module(), to.module(), M))
    throw ModuleError("connecting_map", "the map is not an intertwiner");
  return M;
}

namespace {

// P(σ) = Q0: π_Q = I_{Q^c}(e_{Q^c}(σ'))^ι inside I_P(σ')^ι ≅ I'_P(σ), σ' = σ^{ι_P}_{ℓ_{Q0}−ℓ_P}
std::vector<std::pair<ParMask, Mat>> filtration_at_top(const Induced& Ip, uint64_t seed) {
  const FinModule& sigma = Ip.sigma();
  const ParMask P = sigma.tag(), Q0 = Ip.Q0();
  FinModule sp = twist_sign(twist_iota(sigma), Q0);
  Induced I(sp, Q0, false);
  IsoResult iso = is_isomorphic(twist_iota(I.module()), Ip.module(), seed);
  if (!iso.iso) throw ModuleError("iprime_filtration", "I_P(σ')^ι and I'_P(σ) are not isomorphic");
  std::vector<std::pair<ParMask, Mat>> out;
  for (ParMask Q : masks_between(P, Q0)) {
    ParMask Qc = P | (Q0 & ~Q);
    Induced IQc(extend(sp, Qc), Q0, false);
    out.emplace_back(Q, colspace(iso.witness * inclusion_map(IQc, I)));
  }
  return out;
}

}  // namespace

std::vector<std::pair<ParMask, Mat>> iprime_filtration(const Induced& Ip, uint64_t seed) {
  const FinModule& sigma = Ip.sigma();
  const CtxPtr& C = sigma.ctx();
  const ParMask P = sigma.tag(), G = C->full();
  if (!Ip.prime() || Ip.Q0() != G) throw std::invalid_argument("iprime_filtration: expects I'_P(σ) over G");
  const ParMask Ps = delta_of_sigma(sigma);
  if (Ps == P) return {{P, Mat::identity(C->F(), Ip.dim())}};
  if (Ps == G) return filtration_at_top(Ip, seed);
  // π_Q = I'_{P(σ)}(π'_Q) with π'_Q ⊂ I'^{P(σ)}_P(σ), carried into I'_P(σ) by transitivity
  Induced inner(sigma, Ps, true);
  Induced outer(inner.module(), G, true);
  IsoResult iso = is_isomorphic(outer.module(), Ip.module(), seed);
  if (!iso.iso) throw ModuleError("iprime_filtration", "I'_{P(σ)}(I'^{P(σ)}_P(σ)) and I'_P(σ) are not isomorphic");
  const int blocks = static_cast<int>(outer.reps().size()), d = inner.dim();
  std::vector<std::pair<ParMask, Mat>> out;
  for (auto& [Q, U] : filtration_at_top(inner, seed)) {
    Mat V(C->F(), outer.dim(), blocks * U.cols());
    for (int b = 0; b < blocks; ++b) V.set_block(b * d, b * U.cols(), U);
    if (!is_stable(outer.module(), V)) throw ModuleError("iprime_filtration", "I'_{P(σ)}(π'_Q) is not a submodule");
    out.emplace_back(Q, colspace(iso.witness * V));
  }
  return out;
}

}  // namespace prohecke
