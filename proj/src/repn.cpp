#include "prohecke/repn.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace prohecke {

// ------------------------------------------------------------------ Ctx

const SpecHecke& Ctx::H(ParMask J) const {
  std::lock_guard<std::mutex> g(mu_);
  auto it = H_.find(J);
  if (it == H_.end()) it = H_.emplace(J, std::make_unique<SpecHecke>(D_, J)).first;
  return *it->second;
}

// ------------------------------------------------------------------ helpers

Mat mat_pow(const Mat& a, int e) {
  if (e < 0) throw std::invalid_argument("mat_pow: negative exponent");
  Mat r = Mat::identity(a.field(), a.rows());
  Mat b = a;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

void SpanBuilder::reduce(std::vector<uint32_t>& v) const {
  for (size_t k = 0; k < rows_.size(); ++k) {
    uint32_t c = v[piv_[k]];
    if (!c) continue;
    const auto& r = rows_[k];
    for (int j = 0; j < n_; ++j)
      if (r[j]) v[j] = F_->sub(v[j], F_->mul(c, r[j]));
  }
}

bool SpanBuilder::add(std::vector<uint32_t> v) {
  reduce(v);
  int p = -1;
  for (int j = 0; j < n_; ++j)
    if (v[j]) {
      p = j;
      break;
    }
  if (p < 0) return false;
  uint32_t s = F_->inv(v[p]);
  for (auto& x : v) x = F_->mul(x, s);
  rows_.push_back(std::move(v));
  piv_.push_back(p);
  return true;
}

bool SpanBuilder::contains(std::vector<uint32_t> v) const {
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](uint32_t x) { return x == 0; });
}

namespace {

std::vector<uint32_t> col_vec(const Mat& m, int j) {
  std::vector<uint32_t> v(m.rows());
  for (int i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

Mat from_cols(const Field* F, int n, const std::vector<std::vector<uint32_t>>& cols) {
  Mat m(F, n, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i) m(i, int(j)) = cols[j][i];
  return m;
}

uint32_t sign_of(const Field* F, int e) { return (e % 2 + 2) % 2 ? F->neg(1) : 1; }


}  // namespace

// ------------------------------------------------------------------ FinModule

FinModule::FinModule(CtxPtr ctx, ParMask tag, int dim, std::vector<Mat> gens)
    : ctx_(std::move(ctx)), tag_(tag), dim_(dim), gens_(std::move(gens)) {
  const Levi& L = levi();
  ns_ = L.num_simples();
  nt_ = ctx_->D().lattice_rank();
  const int expect = ns_ + nt_ + static_cast<int>(L.omega_gens().size());
  if (num_gens() != expect) throw std::invalid_argument("FinModule: wrong number of generator matrices");
  for (auto& g : gens_)
    if (g.rows() != dim_ || g.cols() != dim_) throw std::invalid_argument("FinModule: generator matrix of wrong size");
  inv_.resize(gens_.size());
  for (int g = ns_; g < num_gens(); ++g) {
    auto i = inverse(gens_[g]);
    if (!i) throw ModuleError("FinModule", "generator " + std::to_string(g) + " of a group element is singular");
    inv_[g] = *i;
  }
}

FinModule FinModule::zero(CtxPtr ctx, ParMask tag) {
  const Levi& L = ctx->D().levi(tag);
  int n = L.num_simples() + ctx->D().lattice_rank() + static_cast<int>(L.omega_gens().size());
  const Field* F = ctx->F();
  return FinModule(ctx, tag, 0, std::vector<Mat>(n, Mat(F, 0, 0)));
}

PElt FinModule::gen_elt(int g) const {
  const Datum& D = ctx_->D();
  if (g < ns_) return levi().lift(g);
  if (g < ns_ + nt_) {
    Tor t{};
    t[g - ns_] = 1;
    return D.torus(t);
  }
  return levi().omega_gens()[g - ns_ - nt_];
}

Mat FinModule::inv_gen(int g) const { return inv_[g]; }

Mat FinModule::act_torus(const Tor& t) const {
  Mat r = Mat::identity(F(), dim_);
  for (int j = 0; j < nt_; ++j)
    if (t[j]) r = r * mat_pow(gens_[ns_ + j], t[j]);
  return r;
}

Mat FinModule::act_T(const PElt& w) const {
  const auto& wd = hecke().word(w);
  Decomp d = levi().decompose_length_zero(wd.u);
  // T_w = T_{s_1}⋯T_{s_l}·T_{u_1}^{e_1}⋯T_{u_m}^{e_m}·T_t, acting in reverse order
  Mat r = act_torus(d.t);
  for (int k = static_cast<int>(d.omega_exps.size()) - 1; k >= 0; --k) {
    int e = d.omega_exps[k];
    if (e > 0) r = r * mat_pow(gens_[gen_omega(k)], e);
    if (e < 0) r = r * mat_pow(inv_[gen_omega(k)], -e);
  }
  for (auto it = wd.letters.rbegin(); it != wd.letters.rend(); ++it) r = r * gens_[*it];
  return r;
}

Mat FinModule::act(const SpecElt& x) const {
  if (x.tag != tag_) throw std::invalid_argument("act: algebra tag mismatch");
  Mat r(F(), dim_, dim_);
  for (auto& [w, c] : x.terms) r += act_T(w).scaled(c.v);
  return r;
}

std::optional<std::string> FinModule::relation_failure() const {
  const Datum& D = ctx_->D();
  const Levi& L = levi();
  const SpecHecke& H = hecke();
  const AffineSystem& A = L.aff();
  int depth = 2;
  for (int a = 0; a < ns_; ++a)
    for (int b = 0; b < ns_; ++b)
      if (a != b && A.coxeter_m(a, b) > 0) depth = std::max(depth, A.coxeter_m(a, b) - 1);
  for (int o : L.omega_orders())
    if (o > 0) depth = std::max(depth, o - 1);

  // torus elements times words in the simple lifts and Ω^{±1}
  std::vector<PElt> steps;
  for (int i = 0; i < ns_; ++i) steps.push_back(L.lift(i));
  for (auto& u : L.omega_gens()) {
    steps.push_back(u);
    steps.push_back(D.inv(u));
  }
  std::set<PElt> seen;
  std::vector<PElt> frontier;
  Tor t{};
  const int tm = D.tmod();
  std::function<void(int)> tori = [&](int j) {
    if (j == nt_) {
      PElt x = D.torus(t);
      if (seen.insert(x).second) frontier.push_back(x);
      return;
    }
    for (int e = 0; e < tm; ++e) {
      t[j] = e;
      tori(j + 1);
    }
    t[j] = 0;
  };
  tori(0);
  std::vector<PElt> all = frontier;
  for (int d = 0; d < depth; ++d) {
    std::vector<PElt> next;
    for (auto& a : frontier)
      for (auto& s : steps) {
        PElt b = D.mul(a, s);
        if (seen.insert(b).second) next.push_back(b);
      }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  for (const PElt& a : all) {
    Mat Ma = act_T(a);
    for (int g = 0; g < num_gens(); ++g) {
      PElt x = gen_elt(g);
      Mat lhs = act(H.mul(H.T(a), H.T(x)));
      if (lhs != gens_[g] * Ma)
        return "T_a·T_g with a = " + D.str(a) + ", g = " + D.str(x);
    }
    for (int k = 0; k < static_cast<int>(L.omega_gens().size()); ++k) {
      PElt x = D.inv(L.omega_gens()[k]);
      if (act_T(D.mul(a, x)) != inv_[gen_omega(k)] * Ma)
        return "T_a·T_{u^-1} with a = " + D.str(a) + ", u^-1 = " + D.str(x);
    }
  }
  return std::nullopt;
}

void FinModule::validate() const {
  if (auto f = relation_failure()) throw ModuleError("defining relation fails", *f);
}

std::string FinModule::serialize() const {
  std::ostringstream os;
  os << "tag " << tag_ << " dim " << dim_ << "\n";
  for (int g = 0; g < num_gens(); ++g) {
    os << "g" << g;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        os << (j == 0 ? " [" : " ");
        auto dg = F()->digits(gens_[g](i, j));
        for (size_t k = 0; k < dg.size(); ++k) os << (k ? "," : "") << dg[k];
        if (j == dim_ - 1) os << "]";
      }
    os << "\n";
  }
  return os.str();
}

// ------------------------------------------------------------------ supersingular data

uint32_t torus_char(const Field* F, const std::array<int, kMaxLattice>& k, const Tor& t) {
  long long e = 0;
  for (int j = 0; j < kMaxLattice; ++j) e += static_cast<long long>(k[j]) * t[j];
  return F->gen_pow(e);
}

namespace {

uint32_t chi_c(const Ctx& C, const SSData& d, int i) {
  const Levi& L = C.D().levi(d.P);
  uint32_t s = 0;
  for (const Tor& t : L.c_tori(i)) s = C.F()->add(s, torus_char(C.F(), d.k, t));
  return s;
}

// Ξ_r: the values Ξ(r s̃_i r^{-1}) followed by χ(r α_j^∨(g) r^{-1}), j ∈ Δ_P
std::vector<uint32_t> xi_key(const Ctx& C, const SSData& d, const std::vector<uint32_t>& xi, const PElt& r) {
  const Datum& D = C.D();
  const Levi& L = D.levi(d.P);
  const Field* F = C.F();
  std::vector<uint32_t> key;
  for (int i = 0; i < L.num_simples(); ++i) {
    PElt a = D.conj(r, L.lift(i));
    int j = L.simple_index_of(a);
    if (j < 0) throw std::logic_error("xi_key: Ω_P does not normalize S_aff,P");
    PElt t = D.mul(a, L.lift_inv(j));
    if (t.w != 0 || t.x != Cow{}) throw std::logic_error("xi_key: lift differs by a non-torus element");
    key.push_back(F->mul(torus_char(F, d.k, t.t), xi[j]));
  }
  for (int j = 0; j < D.rank(); ++j)
    if (d.P >> j & 1) {
      PElt t = D.conj(r, D.torus(D.coroot_torus(D.W0().simple_root_index(j), 1)));
      key.push_back(torus_char(F, d.k, t.t));
    }
  return key;
}

std::vector<uint32_t> xi_values(const Ctx& C, const SSData& d) {
  const Levi& L = C.D().levi(d.P);
  auto S = s_aff_chi(C, d);
  std::vector<uint32_t> xi(L.num_simples(), 0);
  for (int i : S)
    if (std::find(d.J.begin(), d.J.end(), i) == d.J.end()) xi[i] = chi_c(C, d, i);
  return xi;
}

PElt elt_pow(const Datum& D, const PElt& u, int m) {
  PElt r = D.identity();
  for (int j = 0; j < m; ++j) r = D.mul(r, u);
  return r;
}

}  // namespace

std::vector<int> s_aff_chi(const Ctx& C, const SSData& d) {
  std::vector<int> out;
  for (int i = 0; i < C.D().levi(d.P).num_simples(); ++i)
    if (chi_c(C, d, i)) out.push_back(i);
  return out;
}

bool is_supersingular_data(const Ctx& C, const SSData& d) {
  const Levi& L = C.D().levi(d.P);
  auto S = s_aff_chi(C, d);
  auto in = [](const std::vector<int>& v, int i) { return std::find(v.begin(), v.end(), i) != v.end(); };
  const auto& simples = L.aff().simples();
  for (size_t c = 0; c < L.aff().components().size(); ++c) {
    bool allJ = true, allRest = true;
    for (int i = 0; i < L.num_simples(); ++i) {
      if (simples[i].component != static_cast<int>(c)) continue;
      if (!in(d.J, i)) allJ = false;
      if (!(in(S, i) && !in(d.J, i))) allRest = false;
    }
    // a full set of affine simple reflections of a component generates an infinite group
    if (allJ || allRest) return false;
  }
  return true;
}

int xi_orbit_size(const Ctx& C, const SSData& d) {
  const Datum& D = C.D();
  const Levi& L = D.levi(d.P);
  auto xi = xi_values(C, d);
  auto base = xi_key(C, d, xi, D.identity());
  if (L.omega_gens().empty()) return 1;
  if (L.omega_gens().size() > 1) {
    for (auto& u : L.omega_gens())
      if (xi_key(C, d, xi, u) != base) return -1;  // unsupported: stabilizer of a non-cyclic action
    return 1;
  }
  const PElt& u = L.omega_gens()[0];
  PElt r = u;
  for (int m = 1; m <= 64; ++m) {
    if (xi_key(C, d, xi, r) == base) return m;
    r = D.mul(r, u);
  }
  throw ModuleError("supersingular_module", "Ω-orbit of Ξ exceeds the cap 64");
}

FinModule supersingular_module(const CtxPtr& Cp, const SSData& d) {
  const Ctx& C = *Cp;
  const Datum& D = C.D();
  const Levi& L = D.levi(d.P);
  const Field* F = C.F();
  auto S = s_aff_chi(C, d);
  for (int j : d.J)
    if (std::find(S.begin(), S.end(), j) == S.end())
      throw ModuleError("supersingular_module", "J is not contained in S_aff,chi");
  const int m = xi_orbit_size(C, d);
  if (m < 0) throw ModuleError("supersingular_module", "Ω_P(1) has several generators and moves Ξ");
  const int no = static_cast<int>(L.omega_gens().size());
  if (static_cast<int>(d.omega_vals.size()) != (m > 1 ? 1 : no))
    throw ModuleError("supersingular_module", "wrong number of Ω values for V");
  for (auto v : d.omega_vals)
    if (v == 0) throw ModuleError("supersingular_module", "V takes the value 0 on a group element");

  auto xi = xi_values(C, d);
  std::vector<PElt> reps;
  for (int j = 0; j < m; ++j) reps.push_back(no ? elt_pow(D, L.omega_gens()[0], j) : D.identity());

  std::vector<Mat> gens;
  for (int i = 0; i < L.num_simples(); ++i) {
    Mat g(F, m, m);
    for (int j = 0; j < m; ++j) g(j, j) = xi_key(C, d, xi, reps[j])[i];
    gens.push_back(g);
  }
  for (int tj = 0; tj < D.lattice_rank(); ++tj) {
    Tor e{};
    e[tj] = 1;
    Mat g(F, m, m);
    for (int j = 0; j < m; ++j) g(j, j) = torus_char(F, d.k, D.conj(reps[j], D.torus(e)).t);
    gens.push_back(g);
  }
  if (m > 1) {
    // T_u: line u^j ↦ line u^{j+1}, and u^m ∈ Ω(1)_Ξ acts on V
    Mat g(F, m, m);
    for (int j = 0; j + 1 < m; ++j) g(j + 1, j) = 1;
    g(0, m - 1) = d.omega_vals[0];
    gens.push_back(g);
  } else {
    for (int k = 0; k < no; ++k) gens.push_back(Mat::scalar(F, 1, d.omega_vals[k]));
  }
  FinModule mod(Cp, d.P, m, std::move(gens));
  mod.validate();
  return mod;
}

SSData complement_data(const Ctx& C, const SSData& d) {
  SSData r = d;
  r.J.clear();
  for (int i : s_aff_chi(C, d))
    if (std::find(d.J.begin(), d.J.end(), i) == d.J.end()) r.J.push_back(i);
  return r;
}

SSData sign_twist_data(const Ctx& C, const SSData& d) {
  const Datum& D = C.D();
  const Levi& L = D.levi(d.P);
  SSData r = d;
  int m = xi_orbit_size(C, d);
  for (size_t k = 0; k < r.omega_vals.size(); ++k) {
    PElt h = m > 1 ? elt_pow(D, L.omega_gens()[0], m) : L.omega_gens()[k];
    r.omega_vals[k] = C.F()->mul(r.omega_vals[k], sign_of(C.F(), D.length(h) - L.length(h)));
  }
  return r;
}

SSData dual_data(const Ctx& C, const SSData& d) {
  SSData r = d;
  const int tm = C.D().tmod();
  for (auto& k : r.k) k = (tm - k % tm) % tm;
  for (auto& v : r.omega_vals) v = C.F()->inv(v);
  return r;
}

std::string data_str(const Ctx& C, const SSData& d) {
  std::ostringstream os;
  os << mask_name(C.D(), d.P) << " psi=(";
  for (int j = 0; j < C.D().lattice_rank(); ++j) os << (j ? "," : "") << d.k[j];
  os << ") J={";
  for (size_t i = 0; i < d.J.size(); ++i) os << (i ? "," : "") << "s" << d.J[i];
  os << "} V=(";
  for (size_t i = 0; i < d.omega_vals.size(); ++i) os << (i ? "," : "") << C.F()->str(d.omega_vals[i]);
  os << ")";
  return os.str();
}

std::string mask_name(const Datum& D, ParMask J) {
  if (J == D.root_datum().full_mask()) return "G";
  if (J == 0) return "B";
  std::string s = "P{";
  bool first = true;
  for (int i = 0; i < D.rank(); ++i)
    if (J >> i & 1) {
      s += (first ? "a" : ",a") + std::to_string(i);
      first = false;
    }
  return s + "}";
}

FinModule trivial_module(const CtxPtr& C, ParMask P) {
  const Levi& L = C->D().levi(P);
  const Field* F = C->F();
  std::vector<Mat> gens;
  for (int i = 0; i < L.num_simples(); ++i) gens.push_back(Mat(F, 1, 1));
  const int rest = C->D().lattice_rank() + static_cast<int>(L.omega_gens().size());
  for (int k = 0; k < rest; ++k) gens.push_back(Mat::identity(F, 1));
  FinModule m(C, P, 1, std::move(gens));
  m.validate();
  return m;
}

// ------------------------------------------------------------------ Δ(σ), e_Q, supersingularity

bool is_supersingular(const FinModule& m, int length_cap) {
  if (m.dim() == 0) return true;
  const Datum& D = m.ctx()->D();
  const Levi& L = m.levi();
  const SpecHecke& H = m.hecke();
  const FiniteWeyl& W = D.W0();
  const auto WJ = W.parabolic_elements(m.tag());
  const int r = D.lattice_rank();
  const int tm = D.tmod();
  Cow x{};
  Tor t{};
  bool ok = true;
  std::function<void(int)> torus_loop = [&](int j) {
    if (!ok) return;
    if (j == r) {
      PElt lam = D.lambda(x, t);
      int l = L.length(lam);
      if (l == 0 || l > length_cap) return;
      std::set<PElt> orb;
      for (int w : WJ) orb.insert(D.act_lambda(w, lam));
      if (*orb.begin() != lam) return;  // count each orbit once
      Mat z = m.act(H.z_orbit(std::vector<PElt>(orb.begin(), orb.end()), H.o_minus()));
      if (!mat_pow(z, m.dim()).is_zero()) ok = false;
      return;
    }
    for (int e = 0; e < tm; ++e) {
      t[j] = e;
      torus_loop(j + 1);
    }
    t[j] = 0;
  };
  std::function<void(int)> cow_loop = [&](int j) {
    if (!ok) return;
    if (j == r) {
      torus_loop(0);
      return;
    }
    for (int e = -length_cap; e <= length_cap; ++e) {
      x[j] = e;
      cow_loop(j + 1);
    }
    x[j] = 0;
  };
  cow_loop(0);
  return ok;
}

ParMask delta_of_sigma(const FinModule& sigma) {
  const Datum& D = sigma.ctx()->D();
  const auto& rd = D.root_datum();
  const ParMask P = sigma.tag();
  ParMask out = P;
  const Mat I = Mat::identity(sigma.F(), sigma.dim());
  for (int a = 0; a < D.rank(); ++a) {
    if (P >> a & 1) continue;
    bool ok = true;
    for (int b = 0; b < D.rank(); ++b)
      if ((P >> b & 1) && rd.cartan[a][b] != 0) ok = false;
    if (!ok) continue;
    // W_{aff,α}(1) ∩ Λ(1) is generated by λ(α^∨) and α^∨(g)
    PElt lam = D.lambda(rd.simple_coroots[a]);
    PElt tor = D.torus(D.coroot_torus(D.W0().simple_root_index(a), 1));
    if (sigma.act_T(lam) == I && sigma.act_T(tor) == I) out |= ParMask(1) << a;
  }
  return out;
}

FinModule extend(const FinModule& sigma, ParMask Q) {
  const ParMask P = sigma.tag();
  if (Q == P) return sigma;
  const CtxPtr& C = sigma.ctx();
  const Datum& D = C->D();
  const FiniteWeyl& W = D.W0();
  if ((P & Q) != P || (Q & delta_of_sigma(sigma)) != Q)
    throw ModuleError("extend", "Q is not between P and P(sigma)");
  const ParMask P2 = Q & ~P;
  const Levi& LQ = D.levi(Q);
  const SpecHecke& HP = C->H(P);
  const Field* F = C->F();
  const Mat I = Mat::identity(F, sigma.dim());
  std::vector<Mat> gens;
  for (int i = 0; i < LQ.num_simples(); ++i) {
    const AffSimple& s = LQ.aff().simples()[i];
    ParMask comp = LQ.aff().components()[s.component];
    if ((comp & P) == comp) {
      gens.push_back(sigma.act_T(LQ.lift(i)));
    } else {
      // T*_s ↦ 1, so T_s ↦ 1 + σ(c_s)
      Mat g = I;
      for (const Tor& t : LQ.c_tori(i)) g += sigma.act_T(D.torus(t));
      gens.push_back(g);
    }
  }
  for (int j = 0; j < D.lattice_rank(); ++j) {
    Tor e{};
    e[j] = 1;
    gens.push_back(sigma.act_T(D.torus(e)));
  }
  const auto W2 = W.parabolic_elements(P2);
  for (const PElt& u : LQ.omega_gens()) {
    // u = a·n_{w_2} with a ∈ W_P(1), n_{w_2} ∈ W_{aff,P_2}(1): T_u = T^{Q*}_a (T^{Q*}_{n_{w_2}})^{-1}
    int w2 = -1;
    for (int v : W2)
      if (W.in_parabolic(W.mul(u.w, W.inv(v)), P)) w2 = v;
    if (w2 < 0) throw std::logic_error("extend: Ω_Q generator does not split");
    PElt a = D.mul(u, D.inv(D.n(w2)));
    gens.push_back(sigma.act(HP.star(a)));
  }
  FinModule m(C, Q, sigma.dim(), std::move(gens));
  m.validate();
  return m;
}

// ------------------------------------------------------------------ twists and duals

FinModule twist_iota(const FinModule& m) {
  const Datum& D = m.ctx()->D();
  std::vector<Mat> gens = m.gens();
  for (int i = 0; i < m.num_simples(); ++i) {
    Mat g = gens[i].scaled(m.F()->neg(1));
    for (const Tor& t : m.levi().c_tori(i)) g += m.act_T(D.torus(t));
    gens[i] = g;
  }
  FinModule r(m.ctx(), m.tag(), m.dim(), std::move(gens));
  r.validate();
  return r;
}

FinModule twist_sign(const FinModule& m) { return twist_sign(m, m.ctx()->full()); }

FinModule twist_sign(const FinModule& m, ParMask ambient) {
  const Levi& A = m.ctx()->D().levi(ambient);
  if ((m.tag() & ambient) != m.tag()) throw ModuleError("twist_sign", "ambient Levi does not contain the tag");
  std::vector<Mat> gens = m.gens();
  for (int g = 0; g < m.num_gens(); ++g) {
    PElt x = m.gen_elt(g);
    gens[g] = gens[g].scaled(sign_of(m.F(), A.length(x) - m.levi().length(x)));
  }
  FinModule r(m.ctx(), m.tag(), m.dim(), std::move(gens));
  r.validate();
  return r;
}

FinModule twist_by_n(const FinModule& sigma) {
  const CtxPtr& C = sigma.ctx();
  const Datum& D = C->D();
  const FiniteWeyl& W = D.W0();
  const ParMask P = sigma.tag();
  const ParMask P2 = W.neg_wG(P);
  PElt n = D.n(W.mul(W.longest(), W.longest(P)));
  PElt ninv = D.inv(n);
  FinModule shape = FinModule::zero(C, P2);
  std::vector<Mat> gens;
  for (int g = 0; g < shape.num_gens(); ++g) gens.push_back(sigma.act_T(D.mul(D.mul(ninv, shape.gen_elt(g)), n)));
  FinModule r(C, P2, sigma.dim(), std::move(gens));
  r.validate();
  return r;
}

FinModule dual(const FinModule& m) {
  const Datum& D = m.ctx()->D();
  std::vector<Mat> gens;
  for (int g = 0; g < m.num_gens(); ++g) gens.push_back(m.act_T(D.inv(m.gen_elt(g))).transpose());
  FinModule r(m.ctx(), m.tag(), m.dim(), std::move(gens));
  r.validate();
  return r;
}

// ------------------------------------------------------------------ submodules

bool is_stable(const FinModule& m, const Mat& U) {
  for (const Mat& g : m.gens())
    if (!contains(U, g * U)) return false;
  return true;
}

Mat generated_submodule(const FinModule& m, const Mat& V) {
  const int n = m.dim();
  SpanBuilder sb(m.F(), n);
  std::vector<std::vector<uint32_t>> basis;
  std::vector<std::vector<uint32_t>> todo;
  for (int j = 0; j < V.cols(); ++j) todo.push_back(col_vec(V, j));
  while (!todo.empty()) {
    auto v = todo.back();
    todo.pop_back();
    if (!sb.add(v)) continue;
    basis.push_back(v);
    Mat cv = from_cols(m.F(), n, {v});
    for (const Mat& g : m.gens()) todo.push_back(col_vec(g * cv, 0));
  }
  return from_cols(m.F(), n, basis);
}

namespace {

FinModule block_module(const FinModule& m, const Mat& U, bool sub) {
  Mat B = colspace(U);
  if (!is_stable(m, B)) throw ModuleError(sub ? "submodule" : "quotient", "subspace is not generator-stable");
  AdaptedBasis ab = adapted_basis(B, m.dim());
  const int k = ab.sub_dim, n = m.dim();
  std::vector<Mat> gens;
  for (const Mat& g : m.gens()) {
    Mat c = ab.Binv * g * ab.B;
    gens.push_back(sub ? c.block(0, 0, k, k) : c.block(k, k, n - k, n - k));
  }
  FinModule r(m.ctx(), m.tag(), sub ? k : n - k, std::move(gens));
  r.validate();
  return r;
}

}  // namespace

FinModule submodule(const FinModule& m, const Mat& U) { return block_module(m, U, true); }
FinModule quotient(const FinModule& m, const Mat& U) { return block_module(m, U, false); }

// ------------------------------------------------------------------ intertwiners

std::vector<Mat> intertwiners(const FinModule& m, const FinModule& n) {
  if (m.tag() != n.tag()) throw std::invalid_argument("intertwiners: algebra tag mismatch");
  const Field* F = m.F();
  const int dm = m.dim(), dn = n.dim();
  const int nv = dm * dn;
  if (nv == 0) return {};
  // unknown M(a,b) at index a·dm + b; equations (M·A_g − B_g·M)(a,b) = 0
  Mat sys(F, m.num_gens() * nv, nv);
  int row = 0;
  for (int g = 0; g < m.num_gens(); ++g) {
    const Mat& A = m.gen(g);
    const Mat& B = n.gen(g);
    for (int a = 0; a < dn; ++a)
      for (int b = 0; b < dm; ++b, ++row) {
        for (int c = 0; c < dm; ++c)
          if (A(c, b)) sys(row, a * dm + c) = F->add(sys(row, a * dm + c), A(c, b));
        for (int c = 0; c < dn; ++c)
          if (B(a, c)) sys(row, c * dm + b) = F->sub(sys(row, c * dm + b), B(a, c));
      }
  }
  Mat N = nullspace(sys);
  std::vector<Mat> out;
  for (int k = 0; k < N.cols(); ++k) {
    Mat M(F, dn, dm);
    for (int a = 0; a < dn; ++a)
      for (int b = 0; b < dm; ++b) M(a, b) = N(a * dm + b, k);
    out.push_back(M);
  }
  return out;
}

bool is_intertwiner(const FinModule& m, const FinModule& n, const Mat& M) {
  if (m.tag() != n.tag() || M.rows() != n.dim() || M.cols() != m.dim()) return false;
  for (int g = 0; g < m.num_gens(); ++g)
    if (M * m.gen(g) != n.gen(g) * M) return false;
  return true;
}

IsoResult is_isomorphic(const FinModule& m, const FinModule& n, uint64_t seed) {
  IsoResult r;
  if (m.tag() != n.tag() || m.dim() != n.dim()) return r;
  if (m.dim() == 0) {
    r.iso = true;
    return r;
  }
  auto basis = intertwiners(m, n);
  r.hom_dim = static_cast<int>(basis.size());
  if (basis.empty()) return r;
  const Field* F = m.F();
  const int q = F->q();
  const int k = r.hom_dim;
  auto combo = [&](const std::vector<uint32_t>& c) {
    Mat M(F, n.dim(), m.dim());
    for (int i = 0; i < k; ++i)
      if (c[i]) M += basis[i].scaled(c[i]);
    return M;
  };
  auto accept = [&](const Mat& M) {
    if (det(M) == 0) return false;
    r.iso = true;
    r.witness = M;
    return true;
  };
  if (accept(basis[0])) return r;
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 48; ++trial) {
    std::vector<uint32_t> c(k);
    for (auto& x : c) x = static_cast<uint32_t>(rng() % q);
    if (accept(combo(c))) return r;
  }
  double total = 1;
  for (int i = 0; i < k; ++i) total *= q;
  if (total <= 65536) {
    std::vector<uint32_t> c(k, 0);
    for (long long idx = 1; idx < static_cast<long long>(total); ++idx) {
      long long v = idx;
      for (int i = 0; i < k; ++i, v /= q) c[i] = static_cast<uint32_t>(v % q);
      if (accept(combo(c))) return r;
    }
    // no invertible element over F_q; one may exist over an extension when k > 1
    r.conclusive = k == 1;
    return r;
  }
  r.conclusive = false;
  return r;
}

SimplicityResult is_simple(const FinModule& m, uint64_t seed) {
  SimplicityResult res;
  const int d = m.dim();
  if (d == 0) return res;
  const Field* F = m.F();
  // span of all products of generator matrices
  std::vector<Mat> alg;
  SpanBuilder sb(F, d * d);
  std::vector<Mat> todo{Mat::identity(F, d)};
  while (!todo.empty() && static_cast<int>(alg.size()) < d * d) {
    Mat M = todo.back();
    todo.pop_back();
    if (!sb.add(M.data())) continue;
    alg.push_back(M);
    for (const Mat& g : m.gens()) todo.push_back(g * M);
  }
  if (static_cast<int>(alg.size()) == d * d) {
    res.simple = res.absolutely = true;
    return res;
  }
  auto closure_rank = [&](const Mat& v) {
    Mat cols(F, d, 0);
    for (const Mat& A : alg) cols = hstack(cols, A * v);
    return colspace(cols);
  };
  auto proper = [&](const Mat& v) {
    Mat U = closure_rank(v);
    if (U.cols() < d) {
      res.witness = U;
      return true;
    }
    return false;
  };
  for (int i = 0; i < d; ++i) {
    Mat e(F, d, 1);
    e(i, 0) = 1;
    if (proper(e)) return res;
  }
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 64; ++trial) {
    Mat v(F, d, 1);
    bool nz = false;
    for (int i = 0; i < d; ++i) {
      v(i, 0) = static_cast<uint32_t>(rng() % F->q());
      nz |= v(i, 0) != 0;
    }
    if (nz && proper(v)) return res;
  }
  double total = 1;
  for (int i = 0; i < d; ++i) total *= F->q();
  if (total > 65536) {
    res.simple = true;
    res.conclusive = false;
    return res;
  }
  // every line, normalized with leading coordinate 1
  const int q = F->q();
  for (long long idx = 1; idx < static_cast<long long>(total); ++idx) {
    Mat v(F, d, 1);
    long long t = idx;
    for (int i = 0; i < d; ++i, t /= q) v(i, 0) = static_cast<uint32_t>(t % q);
    int lead = 0;
    while (v(lead, 0) == 0) ++lead;
    if (v(lead, 0) != 1) continue;
    if (proper(v)) return res;
  }
  res.simple = true;
  return res;
}

}  // namespace prohecke
