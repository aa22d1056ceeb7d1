#include "prohecke/propw.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace prohecke {

// ----------------------------------------------------------------- Datum

Datum::Datum(const RootDatum& rd, int p, int f) : F_(std::make_shared<Field>(p, f)), W_(rd) {
  const int N = W_.size();
  tau_.assign(size_t(N) * N, Tor{});
  for (int w1 = 0; w1 < N; ++w1)
    for (int w2 = 0; w2 < N; ++w2) {
      // (n_v t) n_s = n_v n_s · s(t), and n_v n_s = n_{vs} or n_{vs} α_s^∨(-1)
      int v = w1;
      Tor t{};
      for (int i : W_.normal_form(w2)) {
        int s = W_.simple(i);
        t = tor_act(s, t);
        int vs = W_.mul(v, s);
        if (W_.length(vs) < W_.length(v)) t = tor_add(t, coroot_minus_one(W_.simple_root_index(i)));
        v = vs;
      }
      tau_[size_t(w1) * N + w2] = t;
    }
  const ParMask full = rd.full_mask();
  levis_[full] = std::make_unique<Levi>(*this, full, nullptr);
  for (int i = 0; i < levis_[full]->num_simples(); ++i) nvars_ = std::max(nvars_, levis_[full]->orbit_var(i) + 1);
  for (ParMask J = 0; J < full; ++J) levis_[J] = std::make_unique<Levi>(*this, J, levis_[full].get());
}

std::shared_ptr<const Datum> Datum::make(const std::string& preset, int p, int f) {
  return std::make_shared<const Datum>(RootDatum::preset(preset), p, f);
}

Tor Datum::reduce(const Tor& t) const {
  Tor r{};
  int m = tmod();
  for (int i = 0; i < lattice_rank(); ++i) r[i] = ((t[i] % m) + m) % m;
  return r;
}

Tor Datum::tor_add(const Tor& a, const Tor& b) const {
  Tor r;
  for (int i = 0; i < kMaxLattice; ++i) r[i] = a[i] + b[i];
  return reduce(r);
}

Tor Datum::tor_neg(const Tor& a) const {
  Tor r;
  for (int i = 0; i < kMaxLattice; ++i) r[i] = -a[i];
  return reduce(r);
}

Tor Datum::tor_act(int w, const Tor& t) const { return reduce(W_.act(w, t)); }

PElt Datum::act_lambda(int w, const PElt& lam) const {
  if (!lam.in_lambda()) throw std::invalid_argument("act_lambda: element not in Λ(1)");
  return PElt{0, W_.act(w, lam.x), tor_act(w, lam.t)};
}

Tor Datum::coroot_torus(int root, int a) const { return reduce(cow_scale(W_.coroot(root), a)); }

Tor Datum::coroot_minus_one(int root) const {
  if (q() % 2 == 0) return Tor{};  // -1 = 1 in characteristic 2
  return coroot_torus(root, tmod() / 2);
}

PElt Datum::mul(const PElt& a, const PElt& b) const {
  int binv = W_.inv(b.w);
  PElt r;
  r.w = W_.mul(a.w, b.w);
  r.x = cow_add(W_.act(binv, a.x), b.x);
  r.t = tor_add(tor_add(cocycle(a.w, b.w), tor_act(binv, a.t)), b.t);
  return r;
}

PElt Datum::inv(const PElt& a) const {
  PElt r;
  r.w = W_.inv(a.w);
  r.x = cow_neg(W_.act(a.w, a.x));
  r.t = tor_neg(tor_add(cocycle(a.w, r.w), tor_act(a.w, a.t)));
  return r;
}

bool Datum::is_P_sign(const PElt& a, ParMask P, int sign) const { return levi(P).is_sign(a, sign); }

std::vector<PElt> Datum::orbit_of(const PElt& lam, int cap) const {
  if (!lam.in_lambda()) throw std::invalid_argument("orbit_of: element not in Λ(1)");
  std::set<PElt> seen{lam};
  std::vector<PElt> todo{lam};
  while (!todo.empty()) {
    PElt x = todo.back();
    todo.pop_back();
    std::vector<PElt> nbrs;
    for (int i = 0; i < rank(); ++i) nbrs.push_back(act_lambda(W_.simple(i), x));
    for (auto& u : G().omega_gens()) nbrs.push_back(conj(u, x));
    for (auto& y : nbrs)
      if (seen.insert(y).second) {
        if (static_cast<int>(seen.size()) > cap) throw std::runtime_error("orbit_of: orbit exceeds cap");
        todo.push_back(y);
      }
  }
  std::vector<PElt> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const PElt& a, const PElt& b) { return a.x != b.x ? a.x < b.x : a.t < b.t; });
  return out;
}

bool Datum::bruhat_leq(const PElt& a, const PElt& b) const {
  return in_aff(mul(a, inv(b))) && G().aff().bruhat_leq(a.image(), b.image());
}

std::string Datum::str(const Tor& t) const {
  std::string s;
  for (int i = 0; i < lattice_rank(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s;
}

std::string Datum::str(const PElt& a) const {
  std::string s = "n[" + W_.word_str(a.w) + "](";
  for (int i = 0; i < lattice_rank(); ++i) s += (i ? "," : "") + std::to_string(a.x[i]);
  return s + "|" + str(a.t) + ")";
}

// ------------------------------------------------------------------ Levi

Levi::Levi(const Datum& D, ParMask J, const Levi* full) : D_(&D), J_(J), aff_(D.W0(), J) {
  const FiniteWeyl& W = D.W0();
  const int k = aff_.num_simples();
  for (int i = 0; i < k; ++i) {
    const AffSimple& s = aff_.simples()[i];
    PElt l;
    if (s.finite >= 0) {
      l = D.n(W.simple(s.finite));
    } else {
      // transport n_{s_j} to θ by a Tits lift n_v with v(α_j) = θ, v ∈ W_{0,C}
      ParMask C = aff_.components()[s.component];
      bool done = false;
      for (int v = 0; v < W.size() && !done; ++v) {
        if (!W.in_parabolic(v, C)) continue;
        for (int j = 0; j < D.rank() && !done; ++j)
          if ((C >> j & 1) && W.act_root_index(v, W.simple_root_index(j)) == s.root) {
            PElt nv = D.n(v);
            l = D.mul(D.mul(D.mul(nv, D.n(W.simple(j))), D.inv(nv)), D.lambda(cow_neg(W.coroot(s.root))));
            done = true;
          }
      }
      if (!done) throw std::logic_error("Levi: no conjugate of a simple root equals θ");
    }
    if (l.image() != s.elt) throw std::logic_error("Levi: standard lift has the wrong image");
    lifts_.push_back(l);
    lift_inv_.push_back(D.inv(l));
    std::vector<Tor> c;
    for (int a = 0; a < D.tmod(); ++a) c.push_back(D.coroot_torus(s.root, a));
    c_.push_back(c);
  }

  // Ω_J(1) generators: length-zero parts of the basis translations
  const int r = D.lattice_rank();
  std::map<int, int> piv;
  for (auto [c, d] : aff_.hnf_pivots()) piv[c] = d;
  for (int col = 0; col < r; ++col) {
    if (piv.count(col) && piv[col] == 1) continue;
    Cow e{};
    e[col] = 1;
    PElt cur = D.lambda(e);
    int l = length(cur);
    while (l > 0) {
      bool found = false;
      for (int i = 0; i < k && !found; ++i) {
        PElt c = D.mul(lift_inv_[i], cur);
        int lc = length(c);
        if (lc < l) { cur = c; l = lc; found = true; }
      }
      if (!found) throw std::logic_error("Levi: no descent");
    }
    omega_gens_.push_back(cur);
    omega_cols_.push_back(col);
    int order = 0;
    for (int m = 1; m <= 64 && !order; ++m) {
      Cow me{};
      me[col] = m;
      if (aff_.reduce_mod_coroots(me) == Cow{}) order = m;
    }
    omega_orders_.push_back(order);
  }

  // the subgroup of Z_κ generated by α^∨(k^*), α ∈ Δ_J
  std::set<Tor> sub{Tor{}};
  std::vector<Tor> todo{Tor{}};
  while (!todo.empty()) {
    Tor t = todo.back();
    todo.pop_back();
    for (int i = 0; i < D.rank(); ++i) {
      if (!(J >> i & 1)) continue;
      Tor u = D.tor_add(t, D.coroot_torus(W.simple_root_index(i), 1));
      if (sub.insert(u).second) todo.push_back(u);
    }
  }
  coroot_torus_.assign(sub.begin(), sub.end());

  // orbit variables of the parameters q_s
  orbit_var_.assign(k, 0);
  if (!full) {
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (a != b && aff_.coxeter_m(a, b) % 2 == 1) unite(a, b);
    for (auto& u : omega_gens_)
      for (int a = 0; a < k; ++a) {
        int b = simple_index_of(D.conj(u, lifts_[a]));
        if (b < 0) throw std::logic_error("Levi: Ω does not normalize S_aff");
        unite(a, b);
      }
    std::map<int, int> ids;
    for (int a = 0; a < k; ++a) {
      int root = find(a);
      if (!ids.count(root)) {
        int next = static_cast<int>(ids.size());
        ids[root] = next;
      }
      orbit_var_[a] = ids[root];
    }
  } else {
    const AffineSystem& G = full->aff();
    for (int a = 0; a < k; ++a) {
      AffElt rf = aff_.simples()[a].elt;
      for (int guard = 0; guard < 1000; ++guard) {
        int hit = -1;
        for (int b = 0; b < G.num_simples(); ++b)
          if (G.simples()[b].elt == rf) hit = b;
        if (hit >= 0) {
          orbit_var_[a] = full->orbit_var(hit);
          break;
        }
        int l = G.length(rf);
        bool moved = false;
        for (int b = 0; b < G.num_simples() && !moved; ++b) {
          const AffElt& s = G.simples()[b].elt;
          AffElt c = G.mul(G.mul(s, rf), s);
          if (G.length(c) < l) { rf = c; moved = true; }
        }
        if (!moved) throw std::logic_error("Levi: cannot conjugate a reflection into S_aff");
      }
    }
  }
}

int Levi::simple_index_of(const PElt& a) const {
  for (int i = 0; i < num_simples(); ++i)
    if (aff_.simples()[i].elt == a.image()) return i;
  return -1;
}

Decomp Levi::decompose_length_zero(const PElt& u) const {
  Cow xb = aff_.reduce_mod_coroots(u.x);
  Decomp d;
  PElt acc = D_->identity();
  for (size_t g = 0; g < omega_gens_.size(); ++g) {
    int e = xb[omega_cols_[g]];
    d.omega_exps.push_back(e);
    PElt base = e >= 0 ? omega_gens_[g] : D_->inv(omega_gens_[g]);
    for (int j = 0; j < std::abs(e); ++j) acc = D_->mul(acc, base);
  }
  PElt t = D_->mul(D_->inv(acc), u);
  if (t.w != 0 || t.x != Cow{}) throw std::logic_error("Levi: length-zero element outside Ω_J(1) normal form");
  d.t = t.t;
  return d;
}

Decomp Levi::decompose(const PElt& a, bool reverse_descents) const {
  if (!contains(a)) throw std::invalid_argument("Levi::decompose: element outside W_J(1)");
  std::vector<int> letters;
  PElt cur = a;
  int l = length(cur);
  const int k = num_simples();
  while (l > 0) {
    bool found = false;
    for (int j = 0; j < k && !found; ++j) {
      int i = reverse_descents ? k - 1 - j : j;
      PElt c = D_->mul(lift_inv_[i], cur);
      int lc = length(c);
      if (lc < l) {
        letters.push_back(i);
        cur = c;
        l = lc;
        found = true;
      }
    }
    if (!found) throw std::logic_error("Levi::decompose: no descent");
  }
  Decomp d = decompose_length_zero(cur);
  d.letters = std::move(letters);
  return d;
}

PElt Levi::compose(const Decomp& d) const {
  PElt a = D_->identity();
  for (int i : d.letters) a = D_->mul(a, lifts_[i]);
  for (size_t g = 0; g < omega_gens_.size(); ++g) {
    int e = d.omega_exps[g];
    PElt base = e >= 0 ? omega_gens_[g] : D_->inv(omega_gens_[g]);
    for (int j = 0; j < std::abs(e); ++j) a = D_->mul(a, base);
  }
  return D_->mul(a, D_->torus(d.t));
}

bool Levi::is_sign(const PElt& a, int sign) const {
  if (!contains(a)) throw std::invalid_argument("is_P_sign: finite part outside W_{0,P}");
  const FiniteWeyl& W = D_->W0();
  for (int b : W.positive_roots(D_->root_datum().full_mask())) {
    if (W.root_in(b, J_)) continue;
    int p = D_->root_datum().pair(W.root_functional(b), a.x);
    if (sign < 0 ? p < 0 : p > 0) return false;
  }
  return true;
}

PElt Levi::central_lambda(int sign) const {
  const int r = D_->lattice_rank();
  const int B = 4;
  std::vector<Cow> cands;
  Cow x{};
  std::function<void(int)> gen = [&](int i) {
    if (i == r) { cands.push_back(x); return; }
    for (int v = -B; v <= B; ++v) { x[i] = v; gen(i + 1); }
    x[i] = 0;
  };
  gen(0);
  std::stable_sort(cands.begin(), cands.end(), [](const Cow& a, const Cow& b) {
    int na = 0, nb = 0;
    for (int i = 0; i < kMaxLattice; ++i) { na += std::abs(a[i]); nb += std::abs(b[i]); }
    return na < nb;
  });
  const FiniteWeyl& W = D_->W0();
  const RootDatum& rd = D_->root_datum();
  for (const Cow& c : cands) {
    bool ok = true;
    for (int i = 0; i < rd.rank && ok; ++i)
      if ((J_ >> i & 1) && rd.pair(rd.simple_roots[i], c) != 0) ok = false;
    for (int b : W.positive_roots(rd.full_mask())) {
      if (!ok) break;
      if (W.root_in(b, J_)) continue;
      int p = rd.pair(W.root_functional(b), c);
      if (sign < 0 ? p <= 0 : p >= 0) ok = false;
    }
    if (ok) return D_->lambda(c);
  }
  throw std::runtime_error("central_lambda: search cap exceeded");
}

bool Levi::in_aff(const PElt& a) const {
  if (!contains(a)) return false;
  if (aff_.reduce_mod_coroots(a.x) != Cow{}) return false;
  Decomp d = decompose(a);
  return std::binary_search(coroot_torus_.begin(), coroot_torus_.end(), d.t);
}

}  // namespace prohecke
