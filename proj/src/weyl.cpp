#include "prohecke/weyl.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace prohecke {

Cow cow_add(const Cow& a, const Cow& b) {
  Cow r;
  for (int i = 0; i < kMaxLattice; ++i) r[i] = a[i] + b[i];
  return r;
}
Cow cow_sub(const Cow& a, const Cow& b) {
  Cow r;
  for (int i = 0; i < kMaxLattice; ++i) r[i] = a[i] - b[i];
  return r;
}
Cow cow_neg(const Cow& a) { return cow_scale(a, -1); }
Cow cow_scale(const Cow& a, int k) {
  Cow r;
  for (int i = 0; i < kMaxLattice; ++i) r[i] = a[i] * k;
  return r;
}

// ---------------------------------------------------------------- RootDatum

RootDatum RootDatum::preset(const std::string& name) {
  RootDatum rd;
  rd.name = name;
  if (name == "SL2") {
    rd.rank = 1; rd.lattice_rank = 1;
    rd.simple_roots = {Cow{2, 0, 0}};
    rd.simple_coroots = {Cow{1, 0, 0}};
  } else if (name == "PGL2") {
    rd.rank = 1; rd.lattice_rank = 1;
    rd.simple_roots = {Cow{1, 0, 0}};
    rd.simple_coroots = {Cow{2, 0, 0}};
  } else if (name == "GL2") {
    rd.rank = 1; rd.lattice_rank = 2;
    rd.simple_roots = {Cow{1, -1, 0}};
    rd.simple_coroots = {Cow{1, -1, 0}};
  } else if (name == "SL3") {
    // X_* is the coroot lattice with basis α_1^∨, α_2^∨
    rd.rank = 2; rd.lattice_rank = 2;
    rd.simple_roots = {Cow{2, -1, 0}, Cow{-1, 2, 0}};
    rd.simple_coroots = {Cow{1, 0, 0}, Cow{0, 1, 0}};
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  rd.cartan.assign(rd.rank, std::vector<int>(rd.rank));
  for (int i = 0; i < rd.rank; ++i)
    for (int j = 0; j < rd.rank; ++j) rd.cartan[i][j] = rd.pair(rd.simple_roots[j], rd.simple_coroots[i]);
  rd.validate();
  return rd;
}

std::vector<std::string> RootDatum::preset_names() { return {"GL2", "PGL2", "SL2", "SL3"}; }

int RootDatum::pair(const Cow& f, const Cow& x) const {
  int s = 0;
  for (int k = 0; k < lattice_rank; ++k) s += f[k] * x[k];
  return s;
}

void RootDatum::validate() const {
  if (rank < 0 || lattice_rank < 1 || lattice_rank > kMaxLattice)
    throw std::invalid_argument("RootDatum: bad ranks");
  if (static_cast<int>(simple_roots.size()) != rank || static_cast<int>(simple_coroots.size()) != rank ||
      static_cast<int>(cartan.size()) != rank)
    throw std::invalid_argument("RootDatum: size mismatch");
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      int a = cartan[i][j];
      if (a != pair(simple_roots[j], simple_coroots[i]))
        throw std::invalid_argument("RootDatum: cartan does not match roots and coroots");
      if (i == j && a != 2) throw std::invalid_argument("RootDatum: cartan diagonal must be 2");
      if (i != j && a > 0) throw std::invalid_argument("RootDatum: positive off-diagonal cartan entry");
      if (i != j && (a == 0) != (cartan[j][i] == 0))
        throw std::invalid_argument("RootDatum: cartan zero pattern not symmetric");
    }
}

// --------------------------------------------------------------- FiniteWeyl

FiniteWeyl::FiniteWeyl(const RootDatum& rd) : rd_(rd) {
  rd_.validate();
  const int n = rd_.rank, r = rd_.lattice_rank;

  // simple reflection on root coordinates: β ↦ β − <β, α_j^∨> α_j
  auto reflect_root = [&](int j, const RootCoords& c) {
    int pr = 0;
    for (int i = 0; i < n; ++i) pr += c[i] * rd_.cartan[j][i];
    RootCoords d = c;
    d[j] -= pr;
    return d;
  };
  auto reflect_cow = [&](int j, const Cow& x) {
    return cow_sub(x, cow_scale(rd_.simple_coroots[j], rd_.pair(rd_.simple_roots[j], x)));
  };

  // roots by closure from the simple roots, together with their coroots
  std::map<RootCoords, Cow> found;
  std::deque<RootCoords> queue;
  for (int i = 0; i < n; ++i) {
    RootCoords e(n, 0);
    e[i] = 1;
    found[e] = rd_.simple_coroots[i];
    queue.push_back(e);
  }
  while (!queue.empty()) {
    RootCoords c = queue.front();
    queue.pop_front();
    Cow cv = found[c];
    for (int j = 0; j < n; ++j) {
      RootCoords d = reflect_root(j, c);
      if (!found.count(d)) {
        if (found.size() > static_cast<size_t>(kCap)) throw std::invalid_argument("FiniteWeyl: root system is not finite");
        found[d] = reflect_cow(j, cv);
        queue.push_back(d);
      }
    }
  }
  auto height = [](const RootCoords& c) { return std::accumulate(c.begin(), c.end(), 0); };
  std::vector<RootCoords> pos, neg;
  for (auto& [c, cv] : found) {
    bool p = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
    bool m = std::all_of(c.begin(), c.end(), [](int x) { return x <= 0; });
    if (!p && !m) throw std::invalid_argument("FiniteWeyl: root with mixed signs");
    (p ? pos : neg).push_back(c);
  }
  auto cmp = [&](const RootCoords& a, const RootCoords& b) {
    int ha = std::abs(height(a)), hb = std::abs(height(b));
    if (ha != hb) return ha < hb;
    return a > b;  // so e_1 precedes e_2
  };
  std::sort(pos.begin(), pos.end(), cmp);
  // negatives in the order of their negations
  neg.clear();
  for (auto& c : pos) {
    RootCoords d = c;
    for (auto& x : d) x = -x;
    neg.push_back(d);
  }
  for (auto& c : pos) roots_.push_back(c);
  for (auto& c : neg) roots_.push_back(c);
  const int R = num_roots();
  for (int k = 0; k < R; ++k) {
    root_lookup_[roots_[k]] = k;
    Cow f{};
    for (int i = 0; i < n; ++i) f = cow_add(f, cow_scale(rd_.simple_roots[i], roots_[k][i]));
    root_fun_.push_back(f);
    coroot_.push_back(found[roots_[k]]);
    root_pos_.push_back(k < R / 2);
  }
  for (int k = 0; k < R; ++k) {
    RootCoords d = roots_[k];
    for (auto& x : d) x = -x;
    root_neg_.push_back(root_lookup_.at(d));
  }
  for (int i = 0; i < n; ++i) {
    RootCoords e(n, 0);
    e[i] = 1;
    simple_root_idx_.push_back(root_lookup_.at(e));
  }

  // group elements as permutations of the roots (faithful when Σ ≠ ∅)
  std::vector<std::vector<int>> gen_perm(n, std::vector<int>(R));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < R; ++k) gen_perm[j][k] = root_lookup_.at(reflect_root(j, roots_[k]));
  using XMat = std::array<int, kMaxLattice * kMaxLattice>;
  std::vector<XMat> gen_x(n);
  for (int j = 0; j < n; ++j) {
    XMat m{};
    for (int c = 0; c < r; ++c) {
      Cow e{};
      e[c] = 1;
      Cow im = reflect_cow(j, e);
      for (int row = 0; row < r; ++row) m[row * kMaxLattice + c] = im[row];
    }
    gen_x[j] = m;
  }
  auto xmul = [&](const XMat& a, const XMat& b) {
    XMat c{};
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < r; ++k)
        for (int j = 0; j < r; ++j) c[i * kMaxLattice + j] += a[i * kMaxLattice + k] * b[k * kMaxLattice + j];
    return c;
  };

  std::vector<std::vector<int>> perms;
  std::map<std::vector<int>, int> index;
  std::vector<int> idp(R);
  std::iota(idp.begin(), idp.end(), 0);
  XMat idx{};
  for (int i = 0; i < r; ++i) idx[i * kMaxLattice + i] = 1;
  perms.push_back(idp);
  index[idp] = 0;
  xmat_.push_back(idx);
  len_.push_back(0);
  for (size_t head = 0; head < perms.size(); ++head) {
    for (int j = 0; j < n; ++j) {
      std::vector<int> p(R);
      for (int k = 0; k < R; ++k) p[k] = perms[head][gen_perm[j][k]];  // w s_j
      if (index.count(p)) continue;
      if (static_cast<int>(perms.size()) >= kCap) throw std::invalid_argument("FiniteWeyl: group exceeds enumeration cap");
      index[p] = static_cast<int>(perms.size());
      perms.push_back(p);
      xmat_.push_back(xmul(xmat_[head], gen_x[j]));
      len_.push_back(len_[head] + 1);
    }
  }
  const int N = size();
  if (N > 50000) throw std::invalid_argument("FiniteWeyl: group too large for a multiplication table");
  root_perm_.assign(size_t(N) * R, 0);
  for (int w = 0; w < N; ++w)
    for (int k = 0; k < R; ++k) root_perm_[size_t(w) * R + k] = perms[w][k];
  mul_.assign(size_t(N) * N, 0);
  inv_.assign(N, 0);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      std::vector<int> p(R);
      for (int k = 0; k < R; ++k) p[k] = perms[a][perms[b][k]];
      int c = R ? index.at(p) : 0;
      mul_[size_t(a) * N + b] = c;
      if (c == 0) inv_[a] = b;
    }
  for (int j = 0; j < n; ++j) simple_.push_back(R ? index.at(gen_perm[j]) : 0);

  // shortlex normal forms: leading letter = smallest left descent
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return len_[a] < len_[b]; });
  nf_.assign(N, {});
  for (int w : order) {
    if (len_[w] == 0) continue;
    for (int i = 0; i < n; ++i)
      if (is_left_descent(w, i)) {
        nf_[w] = {i};
        const auto& tail = nf_[mul(simple_[i], w)];
        nf_[w].insert(nf_[w].end(), tail.begin(), tail.end());
        break;
      }
  }
  longest_ = static_cast<int>(std::max_element(len_.begin(), len_.end()) - len_.begin());

  // Bruhat order by the lifting property on a left descent
  bruhat_.assign(size_t(N) * N, 0);
  for (int w : order) {
    for (int v = 0; v < N; ++v) {
      bool le;
      if (len_[w] == 0) {
        le = (v == w);
      } else {
        int s = simple_[nf_[w][0]];
        int sw = mul(s, w), sv = mul(s, v);
        le = len_[sv] < len_[v] ? bruhat_leq(sv, sw) : bruhat_leq(v, sw);
      }
      bruhat_[size_t(v) * N + w] = le;
    }
  }

  // reflections s_β = w s_i w^{-1} for β = w(α_i)
  refl_.assign(R, -1);
  for (int w = 0; w < N; ++w)
    for (int i = 0; i < n; ++i) {
      int k = act_root_index(w, simple_root_idx_[i]);
      if (refl_[k] < 0) refl_[k] = mul(mul(w, simple_[i]), inv_[w]);
    }
  longest_cache_.assign(size_t(1) << n, -1);
}

int FiniteWeyl::longest(ParMask J) const {
  int best = 0;
  for (int w = 0; w < size(); ++w)
    if (in_parabolic(w, J) && len_[w] > len_[best]) best = w;
  return best;
}

int FiniteWeyl::from_word(const std::vector<int>& word) const {
  int w = 0;
  for (int i : word) {
    if (i < 0 || i >= rd_.rank) throw std::out_of_range("generator index out of range");
    w = mul(w, simple_[i]);
  }
  return w;
}

int FiniteWeyl::root_index(const RootCoords& c) const {
  auto it = root_lookup_.find(c);
  return it == root_lookup_.end() ? -1 : it->second;
}

RootCoords FiniteWeyl::act_on_root(int w, const RootCoords& c) const {
  const int n = rd_.rank;
  if (static_cast<int>(c.size()) != n) throw std::invalid_argument("act_on_root: wrong length");
  RootCoords out(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!c[i]) continue;
    const RootCoords& im = roots_[act_root_index(w, simple_root_idx_[i])];
    for (int j = 0; j < n; ++j) out[j] += c[i] * im[j];
  }
  return out;
}

bool FiniteWeyl::root_in(int k, ParMask J) const {
  for (int i = 0; i < rd_.rank; ++i)
    if (roots_[k][i] && !(J >> i & 1)) return false;
  return true;
}

int FiniteWeyl::root_height(int k) const { return std::accumulate(roots_[k].begin(), roots_[k].end(), 0); }

std::vector<int> FiniteWeyl::positive_roots(ParMask J) const {
  std::vector<int> out;
  for (int k = 0; k < num_roots(); ++k)
    if (root_pos_[k] && root_in(k, J)) out.push_back(k);
  return out;
}

int FiniteWeyl::highest_root(ParMask C) const {
  int best = -1;
  for (int k : positive_roots(C))
    if (best < 0 || root_height(k) > root_height(best)) best = k;
  return best;
}

Cow FiniteWeyl::act(int w, const Cow& x) const {
  Cow y{};
  const int r = rd_.lattice_rank;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) y[i] += xmat_[w][i * kMaxLattice + j] * x[j];
  return y;
}

bool FiniteWeyl::in_parabolic(int w, ParMask J) const {
  for (int i : nf_[w])
    if (!(J >> i & 1)) return false;
  return true;
}

std::vector<int> FiniteWeyl::parabolic_elements(ParMask J) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w)
    if (in_parabolic(w, J)) out.push_back(w);
  return out;
}

std::vector<int> FiniteWeyl::min_coset_reps(ParMask J, bool left_side) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w) {
    int u = left_side ? inv_[w] : w;
    bool ok = true;
    for (int i = 0; i < rd_.rank && ok; ++i)
      if ((J >> i & 1) && !root_pos_[act_root_index(u, simple_root_idx_[i])]) ok = false;
    if (ok) out.push_back(w);
  }
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    if (len_[a] != len_[b]) return len_[a] < len_[b];
    return nf_[a] < nf_[b];
  });
  return out;
}

ParMask FiniteWeyl::delta_w(int w) const {
  ParMask m = 0;
  for (int i = 0; i < rd_.rank; ++i)
    if (root_pos_[act_root_index(w, simple_root_idx_[i])]) m |= ParMask(1) << i;
  return m;
}

std::vector<ParMask> FiniteWeyl::components(ParMask J) const {
  std::vector<ParMask> out;
  ParMask seen = 0;
  for (int i = 0; i < rd_.rank; ++i) {
    if (!(J >> i & 1) || (seen >> i & 1)) continue;
    ParMask comp = ParMask(1) << i;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < rd_.rank; ++a)
        for (int b = 0; b < rd_.rank; ++b)
          if ((comp >> a & 1) && (J >> b & 1) && !(comp >> b & 1) && rd_.cartan[a][b] != 0) {
            comp |= ParMask(1) << b;
            grew = true;
          }
    }
    seen |= comp;
    out.push_back(comp);
  }
  return out;
}

ParMask FiniteWeyl::neg_wG(ParMask J) const {
  ParMask out = 0;
  for (int i = 0; i < rd_.rank; ++i) {
    if (!(J >> i & 1)) continue;
    int k = root_neg_[act_root_index(longest_, simple_root_idx_[i])];
    for (int j = 0; j < rd_.rank; ++j)
      if (simple_root_idx_[j] == k) out |= ParMask(1) << j;
  }
  return out;
}

int FiniteWeyl::mobius_deodhar(int v, int w, ParMask J) const {
  auto reps = min_coset_reps(J);
  if (!std::count(reps.begin(), reps.end(), v) || !std::count(reps.begin(), reps.end(), w))
    throw std::invalid_argument("mobius: arguments must lie in W_0^J");
  if (!bruhat_leq(v, w)) return 0;
  for (int i = 0; i < rd_.rank; ++i)
    if ((J >> i & 1) && bruhat_leq(mul(v, simple_[i]), w)) return 0;
  return (len_[v] + len_[w]) % 2 ? -1 : 1;
}

int FiniteWeyl::mobius_bruteforce(int v, int w, ParMask J) const {
  auto reps = min_coset_reps(J);
  if (!std::count(reps.begin(), reps.end(), v) || !std::count(reps.begin(), reps.end(), w))
    throw std::invalid_argument("mobius: arguments must lie in W_0^J");
  std::map<int, int> mu;  // μ(v, u) for u in the interval
  std::vector<int> interval;
  for (int u : reps)
    if (bruhat_leq(v, u) && bruhat_leq(u, w)) interval.push_back(u);
  if (interval.empty()) return 0;
  // reps are sorted by length, which is a linear extension of Bruhat order
  for (int u : interval) {
    if (u == v) {
      mu[u] = 1;
      continue;
    }
    int s = 0;
    for (auto& [x, m] : mu)
      if (bruhat_leq(x, u)) s += m;
    mu[u] = -s;
  }
  return mu.count(w) ? mu[w] : 0;
}

std::string FiniteWeyl::word_str(int w) const {
  if (nf_[w].empty()) return "e";
  std::string s;
  for (int i : nf_[w]) s += "s" + std::to_string(i + 1);
  return s;
}

// ------------------------------------------------------------- AffineSystem

AffineSystem::AffineSystem(const FiniteWeyl& W, ParMask J) : W_(&W), J_(J) {
  comps_ = W.components(J);
  pos_roots_ = W.positive_roots(J);
  for (size_t c = 0; c < comps_.size(); ++c) {
    int th = W.highest_root(comps_[c]);
    AffSimple s;
    s.component = static_cast<int>(c);
    s.root = th;
    s.gamma_sign = +1;
    s.elt = AffElt{W.reflection(th), cow_neg(W.coroot(th))};
    simples_.push_back(s);
  }
  for (int i = 0; i < W.datum().rank; ++i) {
    if (!(J >> i & 1)) continue;
    AffSimple s;
    s.finite = i;
    for (size_t c = 0; c < comps_.size(); ++c)
      if (comps_[c] >> i & 1) s.component = static_cast<int>(c);
    s.root = W.simple_root_index(i);
    s.gamma_sign = -1;
    s.elt = AffElt{W.simple(i), Cow{}};
    simples_.push_back(s);
  }
  const int k = num_simples();
  m_.assign(k, std::vector<int>(k, 1));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (a == b) continue;
      AffElt ab = mul(simples_[a].elt, simples_[b].elt), p = ab;
      int m = 0;
      for (int e = 1; e <= 6; ++e) {
        if (p == AffElt{}) { m = e; break; }
        p = mul(p, ab);
      }
      m_[a][b] = m;  // 0 = infinite order
    }

  // echelon basis of ZΣ_J^∨ for canonical Ω_J-classes
  const int r = W.datum().lattice_rank;
  std::vector<Cow> rows;
  for (int i = 0; i < W.datum().rank; ++i)
    if (J >> i & 1) rows.push_back(W.datum().simple_coroots[i]);
  size_t top = 0;
  for (int c = 0; c < r && top < rows.size(); ++c) {
    for (;;) {
      size_t best = rows.size();
      for (size_t i = top; i < rows.size(); ++i)
        if (rows[i][c] && (best == rows.size() || std::abs(rows[i][c]) < std::abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (size_t i = top + 1; i < rows.size(); ++i) {
        if (!rows[i][c]) continue;
        int f = rows[i][c] / rows[top][c];
        rows[i] = cow_sub(rows[i], cow_scale(rows[top], f));
        if (rows[i][c]) done = false;
      }
      if (done) break;
    }
    if (!rows[top][c]) continue;
    if (rows[top][c] < 0) rows[top] = cow_neg(rows[top]);
    hnf_.push_back(rows[top]);
    pivots_.push_back({c, rows[top][c]});
    ++top;
  }
}

AffElt AffineSystem::mul(const AffElt& a, const AffElt& b) const {
  return AffElt{W_->mul(a.w, b.w), cow_add(W_->act(W_->inv(b.w), a.x), b.x)};
}

AffElt AffineSystem::inv(const AffElt& a) const { return AffElt{W_->inv(a.w), cow_neg(W_->act(a.w, a.x))}; }

int AffineSystem::length(const AffElt& a) const {
  const RootDatum& rd = W_->datum();
  int l = 0;
  for (int g : pos_roots_) {
    int p = rd.pair(W_->root_functional(g), a.x);
    if (W_->root_positive(W_->act_root_index(a.w, g)))
      l += std::abs(p);
    else
      l += std::abs(p + 1);
  }
  return l;
}

std::vector<int> AffineSystem::reduced_word(const AffElt& a, AffElt* rest) const {
  std::vector<int> word;
  AffElt cur = a;
  int l = length(cur);
  while (l > 0) {
    bool found = false;
    for (int i = 0; i < num_simples(); ++i) {
      AffElt c = mul(simples_[i].elt, cur);
      int lc = length(c);
      if (lc < l) {
        word.push_back(i);
        cur = c;
        l = lc;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("AffineSystem: no descent for an element of positive length");
  }
  if (rest) *rest = cur;
  return word;
}

AffElt AffineSystem::from_word(const std::vector<int>& word) const {
  AffElt a;
  for (int i : word) {
    if (i < 0 || i >= num_simples()) throw std::out_of_range("affine generator index out of range");
    a = mul(a, simples_[i].elt);
  }
  return a;
}

bool AffineSystem::bruhat_leq(const AffElt& v, const AffElt& w) const {
  int lw = length(w), lv = length(v);
  if (lv > lw) return false;
  if (lw == 0) return v == w;
  for (int i = 0; i < num_simples(); ++i) {
    AffElt sw = mul(simples_[i].elt, w);
    if (length(sw) < lw) {
      AffElt sv = mul(simples_[i].elt, v);
      return length(sv) < lv ? bruhat_leq(sv, sw) : bruhat_leq(v, sw);
    }
  }
  throw std::logic_error("AffineSystem: no descent for an element of positive length");
}

Cow AffineSystem::reduce_mod_coroots(const Cow& x) const {
  Cow y = x;
  for (size_t k = 0; k < hnf_.size(); ++k) {
    auto [c, d] = pivots_[k];
    int q = y[c] >= 0 ? y[c] / d : -((-y[c] + d - 1) / d);
    y = cow_sub(y, cow_scale(hnf_[k], q));
  }
  return y;
}

Cow AffineSystem::omega_class(const AffElt& a) const { return reduce_mod_coroots(a.x); }

}  // namespace prohecke
