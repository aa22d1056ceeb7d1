#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace prohecke {

constexpr int kMaxLattice = 3;

// Integer vector in the cocharacter lattice X_* (padded with zeros).
using Cow = std::array<int, kMaxLattice>;
// Subset of the simple roots, bit i = α_i.
using ParMask = uint32_t;

Cow cow_add(const Cow& a, const Cow& b);
Cow cow_sub(const Cow& a, const Cow& b);
Cow cow_neg(const Cow& a);
Cow cow_scale(const Cow& a, int k);

// Split root datum. Simple roots are functionals on X_*, simple coroots are
// elements of X_*; cartan[i][j] = <α_j, α_i^∨>.
struct RootDatum {
  std::string name;
  int rank = 0;          // number of simple roots
  int lattice_rank = 0;  // rank of X_*
  std::vector<std::vector<int>> cartan;
  std::vector<Cow> simple_roots;
  std::vector<Cow> simple_coroots;

  static RootDatum preset(const std::string& name);  // SL2, PGL2, GL2, SL3
  static std::vector<std::string> preset_names();
  ParMask full_mask() const { return (ParMask(1) << rank) - 1; }
  int pair(const Cow& functional, const Cow& x) const;
  void validate() const;  // throws std::invalid_argument
};

// A root given by its coordinates in the simple roots.
using RootCoords = std::vector<int>;

// The finite Weyl group W_0, enumerated from the root datum by breadth-first
// search. Elements are indices; 0 is the identity. Every element carries its
// shortlex-minimal reduced word over S_0 = {s_1, ..., s_n}.
class FiniteWeyl {
 public:
  static constexpr int kCap = 1000000;

  explicit FiniteWeyl(const RootDatum& rd);

  const RootDatum& datum() const { return rd_; }
  int size() const { return static_cast<int>(len_.size()); }
  int identity() const { return 0; }
  int simple(int i) const { return simple_[i]; }
  int mul(int a, int b) const { return mul_[size_t(a) * size() + b]; }
  int inv(int a) const { return inv_[a]; }
  int length(int a) const { return len_[a]; }
  const std::vector<int>& normal_form(int a) const { return nf_[a]; }
  int longest() const { return longest_; }
  int longest(ParMask J) const;

  int from_word(const std::vector<int>& word) const;  // throws on bad index
  std::vector<int> reduce_word(const std::vector<int>& word) const { return nf_[from_word(word)]; }

  // left/right descents: s_i w < w, resp. w s_i < w
  bool is_left_descent(int w, int i) const { return len_[mul(simple_[i], w)] < len_[w]; }
  bool is_right_descent(int w, int i) const { return len_[mul(w, simple_[i])] < len_[w]; }

  bool bruhat_leq(int v, int w) const { return bruhat_[size_t(v) * size() + w]; }

  // roots
  int num_roots() const { return static_cast<int>(roots_.size()); }
  const RootCoords& root(int k) const { return roots_[k]; }
  const Cow& root_functional(int k) const { return root_fun_[k]; }
  const Cow& coroot(int k) const { return coroot_[k]; }
  bool root_positive(int k) const { return root_pos_[k]; }
  int root_index(const RootCoords& c) const;  // -1 if not a root
  int simple_root_index(int i) const { return simple_root_idx_[i]; }
  int root_neg(int k) const { return root_neg_[k]; }
  int act_root_index(int w, int k) const { return root_perm_[size_t(w) * num_roots() + k]; }
  RootCoords act_on_root(int w, const RootCoords& c) const;  // linear action on the root lattice
  int reflection(int k) const { return refl_[k]; }           // s_β
  bool root_in(int k, ParMask J) const;                      // β ∈ Σ_J
  int root_height(int k) const;
  std::vector<int> positive_roots(ParMask J) const;
  int highest_root(ParMask component) const;

  // action on X_*
  Cow act(int w, const Cow& x) const;

  // parabolic combinatorics
  bool in_parabolic(int w, ParMask J) const;  // w ∈ W_{0,J}
  std::vector<int> parabolic_elements(ParMask J) const;
  std::vector<int> min_coset_reps(ParMask J, bool left_side = false) const;  // W_0^J (or ^J W_0)
  ParMask delta_w(int w) const;  // {α ∈ Δ : w(α) > 0}
  std::vector<ParMask> components(ParMask J) const;
  ParMask neg_wG(ParMask J) const;  // -w_G(Δ_J)

  // μ^J(v, w) on the poset (W_0^J, ≤)
  int mobius_deodhar(int v, int w, ParMask J) const;
  int mobius_bruteforce(int v, int w, ParMask J) const;

  std::string word_str(int w) const;

 private:
  RootDatum rd_;
  std::vector<int> simple_, len_, inv_, mul_, longest_cache_;
  std::vector<std::vector<int>> nf_;
  std::vector<std::array<int, kMaxLattice * kMaxLattice>> xmat_;
  std::vector<uint8_t> bruhat_;
  int longest_ = 0;
  std::vector<RootCoords> roots_;
  std::vector<Cow> root_fun_, coroot_;
  std::vector<bool> root_pos_;
  std::vector<int> root_neg_, root_perm_, refl_, simple_root_idx_;
  std::map<RootCoords, int> root_lookup_;
};

// Element of the extended affine Weyl group W = W_0 ⋉ X_*, written n_w·t_x and
// acting on the apartment by y ↦ w(y + x).
struct AffElt {
  int w = 0;
  Cow x{};
  bool operator==(const AffElt& o) const { return w == o.w && x == o.x; }
  bool operator!=(const AffElt& o) const { return !(*this == o); }
  bool operator<(const AffElt& o) const { return w != o.w ? w < o.w : x < o.x; }
};

// A simple affine reflection of the Levi W_J: either a finite s_i (i ∈ J) or
// the affine s_0 of a component of J. `gamma` is the root whose wall is
// crossed, oriented as the direction in which the walk leaves the base alcove:
// -α_i for s_i, +θ for s_0.
struct AffSimple {
  int finite = -1;     // simple index i, or -1 for an affine reflection
  int component = -1;  // index into the component list of J
  int root = -1;       // α_i or θ (positive root index)
  int gamma_sign = 0;  // -1 for s_i, +1 for s_0
  AffElt elt;
};

// Affine combinatorics of the Levi W_J = W_{0,J} ⋉ X_* with respect to its
// base alcove {<α,y> > 0 (α ∈ Δ_J), <θ_C,y> < 1 per component C}.
class AffineSystem {
 public:
  AffineSystem(const FiniteWeyl& W, ParMask J);

  const FiniteWeyl& weyl() const { return *W_; }
  ParMask mask() const { return J_; }
  const std::vector<AffSimple>& simples() const { return simples_; }
  int num_simples() const { return static_cast<int>(simples_.size()); }
  int coxeter_m(int a, int b) const { return m_[a][b]; }  // 0 encodes infinity
  const std::vector<ParMask>& components() const { return comps_; }

  AffElt mul(const AffElt& a, const AffElt& b) const;
  AffElt inv(const AffElt& a) const;
  bool contains(const AffElt& a) const { return W_->in_parabolic(a.w, J_); }
  int length(const AffElt& a) const;  // Iwahori–Matsumoto length for Σ_J^+

  // Leftmost descent decomposition a = s_{i_1} ... s_{i_l} u with ℓ(u) = 0.
  std::vector<int> reduced_word(const AffElt& a, AffElt* rest = nullptr) const;
  AffElt from_word(const std::vector<int>& word) const;
  bool bruhat_leq(const AffElt& v, const AffElt& w) const;

  // Ω_J-class: the image of the coweight in X_* / ZΣ_J^∨, in canonical form.
  Cow omega_class(const AffElt& a) const;
  const std::vector<std::pair<int, int>>& hnf_pivots() const { return pivots_; }  // (column, modulus)
  const std::vector<Cow>& hnf_rows() const { return hnf_; }
  Cow reduce_mod_coroots(const Cow& x) const;

 private:
  const FiniteWeyl* W_;
  ParMask J_;
  std::vector<ParMask> comps_;
  std::vector<AffSimple> simples_;
  std::vector<std::vector<int>> m_;
  std::vector<int> pos_roots_;
  std::vector<Cow> hnf_;
  std::vector<std::pair<int, int>> pivots_;
};

}  // namespace prohecke
