#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "prohecke/fqmat.hpp"
#include "prohecke/hecke.hpp"

namespace prohecke {

// A construction whose output fails a defining relation or a precondition.
// `witness` names the violated relation or condition.
class ModuleError : public std::runtime_error {
 public:
  ModuleError(const std::string& what, std::string witness)
      : std::runtime_error(what + ": " + witness), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

// Shared evaluation context: the datum and one specialized Hecke algebra per
// Levi mask, built on first use.
class Ctx {
 public:
  explicit Ctx(DatumPtr D) : D_(std::move(D)) {}
  static std::shared_ptr<const Ctx> make(const std::string& preset, int p, int f = 1) {
    return std::make_shared<const Ctx>(Datum::make(preset, p, f));
  }

  const Datum& D() const { return *D_; }
  const DatumPtr& datum_ptr() const { return D_; }
  const Field* F() const { return D_->field(); }
  ParMask full() const { return D_->root_datum().full_mask(); }
  const SpecHecke& H(ParMask J) const;

 private:
  DatumPtr D_;
  mutable std::mutex mu_;
  mutable std::map<ParMask, std::unique_ptr<SpecHecke>> H_;
};
using CtxPtr = std::shared_ptr<const Ctx>;

// Finite-dimensional right module over H_J (J = tag) at q = 0, stored by the
// matrices of its generators acting on column vectors: act(xy) = act(y)·act(x).
// Generators, in order: the standard affine simple lifts of W_J(1), the torus
// elements e_j (exponent 1 at coordinate j), and the Ω_J(1) generators.
class FinModule {
 public:
  FinModule() = default;
  // Unvalidated; call validate() (every public construction does).
  FinModule(CtxPtr ctx, ParMask tag, int dim, std::vector<Mat> gens);
  static FinModule zero(CtxPtr ctx, ParMask tag);

  const CtxPtr& ctx() const { return ctx_; }
  ParMask tag() const { return tag_; }
  int dim() const { return dim_; }
  const Levi& levi() const { return ctx_->D().levi(tag_); }
  const SpecHecke& hecke() const { return ctx_->H(tag_); }
  const Field* F() const { return ctx_->F(); }

  int num_simples() const { return ns_; }
  int num_torus() const { return nt_; }
  int num_gens() const { return static_cast<int>(gens_.size()); }
  int gen_simple(int i) const { return i; }
  int gen_torus(int j) const { return ns_ + j; }
  int gen_omega(int k) const { return ns_ + nt_ + k; }
  const Mat& gen(int g) const { return gens_[g]; }
  const std::vector<Mat>& gens() const { return gens_; }
  PElt gen_elt(int g) const;

  Mat act_T(const PElt& w) const;
  Mat act(const SpecElt& x) const;

  // First violated defining relation, or nothing.
  std::optional<std::string> relation_failure() const;
  void validate() const;  // throws ModuleError

  // Canonical listing: one line per generator, row-major entries.
  std::string serialize() const;

 private:
  Mat inv_gen(int g) const;
  Mat act_torus(const Tor& t) const;

  CtxPtr ctx_;
  ParMask tag_ = 0;
  int dim_ = 0, ns_ = 0, nt_ = 0;
  std::vector<Mat> gens_, inv_;
};

// Supersingular-induction data over the Levi P. The torus character
// ψ_T(t) = g^{Σ k_j t_j} restricts to χ on Z_κ ∩ W_{aff,P}(1). J lists affine
// simple indices of W_{aff,P}. V is one-dimensional: when the Ω_P(1)-orbit of Ξ
// has size m > 1 (only with one Ω_P generator u), `omega_vals[0]` is ψ(u^m);
// otherwise omega_vals[k] is ψ(u_k).
struct SSData {
  ParMask P = 0;
  std::array<int, kMaxLattice> k{};
  std::vector<int> J;
  std::vector<uint32_t> omega_vals;
};

uint32_t torus_char(const Field* F, const std::array<int, kMaxLattice>& k, const Tor& t);
// S_{aff,P,χ} as a list of affine simple indices of W_{aff,P}
std::vector<int> s_aff_chi(const Ctx& C, const SSData& d);
// both J and S_{aff,P,χ}∖J generate finite groups
bool is_supersingular_data(const Ctx& C, const SSData& d);
// size of the Ω_P(1)-orbit of Ξ
int xi_orbit_size(const Ctx& C, const SSData& d);
// π_{χ,J,V}; throws ModuleError on unsupported orbits or failed relations
FinModule supersingular_module(const CtxPtr& C, const SSData& d);
// (χ, S_{aff,P,χ}∖J, V), (χ, J, V_{ℓ−ℓ_P}) and (χ^{-1}, J, V^*)
SSData complement_data(const Ctx& C, const SSData& d);
SSData sign_twist_data(const Ctx& C, const SSData& d);
SSData dual_data(const Ctx& C, const SSData& d);
std::string data_str(const Ctx& C, const SSData& d);
// "B", "G" or "P{a0,...}" by simple-root index
std::string mask_name(const Datum& D, ParMask J);

FinModule trivial_module(const CtxPtr& C, ParMask P);  // T_w ↦ q_w

// z_O nilpotent for every W_P(1)-orbit O ⊂ Λ(1) with 0 < ℓ_P(O) ≤ cap (coweight box |x_i| ≤ cap)
bool is_supersingular(const FinModule& m, int length_cap);
// Δ(σ) as a mask
ParMask delta_of_sigma(const FinModule& sigma);
// e_Q(σ); requires P ⊆ Q ⊆ P(σ)
FinModule extend(const FinModule& sigma, ParMask Q);

FinModule twist_iota(const FinModule& m);
FinModule twist_sign(const FinModule& m);
// σ_{ℓ_A−ℓ_P} for an ambient Levi A ⊇ P
FinModule twist_sign(const FinModule& m, ParMask ambient);
// n_{w_G w_P}σ over H_{P'}, Δ_{P'} = −w_G(Δ_P)
FinModule twist_by_n(const FinModule& sigma);
FinModule dual(const FinModule& m);

// U: column basis of a generator-stable subspace
bool is_stable(const FinModule& m, const Mat& U);
FinModule submodule(const FinModule& m, const Mat& U);
FinModule quotient(const FinModule& m, const Mat& U);
// smallest submodule containing the columns of V
Mat generated_submodule(const FinModule& m, const Mat& V);

// Column basis of Hom(m, n): matrices M (n.dim × m.dim) with M·act_m(g) = act_n(g)·M
std::vector<Mat> intertwiners(const FinModule& m, const FinModule& n);
bool is_intertwiner(const FinModule& m, const FinModule& n, const Mat& M);

struct IsoResult {
  bool iso = false;
  int hom_dim = 0;
  // false when the answer could change over an extension of F_q
  bool conclusive = true;
  Mat witness;
};
IsoResult is_isomorphic(const FinModule& m, const FinModule& n, uint64_t seed = 0);

struct SimplicityResult {
  bool simple = false;
  bool absolutely = false;  // the generated matrix algebra is the full matrix algebra
  bool conclusive = true;
  Mat witness;              // a proper nonzero submodule when not simple
};
SimplicityResult is_simple(const FinModule& m, uint64_t seed = 0);

// Incremental row echelon over F_q for span and independence tests.
class SpanBuilder {
 public:
  SpanBuilder(const Field* F, int n) : F_(F), n_(n) {}
  // reduces v against the span; returns true and stores it if independent
  bool add(std::vector<uint32_t> v);
  bool contains(std::vector<uint32_t> v) const;
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  void reduce(std::vector<uint32_t>& v) const;
  const Field* F_;
  int n_;
  std::vector<std::vector<uint32_t>> rows_;
  std::vector<int> piv_;
};

Mat mat_pow(const Mat& a, int e);

}  // namespace prohecke
