#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "prohecke/repn.hpp"

namespace prohecke {

// masks S with P ⊆ S ⊆ Q, ascending
std::vector<ParMask> masks_between(ParMask P, ParMask Q);

// I_P^{Q0}(σ) = Hom_{(H_P^{Q0-}, j^{-*})}(H_{Q0}, σ), or I'_P^{Q0}(σ) with j^- when `prime`,
// in T-coordinates: block k of a vector is φ(T_{n_{v_k}}), v_k the k-th element
// of W_0^P ∩ W_{0,Q0} in increasing index order.
class Induced {
 public:
  Induced(const FinModule& sigma, ParMask Q0, bool prime);

  const FinModule& module() const { return mod_; }
  const FinModule& sigma() const { return sigma_; }
  ParMask P() const { return sigma_.tag(); }
  ParMask Q0() const { return Q0_; }
  bool prime() const { return prime_; }
  const std::vector<int>& reps() const { return reps_; }
  int block_of(int v) const;  // -1 if v is not a coset representative
  int dim() const { return static_cast<int>(reps_.size()) * sigma_.dim(); }

  // dσ × dim matrix of φ ↦ φ(Y), Y ∈ H_{Q0}
  Mat eval(const SpecElt& Y) const;
  Mat eval_T(const PElt& w) const;
  // the matrix of φ ↦ (φ(T*_{n_v}))_v
  Mat star_coords() const;
  // maximal N used by the centrality step so far
  int max_shift() const { return max_shift_; }

 private:
  Mat eval_basis(const PElt& b) const;  // φ ↦ φ(E_∓(b))
  Mat select(int k) const;
  int split(int w) const;  // the coset representative w_1 of w = w_1 w_2

  FinModule sigma_;
  ParMask Q0_;
  bool prime_;
  std::vector<int> reps_;
  PElt lam_;
  Mat A_inv_;
  std::vector<Mat> fstar_;
  FinModule mod_;
  mutable std::mutex mu_;
  mutable std::map<PElt, Mat> cache_;
  mutable int max_shift_ = 0;
};

// (φ(X·T_{n_{w_{Q0}w_P}}))_X for a spread of X: the unique intertwiner
// Φ: I_P^{Q0}(σ) → I'^{Q0}_P(σ) with Φ(φ)(X T_n) = φ(X T_n). Throws if the
// sample does not determine Φ or Φ is not an intertwiner.
Mat phi_map(const Induced& I, const Induced& Ip);

// Extension by zero on T-coordinates, I_{Q1}(e_{Q1}σ) → I_Q(e_Qσ), both plain
// over the same ambient Levi. Throws ModuleError if it is not an intertwiner.
Mat inclusion_map(const Induced& from, const Induced& to);

// Σ_{Q ⊊ Q1 ⊆ P0} image of I_{Q1}^{P0}(e_{Q1}σ) inside I_Q^{P0}(e_Qσ)
Mat sum_of_larger(const FinModule& sigma, ParMask Q, ParMask P0, const Induced& IQ);
// St_Q^{P0}(σ) over H_{P0}; requires P ⊆ Q ⊆ P0 ⊆ P(σ)
FinModule steinberg(const FinModule& sigma, ParMask Q, ParMask P0);
// I(P, σ, Q) = I_{P(σ)}(St_Q^{P(σ)}(σ))
FinModule simple_module(const FinModule& sigma, ParMask Q);

// I'_Q(e_Qσ) → I'_{Q1}(e_{Q1}σ), φ ↦ (X ↦ (−1)^{ℓ(w_{Q1}w_Q)} φ(X T*_{n_{w_{Q1}w_Q}}))
Mat connecting_map(const Induced& from, const Induced& to);

// The submodules π_Q ⊂ I'_P(σ), Q between P and P(σ), as column bases in the
// coordinates of `Ip` (which must be I'_P(σ) over G).
std::vector<std::pair<ParMask, Mat>> iprime_filtration(const Induced& Ip, uint64_t seed = 0);

}  // namespace prohecke
