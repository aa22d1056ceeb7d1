#pragma once

#include <string>
#include <vector>

#include "prohecke/induction.hpp"

namespace prohecke {

// A simple supersingular module π_{χ,J,V} over H_P with its data.
struct SSInstance {
  SSData data;
  FinModule module;
  std::string key;
};

// Every π_{χ,J,V} over H_P with one-dimensional V that is valid, simple and
// supersingular at length cap `cap`, in the order (ψ_T, J, V). Data whose
// Ω_P(1)-orbit is unsupported are skipped.
std::vector<SSInstance> supersingular_inventory(const CtxPtr& C, ParMask P, int cap = 4);

// A triple (P, σ, Q) with σ = π_{χ,J,V} and P ⊆ Q ⊆ P(σ).
struct TripleInstance {
  SSInstance sigma;
  ParMask Psigma = 0;
  ParMask Q = 0;
  std::string key;
};
std::vector<TripleInstance> triple_inventory(const CtxPtr& C, int cap = 4);

// Δ_P ∪ (Δ(σ) ∖ Δ_Q)
ParMask complement_in(ParMask P, ParMask Ps, ParMask Q);

}  // namespace prohecke
