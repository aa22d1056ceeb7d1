#include "prohecke/constructions.hpp"

namespace prohecke {

ParMask complement_in(ParMask P, ParMask Ps, ParMask Q) { return P | (Ps & ~Q); }

std::vector<SSInstance> supersingular_inventory(const CtxPtr& C, ParMask P, int cap) {
  const Datum& D = C->D();
  const Levi& L = D.levi(P);
  const int tm = D.tmod(), r = D.lattice_rank();
  std::vector<SSInstance> out;
  SSData d;
  d.P = P;
  // ψ_T ranges over all characters of T(k): exponents in [0, q-1) per coordinate
  long long total = 1;
  for (int j = 0; j < r; ++j) total *= tm;
  for (long long idx = 0; idx < total; ++idx) {
    long long x = idx;
    for (int j = 0; j < r; ++j, x /= tm) d.k[j] = static_cast<int>(x % tm);
    const auto S = s_aff_chi(*C, d);
    for (unsigned mask = 0; mask < (1u << S.size()); ++mask) {
      d.J.clear();
      for (size_t i = 0; i < S.size(); ++i)
        if (mask >> i & 1) d.J.push_back(S[i]);
      if (!is_supersingular_data(*C, d)) continue;
      const int m = xi_orbit_size(*C, d);
      if (m < 0) continue;
      const int nv = m > 1 ? 1 : static_cast<int>(L.omega_gens().size());
      long long nvals = 1;
      for (int i = 0; i < nv; ++i) nvals *= tm;
      for (long long vi = 0; vi < nvals; ++vi) {
        long long y = vi;
        d.omega_vals.assign(nv, 0);
        for (int i = 0; i < nv; ++i, y /= tm) d.omega_vals[i] = C->F()->gen_pow(y % tm);
        try {
          FinModule M = supersingular_module(C, d);
          if (!is_simple(M).simple || !is_supersingular(M, cap)) continue;
          out.push_back(SSInstance{d, std::move(M), data_str(*C, d)});
        } catch (const ModuleError&) {
          // V incompatible with χ on Ω_P(1)_Ξ ∩ Z_κ-relations: not a module
        }
      }
    }
  }
  return out;
}

std::vector<TripleInstance> triple_inventory(const CtxPtr& C, int cap) {
  std::vector<TripleInstance> out;
  for (ParMask P = 0; P <= C->full(); ++P)
    for (auto& s : supersingular_inventory(C, P, cap)) {
      const ParMask Ps = delta_of_sigma(s.module);
      for (ParMask Q : masks_between(P, Ps))
        out.push_back(TripleInstance{s, Ps, Q, s.key + " Q=" + mask_name(C->D(), Q)});
    }
  return out;
}

}  // namespace prohecke
