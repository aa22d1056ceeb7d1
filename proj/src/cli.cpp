#include "prohecke/cli.hpp"

#include <sstream>

#include "json.hpp"

namespace prohecke {

using nlohmann::ordered_json;

void apply_caps(Caps& caps, const std::string& text) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("malformed cap '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != val.size()) throw ConfigError("malformed cap value in '" + item + "'");
    if (key == "length") caps.length = v;
    else if (key == "orbit") caps.orbit = v;
    else if (key == "dim") caps.dim = v;
    else throw ConfigError("unknown cap '" + key + "'");
  }
}

void apply_config_json(SuiteConfig& cfg, const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const auto& v = it.value();
      if (k == "preset") cfg.preset = v.get<std::string>();
      else if (k == "p") cfg.p = v.get<int>();
      else if (k == "f") cfg.f = v.get<int>();
      else if (k == "seed") cfg.seed = v.get<uint64_t>();
      else if (k == "output") cfg.output = v.get<std::string>();
      else if (k == "timings") cfg.timings = v.get<bool>();
      else if (k == "suites") cfg.suites = v.is_string() ? std::vector<std::string>{v.get<std::string>()} : v.get<std::vector<std::string>>();
      else if (k == "caps") {
        for (auto c = v.begin(); c != v.end(); ++c) {
          if (c.key() == "length") cfg.caps.length = c.value().get<int>();
          else if (c.key() == "orbit") cfg.caps.orbit = c.value().get<int>();
          else if (c.key() == "dim") cfg.caps.dim = c.value().get<int>();
          else throw ConfigError("unknown cap '" + c.key() + "'");
        }
      } else {
        throw ConfigError("unknown config field '" + k + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (auto& r : raw) {
    std::stringstream ss(r);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string describe_json(const std::string& preset, int p, int f, int orbit_cap) {
  SuiteConfig probe;
  probe.preset = preset;
  probe.p = p;
  probe.f = f;
  normalize(probe);
  CtxPtr C = Ctx::make(preset, p, f);
  const Datum& D = C->D();
  const FiniteWeyl& W = D.W0();
  const Levi& G = D.G();
  ordered_json j;
  j["preset"] = preset;
  j["p"] = p;
  j["f"] = f;
  j["q"] = D.q();
  j["W0_order"] = W.size();
  ordered_json saff = ordered_json::array();
  for (int i = 0; i < G.num_simples(); ++i) {
    const AffSimple& s = G.aff().simples()[i];
    saff.push_back({{"index", i},
                    {"kind", s.finite >= 0 ? "s_" + std::to_string(s.finite) : "affine"},
                    {"orbit_variable", G.orbit_var(i)},
                    {"lift", D.str(G.lift(i))}});
  }
  j["S_aff"] = saff;
  ordered_json omega = ordered_json::array();
  for (size_t k = 0; k < G.omega_gens().size(); ++k)
    omega.push_back({{"generator", D.str(G.omega_gens()[k])}, {"order_mod_Z_kappa", G.omega_orders()[k]}});
  j["Omega"] = omega;
  long long zk = 1;
  for (int i = 0; i < D.lattice_rank(); ++i) zk *= D.tmod();
  j["Z_kappa_order"] = zk;
  j["orbit_variables"] = D.num_orbit_vars();
  ordered_json pars = ordered_json::array();
  for (ParMask P = 0; P <= C->full(); ++P)
    pars.push_back({{"mask", P},
                    {"name", mask_name(D, P)},
                    {"W0P_size", W.min_coset_reps(P).size()},
                    {"minus_wG", mask_name(D, W.neg_wG(P))}});
  j["parabolics"] = pars;
  ordered_json inv = ordered_json::array();
  for (ParMask P = 0; P <= C->full(); ++P)
    for (auto& s : supersingular_inventory(C, P, orbit_cap))
      inv.push_back({{"data", s.key}, {"dim", s.module.dim()}, {"P_sigma", mask_name(D, delta_of_sigma(s.module))}});
  j["supersingular_inventory"] = inv;
  return j.dump(2);
}

}  // namespace prohecke
