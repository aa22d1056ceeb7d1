#pragma once

#include <string>
#include <vector>

#include "prohecke/suites.hpp"

namespace prohecke {

// Environment variable holding cap overrides, applied after flags and config file.
inline constexpr const char* kCapsEnv = "PROPP_CAPS";

// "length=5,orbit=4,dim=64"; unknown keys or malformed values throw ConfigError
void apply_caps(Caps& caps, const std::string& text);
// JSON object with any of: preset, p, f, suites, seed, caps{length,orbit,dim}, output, timings.
// Fields present replace the current values. Throws ConfigError.
void apply_config_json(SuiteConfig& cfg, const std::string& text);
// splits comma-separated entries
std::vector<std::string> split_list(const std::vector<std::string>& raw);

// |W_0|, S_aff, Ω, |Z_κ|, orbit variables, parabolic lattice and the
// supersingular inventory, as pretty-printed JSON. Throws ConfigError.
std::string describe_json(const std::string& preset, int p, int f, int orbit_cap = 4);

}  // namespace prohecke
