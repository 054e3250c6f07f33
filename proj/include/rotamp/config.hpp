#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rotamp/prior.hpp"
#include "rotamp/spectrum.hpp"

namespace rotamp {

// "name(a, b, ...)" or a bare "name".
struct PresetCall {
  std::string name;
  std::vector<double> args;
};
PresetCall parse_preset_call(std::string_view text);

// Accepts "rademacher", "three_point(p0)" or {"atoms": [[value, weight], ...]}.
AtomPrior parse_prior(const nlohmann::json& j);
// Accepts "point_mass(d)", "two_point(d, e)", "uniform_grid(d, e, k)" or
// {"atoms": [[dsq, weight], ...]}.
SpectralLaw parse_law(const nlohmann::json& j);

}  // namespace rotamp
