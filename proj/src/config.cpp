#include "rotamp/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "rotamp/error.hpp"

namespace rotamp {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

double to_number(const std::string& s, std::string_view context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(context) + ": '" + s + "' is not a number");
  }
}

void expect_args(const PresetCall& c, std::size_t count) {
  if (c.args.size() != count)
    throw ConfigError("preset " + c.name + " takes " + std::to_string(count) + " argument(s), got " +
                      std::to_string(c.args.size()));
}

template <class Atom, class Make>
std::vector<Atom> parse_atoms(const nlohmann::json& j, const char* what, Make make) {
  if (!j.is_object() || j.size() != 1 || !j.contains("atoms"))
    throw ConfigError(std::string(what) + ": expected a preset string or an object with the single key 'atoms'");
  const auto& arr = j.at("atoms");
  if (!arr.is_array() || arr.empty()) throw ConfigError(std::string(what) + ".atoms: expected a non-empty array");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& p = arr[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw ConfigError(std::string(what) + ".atoms[" + std::to_string(i) + "]: expected [number, number]");
    atoms.push_back(make(p[0].get<double>(), p[1].get<double>()));
  }
  return atoms;
}

}  // namespace

PresetCall parse_preset_call(std::string_view text) {
  const std::string s = trim(text);
  PresetCall c;
  const auto open = s.find('(');
  if (open == std::string::npos) {
    c.name = s;
  } else {
    if (s.back() != ')') throw ConfigError("preset '" + s + "': missing ')'");
    c.name = trim(std::string_view(s).substr(0, open));
    const std::string inner = trim(std::string_view(s).substr(open + 1, s.size() - open - 2));
    if (!inner.empty()) {
      std::size_t start = 0;
      while (true) {
        const auto comma = inner.find(',', start);
        c.args.push_back(to_number(trim(std::string_view(inner).substr(start, comma - start)), s));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
  }
  if (c.name.empty()) throw ConfigError("empty preset name");
  return c;
}

AtomPrior parse_prior(const nlohmann::json& j) {
  try {
    if (j.is_string()) {
      const PresetCall c = parse_preset_call(j.get<std::string>());
      if (c.name == "rademacher") {
        expect_args(c, 0);
        return AtomPrior::rademacher();
      }
      if (c.name == "three_point") {
        expect_args(c, 1);
        return AtomPrior::three_point(c.args[0]);
      }
      throw ConfigError("prior: unknown preset '" + c.name + "'");
    }
    return AtomPrior(parse_atoms<Atom>(j, "prior", [](double v, double w) { return Atom{v, w}; }));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("prior: ") + e.what());
  }
}

SpectralLaw parse_law(const nlohmann::json& j) {
  try {
    if (j.is_string()) {
      const PresetCall c = parse_preset_call(j.get<std::string>());
      if (c.name == "point_mass") {
        expect_args(c, 1);
        return SpectralLaw::point_mass(c.args[0]);
      }
      if (c.name == "two_point") {
        expect_args(c, 2);
        return SpectralLaw::two_point(c.args[0], c.args[1]);
      }
      if (c.name == "uniform_grid") {
        expect_args(c, 3);
        if (c.args[2] != std::floor(c.args[2])) throw ConfigError("uniform_grid: k must be an integer");
        return SpectralLaw::uniform_grid(c.args[0], c.args[1], static_cast<int>(c.args[2]));
      }
      throw ConfigError("law: unknown preset '" + c.name + "'");
    }
    return SpectralLaw(parse_atoms<SpectralAtom>(j, "law", [](double d, double w) { return SpectralAtom{d, w}; }));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("law: ") + e.what());
  }
}

}  // namespace rotamp
