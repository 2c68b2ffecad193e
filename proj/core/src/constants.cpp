#include "swclock/constants.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace swclock {

namespace {

double* field_ptr(PhysicalConstants& k, const std::string& name) {
  if (name == "hbar") return &k.hbar;
  if (name == "c") return &k.c;
  if (name == "nucleon_mass") return &k.nucleon_mass;
  if (name == "density_terrestrial") return &k.density_terrestrial;
  if (name == "density_nuclear") return &k.density_nuclear;
  return nullptr;
}

}  // namespace

PhysicalConstants load_constants(const std::map<std::string, double>& overrides) {
  PhysicalConstants k;
  for (const auto& [name, value] : overrides) {
    double* field = field_ptr(k, name);
    if (field == nullptr) {
      throw ConfigError("unknown constant '" + name + "'");
    }
    if (!std::isfinite(value) || value <= 0.0) {
      std::ostringstream msg;
      msg << "constant '" << name << "' must be positive and finite, got " << value;
      throw ConfigError(msg.str());
    }
    *field = value;
  }
  return k;
}

std::map<std::string, double> parse_constants_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open constants file '" + path + "'");
  std::map<std::string, double> overrides;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& ch : line) {
      if (ch == '=') ch = ' ';
    }
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;  // blank line
    double value;
    if (!(fields >> value)) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'name value', got '" + line + "'");
    }
    std::string trailing;
    if (fields >> trailing) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": trailing content '" + trailing + "'");
    }
    overrides[name] = value;
  }
  return overrides;
}

}  // namespace swclock
