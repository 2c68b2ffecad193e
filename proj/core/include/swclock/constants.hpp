#ifndef SWCLOCK_CONSTANTS_HPP_
#define SWCLOCK_CONSTANTS_HPP_

#include <map>
#include <stdexcept>
#include <string>

namespace swclock {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Physical constants in CGS. Every computation in the library reads its
// constants from one of these tables; there are no hidden literals elsewhere.
struct PhysicalConstants {
  double hbar = 1.0546e-27;            // erg s
  double c = 2.9979e10;                // cm/s
  double nucleon_mass = 1.6726e-24;    // g
  double density_terrestrial = 1.0;    // g/cm^3
  double density_nuclear = 2.3e14;     // g/cm^3, gives R ~ 1e-13 cm per nucleon

  double hbar_over_c2() const { return hbar / (c * c); }
};

// Defaults merged with overrides. Every override must be a known field name
// with a positive finite value.
PhysicalConstants load_constants(const std::map<std::string, double>& overrides = {});

// Flat key/value text file: one "name value" or "name = value" per line,
// '#' starts a comment. Unknown keys and bad values are configuration errors.
std::map<std::string, double> parse_constants_file(const std::string& path);

}  // namespace swclock

#endif  // SWCLOCK_CONSTANTS_HPP_
