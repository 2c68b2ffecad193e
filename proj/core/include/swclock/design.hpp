#ifndef SWCLOCK_DESIGN_HPP_
#define SWCLOCK_DESIGN_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swclock/constants.hpp"
#include "swclock/quantity.hpp"

namespace swclock {

enum class DialMode { general_dial, maximal_dial };

enum class Field { tau, T, n, u, dial, dx, dp, dt, du, M, L_M, R, rho };

const char* field_name(Field f);
Field field_from_name(const std::string& name);
Dimension field_dimension(Field f);

// Closed Salecker-Wigner design tuple, all CGS. tau is the accuracy, T the
// running time, n = T/tau, u the hand speed, dial the quantity 2l, dx/dp the
// packet width and momentum spread, dt the passage-time uncertainty, du the
// velocity spread, M the per-body mass, L_M the Compton wavelength, R the
// body radius at density rho.
struct ClockDesign {
  double tau = 0, T = 0, n = 0, u = 0, dial = 0;
  double dx = 0, dp = 0, dt = 0, du = 0;
  double M = 0, L_M = 0, R = 0, rho = 0;
  DialMode mode = DialMode::maximal_dial;

  // Display-only: the clock is three bodies of mass M each.
  double total_mass() const { return 3.0 * M; }

  double field(Field f) const;
};

struct DesignInput {
  DialMode mode = DialMode::maximal_dial;
  std::vector<std::pair<Field, Quantity>> knowns;
  double rho = 1.0;  // density for R; defaults to terrestrial
};

class ClosureError : public std::runtime_error {
 public:
  enum class Kind { under_determined, inconsistent, invalid_value };
  ClosureError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Closes the full design tuple from the knowns. Every design relation is a
// monomial in the free parameters (tau, n) in maximal-dial mode or
// (tau, n, 2l) in general-dial mode, so the closure is solved exactly by
// exponent elimination in log space; no iteration is involved.
//
// Maximal mode needs two independent knowns among {tau, T, n, u, dial, dx,
// dp, du, M}; general mode needs three. Redundant knowns are accepted when
// consistent to relative 1e-9 and rejected otherwise.
ClockDesign close_design(const DesignInput& input, const PhysicalConstants& k);

// Solves for one field given the remaining knowns; same rules as close_design.
double invert_for(Field target, const DesignInput& fixed, const PhysicalConstants& k);

}  // namespace swclock

#endif  // SWCLOCK_DESIGN_HPP_
