#ifndef SWCLOCK_FEASIBILITY_HPP_
#define SWCLOCK_FEASIBILITY_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "swclock/design.hpp"

namespace swclock {

// "Much greater than" hardened to a ratio; a requirement passes when
// LHS/RHS >= strong_factor, i.e. margin = LHS/(RHS * strong_factor) > 1.
inline constexpr double kDefaultStrongFactor = 10.0;
inline constexpr double kDefaultRelThreshold = 0.01;

// Classification bounds (CGS).
inline constexpr double kMicroscopicMassMax = 1e-16;   // g, inclusive
inline constexpr double kMicroscopicSizeMax = 1e-5;    // cm, inclusive
inline constexpr double kMacroscopicSizeMin = 1.0;     // cm, inclusive
inline constexpr double kAtomicRadius = 1e-8;          // cm

// Nuclear densities are only attainable by bodies that are themselves
// nucleons or the lightest nuclei; heavier aggregates are bulk matter. The
// nuclear density policy therefore falls back to terrestrial density above
// a few nucleon masses.
inline constexpr double kNuclearMassCap = 5e-24;       // g, ~3 nucleon masses

enum class MassClass { microscopic, macroscopic };
enum class SizeClass { microscopic, intermediate, macroscopic };
enum class MaterialNote {
  nucleon_scale,
  unstable_nucleus_scale,
  atomic_solid_scale,
  bulk_scale,
};

const char* to_string(MassClass c);
const char* to_string(SizeClass c);
const char* to_string(MaterialNote m);

struct Requirement {
  bool pass = false;
  double margin = 0.0;  // > 1 iff pass
};

struct FeasibilityReport {
  Requirement req_a;  // n >> 1
  Requirement req_b;  // L_M << dx
  Requirement req_c;  // R << 2l
  Requirement req_d;  // dx >> R (microbehavior)
  bool relativistic_warning = false;
  MassClass mass_class = MassClass::macroscopic;
  SizeClass size_class = SizeClass::intermediate;

  bool all_requirements() const {
    return req_a.pass && req_b.pass && req_c.pass && req_d.pass;
  }
};

FeasibilityReport check(const ClockDesign& design,
                        double strong_factor = kDefaultStrongFactor,
                        double rel_threshold = kDefaultRelThreshold);

// Material-plausibility annotation from the mass scale; never affects
// pass/fail of the requirements.
MaterialNote material_note(const ClockDesign& design, const PhysicalConstants& k);

// Density assignment for sweeps. `nuclear` models bodies of nuclear matter
// where that is physically possible (M < kNuclearMassCap) and bulk matter
// otherwise; `fixed` applies one density to every cell.
struct DensityPolicy {
  enum class Kind { terrestrial, nuclear, fixed };
  Kind kind = Kind::terrestrial;
  double fixed_value = 1.0;

  double density_for(double mass, const PhysicalConstants& k) const;
  static DensityPolicy terrestrial() { return {Kind::terrestrial, 0.0}; }
  static DensityPolicy nuclear() { return {Kind::nuclear, 0.0}; }
  static DensityPolicy fixed(double rho) { return {Kind::fixed, rho}; }
};

struct AxisSpec {
  Field field = Field::n;
  double min = 0.0;
  double max = 0.0;
  int points = 0;  // >= 2, log-spaced inclusive
};

struct SweepCell {
  bool valid = false;
  ClockDesign design;
  FeasibilityReport report;
  MaterialNote note = MaterialNote::bulk_scale;
  std::string error;  // set when !valid
};

struct SweepSummary {
  std::map<std::string, std::size_t> class_counts;  // "mass_class/size_class"
  std::size_t feasible_cells = 0;  // micro mass & micro size & req_c & req_d
  bool any_feasible = false;
  double max_feasible_n = 0.0;
  std::size_t invalid_cells = 0;
};

struct SweepRequest {
  AxisSpec axis1;
  AxisSpec axis2;
  DialMode mode = DialMode::maximal_dial;
  double strong_factor = kDefaultStrongFactor;
  double rel_threshold = kDefaultRelThreshold;
  DensityPolicy density = DensityPolicy::terrestrial();
  int workers = 0;  // 0 = hardware concurrency
};

struct SweepResult {
  SweepRequest request;
  std::vector<double> grid1;  // axis1 values, strictly increasing
  std::vector<double> grid2;
  std::vector<SweepCell> cells;  // row-major: [i1 * grid2.size() + i2]
  SweepSummary summary;

  const SweepCell& cell(std::size_t i1, std::size_t i2) const {
    return cells[i1 * grid2.size() + i2];
  }
};

SweepResult sweep(const SweepRequest& request, const PhysicalConstants& k);

}  // namespace swclock

#endif  // SWCLOCK_FEASIBILITY_HPP_
