#ifndef SWCLOCK_REPORTS_HPP_
#define SWCLOCK_REPORTS_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swclock/design.hpp"
#include "swclock/feasibility.hpp"
#include "swclock/wavepacket.hpp"

namespace swclock {

// --- serialization -------------------------------------------------------

nlohmann::json design_to_json(const ClockDesign& design);
nlohmann::json report_to_json(const FeasibilityReport& report);
nlohmann::json sweep_to_json(const SweepResult& result);

std::string design_csv_header();
std::string design_csv_row(const ClockDesign& design);
std::string sweep_csv_header();
std::string sweep_to_csv(const SweepResult& result);

// Standalone SVG region map, log axes, one rect per cell. The color table is
// documented in docs/region_map_colors.md and repeated in the embedded legend.
std::string sweep_to_svg(const SweepResult& result);

// --- human-readable tables ----------------------------------------------

// When human is set, lengths get a parenthesized metric conversion.
std::string format_design_table(const ClockDesign& design, bool human = false);
std::string format_report_table(const FeasibilityReport& report, MaterialNote note);
std::string format_spreading_table(const SpreadingReport& report);

// --- reproduction suite ---------------------------------------------------

struct ExpectedValue {
  Field field;
  double value;       // published value, CGS
  double tolerance;   // multiplicative factor >= 1
  std::string citation;
};

struct ReproCase {
  std::string name;
  DesignInput input;
  double strong_factor = kDefaultStrongFactor;
  std::vector<ExpectedValue> expected;
};

struct ReproRow {
  std::string case_name;
  std::string field;
  double computed = 0.0;
  double expected = 0.0;
  double ratio = 0.0;
  double tolerance = 0.0;
  std::string citation;
  bool pass = false;
};

struct ReproOutcome {
  std::vector<ReproRow> rows;
  bool all_pass = true;
};

// Built-in worked examples from the Salecker-Wigner clock literature.
std::vector<ReproCase> builtin_repro_cases(const PhysicalConstants& k);

// Runs every case whose name matches the glob (""/"*" = all). A case closes
// the design, checks feasibility, and verifies the spreading condition before
// its expected values are compared.
ReproOutcome reproduce(const PhysicalConstants& k, const std::string& name_glob = "");

std::string format_repro_table(const ReproOutcome& outcome);

}  // namespace swclock

#endif  // SWCLOCK_REPORTS_HPP_
