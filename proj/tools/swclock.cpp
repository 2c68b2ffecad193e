// Command-line surface for the Salecker-Wigner clock design laboratory.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "swclock/constants.hpp"
#include "swclock/design.hpp"
#include "swclock/feasibility.hpp"
#include "swclock/reports.hpp"
#include "swclock/wavepacket.hpp"

namespace {

using namespace swclock;

struct ConstantFlags {
  std::string file;
  std::optional<double> hbar, c, nucleon_mass, density_terrestrial, density_nuclear;

  PhysicalConstants resolve() const {
    std::map<std::string, double> overrides;
    std::string path = file;
    if (path.empty()) {
      if (const char* env = std::getenv("SWCLOCK_CONSTANTS")) path = env;
    }
    if (!path.empty()) overrides = parse_constants_file(path);
    // flags win over the file
    if (hbar) overrides["hbar"] = *hbar;
    if (c) overrides["c"] = *c;
    if (nucleon_mass) overrides["nucleon_mass"] = *nucleon_mass;
    if (density_terrestrial) overrides["density_terrestrial"] = *density_terrestrial;
    if (density_nuclear) overrides["density_nuclear"] = *density_nuclear;
    return load_constants(overrides);
  }
};

struct DesignFlags {
  std::string mode = "maximal";
  std::optional<double> tau, T, n, u, dial, dx, dp, du, M;
  std::string rho = "terrestrial";

  DialMode dial_mode() const {
    if (mode == "maximal") return DialMode::maximal_dial;
    if (mode == "general") return DialMode::general_dial;
    throw CLI::ValidationError("--mode must be 'maximal' or 'general'");
  }

  double resolve_rho(const PhysicalConstants& k) const {
    if (rho == "terrestrial") return k.density_terrestrial;
    if (rho == "nuclear") return k.density_nuclear;
    try {
      std::size_t used = 0;
      double v = std::stod(rho, &used);
      if (used == rho.size()) return v;
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("--rho must be a number, 'terrestrial' or 'nuclear'");
  }

  DesignInput input(const PhysicalConstants& k) const {
    DesignInput in;
    in.mode = dial_mode();
    in.rho = resolve_rho(k);
    auto add = [&in](const std::optional<double>& v, Field f) {
      if (v) in.knowns.push_back({f, {*v, field_dimension(f)}});
    };
    add(tau, Field::tau);
    add(T, Field::T);
    add(n, Field::n);
    add(u, Field::u);
    add(dial, Field::dial);
    add(dx, Field::dx);
    add(dp, Field::dp);
    add(du, Field::du);
    add(M, Field::M);
    return in;
  }
};

void add_constant_flags(CLI::App* cmd, ConstantFlags& flags) {
  cmd->add_option("--constants", flags.file,
                  "constants override file (default: $SWCLOCK_CONSTANTS)");
  cmd->add_option("--hbar", flags.hbar, "override hbar [erg s]");
  cmd->add_option("--c", flags.c, "override c [cm/s]");
  cmd->add_option("--nucleon-mass", flags.nucleon_mass, "override nucleon mass [g]");
  cmd->add_option("--density-terrestrial", flags.density_terrestrial,
                  "override terrestrial density [g/cm^3]");
  cmd->add_option("--density-nuclear", flags.density_nuclear,
                  "override nuclear density [g/cm^3]");
}

void add_design_flags(CLI::App* cmd, DesignFlags& flags) {
  cmd->add_option("--mode", flags.mode, "dial mode: maximal | general");
  cmd->add_option("--tau", flags.tau, "accuracy tau [s]");
  cmd->add_option("--T", flags.T, "running time T [s]");
  cmd->add_option("--n", flags.n, "relative accuracy n = T/tau");
  cmd->add_option("--u", flags.u, "hand speed [cm/s]");
  cmd->add_option("--dial", flags.dial, "dial length 2l [cm]");
  cmd->add_option("--dx", flags.dx, "packet width dx [cm]");
  cmd->add_option("--dp", flags.dp, "momentum spread dp [g cm/s]");
  cmd->add_option("--du", flags.du, "velocity spread du [cm/s]");
  cmd->add_option("--M", flags.M, "per-body mass M [g]");
  cmd->add_option("--rho", flags.rho, "density [g/cm^3] or 'terrestrial'/'nuclear'");
}

AxisSpec parse_axis(const std::string& text) {
  // field=min:max:points
  auto eq = text.find('=');
  auto c1 = text.find(':', eq == std::string::npos ? 0 : eq);
  auto c2 = text.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos) {
    throw CLI::ValidationError("axis must be field=min:max:points, e.g. n=10:1e6:6");
  }
  AxisSpec axis;
  axis.field = field_from_name(text.substr(0, eq));
  axis.min = std::stod(text.substr(eq + 1, c1 - eq - 1));
  axis.max = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  axis.points = std::stoi(text.substr(c2 + 1));
  return axis;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
  out << text;
}

int run(int argc, char** argv) {
  CLI::App app{"Salecker-Wigner quantum clock design laboratory"};
  app.require_subcommand(1);

  ConstantFlags const_flags;
  DesignFlags design_flags;
  std::string output = "table";
  std::string out_path;
  bool human = false;
  bool strict = false;
  double strong_factor = kDefaultStrongFactor;
  double rel_threshold = kDefaultRelThreshold;

  auto add_common = [&](CLI::App* cmd) {
    add_constant_flags(cmd, const_flags);
    cmd->add_option("--output", output, "output format: table | json | csv");
    cmd->add_option("-o,--out", out_path, "write output to file instead of stdout");
    cmd->add_flag("--human", human, "add metric conversions to table output");
  };

  CLI::App* derive = app.add_subcommand("derive", "close a design from knowns");
  add_design_flags(derive, design_flags);
  add_common(derive);

  std::string target;
  CLI::App* invert = app.add_subcommand("invert", "solve for one field");
  invert->add_option("--target", target, "field to solve for")->required();
  add_design_flags(invert, design_flags);
  add_common(invert);

  CLI::App* check_cmd = app.add_subcommand("check", "close and run feasibility checks");
  add_design_flags(check_cmd, design_flags);
  add_common(check_cmd);
  check_cmd->add_option("--strong-factor", strong_factor, "ratio demanded for >>");
  check_cmd->add_option("--rel-threshold", rel_threshold, "u/c warning threshold");
  check_cmd->add_flag("--strict", strict, "exit 1 when a requirement fails");

  std::string axis1_text, axis2_text;
  int workers = 0;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep the design plane");
  sweep_cmd->add_option("--axis1", axis1_text, "field=min:max:points")->required();
  sweep_cmd->add_option("--axis2", axis2_text, "field=min:max:points")->required();
  sweep_cmd->add_option("--mode", design_flags.mode, "dial mode: maximal | general");
  sweep_cmd->add_option("--rho", design_flags.rho,
                        "density policy: terrestrial | nuclear | <value>");
  sweep_cmd->add_option("--strong-factor", strong_factor, "ratio demanded for >>");
  sweep_cmd->add_option("--rel-threshold", rel_threshold, "u/c warning threshold");
  sweep_cmd->add_option("--workers", workers, "worker threads (0 = auto)");
  add_constant_flags(sweep_cmd, const_flags);
  sweep_cmd->add_option("--output", output, "output format: table | json | csv | svg");
  sweep_cmd->add_option("-o,--out", out_path, "write output to file instead of stdout");

  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string dump_path;
  double snapshot_t = -1.0;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "verify packet spreading and arrival-time statistics");
  add_design_flags(simulate, design_flags);
  add_common(simulate);
  simulate->add_option("--samples", samples, "Monte Carlo samples (>= 1e3)");
  simulate->add_option("--seed", seed, "Monte Carlo seed");
  simulate->add_option("--dump", dump_path, "write |psi|^2 snapshot CSV here");
  simulate->add_option("--snapshot-t", snapshot_t,
                       "snapshot time for --dump (default: running time T)");

  std::string filter;
  CLI::App* repro = app.add_subcommand("reproduce", "run the built-in worked examples");
  repro->add_option("--case", filter, "name glob, e.g. 'wigner-*'");
  add_common(repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors are exit 2
  }

  PhysicalConstants k = const_flags.resolve();

  if (derive->parsed() || invert->parsed()) {
    ClockDesign d = close_design(design_flags.input(k), k);
    if (invert->parsed()) {
      Field f = field_from_name(target);
      if (output == "json") {
        emit(nlohmann::json{{field_name(f), d.field(f)}}.dump(2) + "\n", out_path);
      } else {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s = %.9e\n", field_name(f), d.field(f));
        emit(buf, out_path);
      }
      return 0;
    }
    if (output == "json") {
      emit(design_to_json(d).dump(2) + "\n", out_path);
    } else if (output == "csv") {
      emit(design_csv_header() + "\n" + design_csv_row(d) + "\n", out_path);
    } else {
      emit(format_design_table(d, human), out_path);
    }
    return 0;
  }

  if (check_cmd->parsed()) {
    ClockDesign d = close_design(design_flags.input(k), k);
    FeasibilityReport r = check(d, strong_factor, rel_threshold);
    MaterialNote note = material_note(d, k);
    if (output == "json") {
      nlohmann::json j = {{"design", design_to_json(d)},
                          {"report", report_to_json(r)},
                          {"material_note", to_string(note)}};
      emit(j.dump(2) + "\n", out_path);
    } else {
      emit(format_design_table(d, human) + "\n" + format_report_table(r, note),
           out_path);
    }
    return strict && !r.all_requirements() ? 1 : 0;
  }

  if (sweep_cmd->parsed()) {
    SweepRequest request;
    request.axis1 = parse_axis(axis1_text);
    request.axis2 = parse_axis(axis2_text);
    request.mode = design_flags.dial_mode();
    request.strong_factor = strong_factor;
    request.rel_threshold = rel_threshold;
    request.workers = workers;
    if (design_flags.rho == "terrestrial") {
      request.density = DensityPolicy::terrestrial();
    } else if (design_flags.rho == "nuclear") {
      request.density = DensityPolicy::nuclear();
    } else {
      request.density = DensityPolicy::fixed(design_flags.resolve_rho(k));
    }
    SweepResult result = sweep(request, k);
    if (output == "json") {
      emit(sweep_to_json(result).dump(2) + "\n", out_path);
    } else if (output == "svg") {
      emit(sweep_to_svg(result), out_path);
    } else if (output == "csv") {
      emit(sweep_to_csv(result), out_path);
    } else {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "cells %zu  feasible %zu  invalid %zu  max feasible n %.6g\n",
                    result.cells.size(), result.summary.feasible_cells,
                    result.summary.invalid_cells, result.summary.max_feasible_n);
      emit(buf, out_path);
    }
    return 0;
  }

  if (simulate->parsed()) {
    ClockDesign d = close_design(design_flags.input(k), k);
    SpreadingReport spreading = verify_spreading_condition(d, k);
    ArrivalStats stats = arrival_time_spread(d, samples, seed);
    if (output == "json") {
      nlohmann::json j = {
          {"design", design_to_json(d)},
          {"spreading",
           {{"growth_std", spreading.growth_std},
            {"growth_paper", spreading.growth_paper},
            {"dt_end_over_tau_std", spreading.dt_end_over_tau_std},
            {"dt_end_over_tau_paper", spreading.dt_end_over_tau_paper},
            {"within_band", spreading.within_band}}},
          {"arrival",
           {{"mean", stats.mean},
            {"spread", stats.spread},
            {"spread_over_tau", stats.spread / d.tau},
            {"samples", stats.samples},
            {"discarded", stats.discarded},
            {"seed", seed}}}};
      emit(j.dump(2) + "\n", out_path);
    } else {
      std::ostringstream out;
      out << format_spreading_table(spreading);
      char buf[200];
      std::snprintf(buf, sizeof(buf),
                    "arrival mean %.9e s (T = %.9e s)\narrival spread %.9e s "
                    "(tau = %.9e s, spread/tau = %.4f)\nsamples %llu, discarded %llu\n",
                    stats.mean, d.T, stats.spread, d.tau, stats.spread / d.tau,
                    static_cast<unsigned long long>(stats.samples),
                    static_cast<unsigned long long>(stats.discarded));
      out << buf;
      emit(out.str(), out_path);
    }
    if (!dump_path.empty()) {
      double t = snapshot_t >= 0.0 ? snapshot_t : d.T;
      GaussianPacket packet{0.5 * d.dial, -d.u, d.dx / std::numbers::sqrt2, d.M, 0.0,
                            WidthConvention::paper_hbar};
      // auto-size the grid around the trajectory
      double sigma_end = width_at(packet, t, k) / std::numbers::sqrt2;
      double lo = std::min(packet.center - 10 * packet.sigma0,
                           packet.center - d.u * t - 10 * sigma_end);
      double hi = packet.center + 10 * packet.sigma0;
      double k0 = d.M * d.u / k.hbar;
      double dg_max = std::numbers::pi / (k0 + 10.0 / packet.sigma0);
      double span = hi - lo;
      int points = 1;
      while (points < span / dg_max && points < (1 << 22)) points <<= 1;
      points = std::max(points, 256);
      GridState state = propagate_grid(packet, {lo, hi, points}, t, k);
      std::ofstream dump(dump_path);
      if (!dump) throw std::runtime_error("cannot open dump file '" + dump_path + "'");
      write_density_csv(state, dump);
    }
    return 0;
  }

  if (repro->parsed()) {
    ReproOutcome outcome = reproduce(k, filter);
    if (output == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (const ReproRow& r : outcome.rows) {
        rows.push_back({{"case", r.case_name},
                        {"field", r.field},
                        {"computed", r.computed},
                        {"published", r.expected},
                        {"ratio", r.ratio},
                        {"tolerance", r.tolerance},
                        {"citation", r.citation},
                        {"pass", r.pass}});
      }
      emit(nlohmann::json{{"rows", rows}, {"all_pass", outcome.all_pass}}.dump(2) + "\n",
           out_path);
    } else {
      emit(format_repro_table(outcome), out_path);
    }
    return outcome.all_pass ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const swclock::ClosureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const swclock::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
