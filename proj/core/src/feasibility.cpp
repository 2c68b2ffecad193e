#include "swclock/feasibility.hpp"

#include <cmath>
#include <sstream>

#include "swclock/parallel.hpp"

namespace swclock {

namespace {

Requirement requirement(double lhs, double rhs, double strong_factor) {
  Requirement r;
  r.margin = lhs / (rhs * strong_factor);
  r.pass = r.margin > 1.0;
  return r;
}

}  // namespace

const char* to_string(MassClass c) {
  return c == MassClass::microscopic ? "microscopic" : "macroscopic";
}

const char* to_string(SizeClass c) {
  switch (c) {
    case SizeClass::microscopic: return "microscopic";
    case SizeClass::intermediate: return "intermediate";
    case SizeClass::macroscopic: return "macroscopic";
  }
  return "?";
}

const char* to_string(MaterialNote m) {
  switch (m) {
    case MaterialNote::nucleon_scale: return "nucleon_scale";
    case MaterialNote::unstable_nucleus_scale: return "unstable_nucleus_scale";
    case MaterialNote::atomic_solid_scale: return "atomic_solid_scale";
    case MaterialNote::bulk_scale: return "bulk_scale";
  }
  return "?";
}

FeasibilityReport check(const ClockDesign& design, double strong_factor,
                        double rel_threshold) {
  if (!(strong_factor > 1.0)) {
    throw std::invalid_argument("strong_factor must exceed 1");
  }
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0)) {
    throw std::invalid_argument("rel_threshold must lie in (0, 1)");
  }

  FeasibilityReport r;
  r.req_a = requirement(design.n, 1.0, strong_factor);
  r.req_b = requirement(design.dx, design.L_M, strong_factor);
  r.req_c = requirement(design.dial, design.R, strong_factor);
  r.req_d = requirement(design.dx, design.R, strong_factor);

  // u/c = 1/n lands exactly on the default threshold for the n = 100 clock;
  // the comparison must not lose it to rounding. c is recovered from the
  // tuple itself: hbar = dx*dp and L_M = hbar/(M*c) in both dial modes.
  double c = design.dx * design.dp / (design.M * design.L_M);
  r.relativistic_warning = design.u / c >= rel_threshold * (1.0 - 1e-12);

  r.mass_class = design.M <= kMicroscopicMassMax ? MassClass::microscopic
                                                 : MassClass::macroscopic;
  if (design.dial <= kMicroscopicSizeMax) {
    r.size_class = SizeClass::microscopic;
  } else if (design.dial >= kMacroscopicSizeMin) {
    r.size_class = SizeClass::macroscopic;
  } else {
    r.size_class = SizeClass::intermediate;
  }
  return r;
}

MaterialNote material_note(const ClockDesign& design, const PhysicalConstants& k) {
  double m = design.M;
  if (m <= 10.0 * k.nucleon_mass) return MaterialNote::nucleon_scale;
  if (m <= 1e-20) {
    // The design only works if the bodies are denser than atoms, i.e. their
    // radius must sit below the atomic scale; such a nucleus is not stable.
    double radius_needed = design.dx / kDefaultStrongFactor;
    if (radius_needed < kAtomicRadius) return MaterialNote::unstable_nucleus_scale;
  }
  return m < 1e-3 ? MaterialNote::atomic_solid_scale : MaterialNote::bulk_scale;
}

double DensityPolicy::density_for(double mass, const PhysicalConstants& k) const {
  switch (kind) {
    case Kind::terrestrial:
      return k.density_terrestrial;
    case Kind::nuclear:
      return mass < kNuclearMassCap ? k.density_nuclear : k.density_terrestrial;
    case Kind::fixed:
      return fixed_value;
  }
  return k.density_terrestrial;
}

namespace {

std::vector<double> log_grid(const AxisSpec& axis) {
  if (axis.points < 2) {
    throw std::invalid_argument(std::string("axis '") + field_name(axis.field) +
                                "': need at least 2 points per axis");
  }
  if (!(axis.min > 0.0) || !(axis.max > axis.min)) {
    throw std::invalid_argument(std::string("axis '") + field_name(axis.field) +
                                "': need 0 < min < max");
  }
  std::vector<double> grid(axis.points);
  double lo = std::log10(axis.min);
  double step = (std::log10(axis.max) - lo) / (axis.points - 1);
  for (int i = 0; i < axis.points; ++i) grid[i] = std::pow(10.0, lo + i * step);
  grid.front() = axis.min;
  grid.back() = axis.max;
  return grid;
}

}  // namespace

SweepResult sweep(const SweepRequest& request, const PhysicalConstants& k) {
  if (request.axis1.field == request.axis2.field) {
    throw std::invalid_argument("sweep axes must differ");
  }

  SweepResult result;
  result.request = request;
  result.grid1 = log_grid(request.axis1);
  result.grid2 = log_grid(request.axis2);
  result.cells.resize(result.grid1.size() * result.grid2.size());

  std::size_t n2 = result.grid2.size();
  parallel_for(result.cells.size(), request.workers, [&](std::size_t idx) {
    SweepCell& cell = result.cells[idx];
    double v1 = result.grid1[idx / n2];
    double v2 = result.grid2[idx % n2];
    try {
      DesignInput input;
      input.mode = request.mode;
      input.knowns = {
          {request.axis1.field, {v1, field_dimension(request.axis1.field)}},
          {request.axis2.field, {v2, field_dimension(request.axis2.field)}},
      };
      // Close once to learn M, then fix the density for that mass.
      input.rho = k.density_terrestrial;
      ClockDesign d = close_design(input, k);
      input.rho = request.density.density_for(d.M, k);
      if (input.rho != d.rho) d = close_design(input, k);
      cell.design = d;
      cell.report = check(d, request.strong_factor, request.rel_threshold);
      cell.note = material_note(d, k);
      cell.valid = true;
    } catch (const std::exception& e) {
      cell.valid = false;
      cell.error = e.what();
    }
  });

  SweepSummary& s = result.summary;
  for (const SweepCell& cell : result.cells) {
    if (!cell.valid) {
      ++s.invalid_cells;
      continue;
    }
    std::string key = std::string(to_string(cell.report.mass_class)) + "/" +
                      to_string(cell.report.size_class);
    ++s.class_counts[key];
    bool feasible = cell.report.mass_class == MassClass::microscopic &&
                    cell.report.size_class == SizeClass::microscopic &&
                    cell.report.req_c.pass && cell.report.req_d.pass;
    if (feasible) {
      ++s.feasible_cells;
      s.any_feasible = true;
      s.max_feasible_n = std::max(s.max_feasible_n, cell.design.n);
    }
  }
  return result;
}

}  // namespace swclock
