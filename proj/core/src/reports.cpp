#include "swclock/reports.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace swclock {

namespace {

using nlohmann::json;

constexpr Field kSerializedFields[] = {
    Field::tau, Field::T, Field::n, Field::u, Field::dial, Field::dx,
    Field::dp, Field::dt, Field::du, Field::M, Field::L_M, Field::R, Field::rho};

const char* mode_name(DialMode m) {
  return m == DialMode::maximal_dial ? "maximal_dial" : "general_dial";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9e", v);
  return buf;
}

bool glob_match(const std::string& pattern, const std::string& text) {
  if (pattern.empty() || pattern == "*") return true;
  // '*' wildcards only
  std::size_t p = 0, t = 0, star = std::string::npos, backtrack = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == text[t])) {
      ++p, ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      backtrack = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++backtrack;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

}  // namespace

json design_to_json(const ClockDesign& d) {
  json j = json::object();
  for (Field f : kSerializedFields) j[field_name(f)] = d.field(f);
  j["mode"] = mode_name(d.mode);
  j["total_mass"] = d.total_mass();
  return j;
}

json report_to_json(const FeasibilityReport& r) {
  auto req = [](const Requirement& q) {
    return json{{"pass", q.pass}, {"margin", q.margin}};
  };
  return json{{"req_a", req(r.req_a)},
              {"req_b", req(r.req_b)},
              {"req_c", req(r.req_c)},
              {"req_d", req(r.req_d)},
              {"relativistic_warning", r.relativistic_warning},
              {"mass_class", to_string(r.mass_class)},
              {"size_class", to_string(r.size_class)}};
}

json sweep_to_json(const SweepResult& s) {
  json cells = json::array();
  for (std::size_t i1 = 0; i1 < s.grid1.size(); ++i1) {
    for (std::size_t i2 = 0; i2 < s.grid2.size(); ++i2) {
      const SweepCell& c = s.cell(i1, i2);
      json jc{{"i1", i1}, {"i2", i2}, {"valid", c.valid}};
      if (c.valid) {
        jc["design"] = design_to_json(c.design);
        jc["report"] = report_to_json(c.report);
        jc["material_note"] = to_string(c.note);
      } else {
        jc["error"] = c.error;
      }
      cells.push_back(std::move(jc));
    }
  }
  json counts = json::object();
  for (const auto& [key, count] : s.summary.class_counts) counts[key] = count;
  return json{
      {"axes",
       {{"axis1", {{"field", field_name(s.request.axis1.field)}, {"grid", s.grid1}}},
        {"axis2", {{"field", field_name(s.request.axis2.field)}, {"grid", s.grid2}}}}},
      {"cells", std::move(cells)},
      {"summary",
       {{"class_counts", std::move(counts)},
        {"feasible_cells", s.summary.feasible_cells},
        {"any_feasible", s.summary.any_feasible},
        {"max_feasible_n", s.summary.max_feasible_n},
        {"invalid_cells", s.summary.invalid_cells}}}};
}

std::string design_csv_header() {
  std::string h;
  for (Field f : kSerializedFields) {
    if (!h.empty()) h += ',';
    h += field_name(f);
  }
  return h + ",mode";
}

std::string design_csv_row(const ClockDesign& d) {
  std::string row;
  for (Field f : kSerializedFields) {
    if (!row.empty()) row += ',';
    row += fmt(d.field(f));
  }
  return row + ',' + mode_name(d.mode);
}

std::string sweep_csv_header() {
  return design_csv_header() +
         ",req_a_pass,req_a_margin,req_b_pass,req_b_margin,req_c_pass,req_c_margin,"
         "req_d_pass,req_d_margin,relativistic_warning,mass_class,size_class,"
         "material_note,valid,error";
}

std::string sweep_to_csv(const SweepResult& s) {
  std::ostringstream out;
  out << sweep_csv_header() << "\n";
  for (std::size_t i1 = 0; i1 < s.grid1.size(); ++i1) {
    for (std::size_t i2 = 0; i2 < s.grid2.size(); ++i2) {
      const SweepCell& c = s.cell(i1, i2);
      if (!c.valid) {
        // keep column count: empty design fields, quoted error at the end
        for (int col = 0; col < 14; ++col) out << ',';
        out << ",,,,,,,,,,,0,\"" << c.error << "\"\n";
        continue;
      }
      const FeasibilityReport& r = c.report;
      out << design_csv_row(c.design) << ',' << r.req_a.pass << ','
          << fmt(r.req_a.margin) << ',' << r.req_b.pass << ',' << fmt(r.req_b.margin)
          << ',' << r.req_c.pass << ',' << fmt(r.req_c.margin) << ',' << r.req_d.pass
          << ',' << fmt(r.req_d.margin) << ',' << r.relativistic_warning << ','
          << to_string(r.mass_class) << ',' << to_string(r.size_class) << ','
          << to_string(c.note) << ",1,\n";
    }
  }
  return out.str();
}

namespace {

// Region-map colors, in precedence order; documented in
// docs/region_map_colors.md.
const char* cell_color(const SweepCell& c) {
  if (!c.valid) return "#bdbdbd";                                   // invalid
  if (!c.report.req_c.pass || !c.report.req_d.pass) return "#e57373";  // geometry fails
  if (c.report.mass_class == MassClass::macroscopic) return "#9575cd";
  if (c.report.size_class != SizeClass::microscopic) return "#64b5f6";
  return "#81c784";  // microscopic mass and size, requirements met
}

}  // namespace

std::string sweep_to_svg(const SweepResult& s) {
  const int cell_w = 40, cell_h = 40;
  const int margin_left = 90, margin_bottom = 60, margin_top = 40, margin_right = 30;
  const int legend_h = 110;
  int nx = static_cast<int>(s.grid1.size());
  int ny = static_cast<int>(s.grid2.size());
  int plot_w = nx * cell_w, plot_h = ny * cell_h;
  int width = margin_left + plot_w + margin_right;
  int height = margin_top + plot_h + margin_bottom + legend_h;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!-- swclock region map format v1 -->\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";

  for (int i1 = 0; i1 < nx; ++i1) {
    for (int i2 = 0; i2 < ny; ++i2) {
      // axis2 increases upward
      int x = margin_left + i1 * cell_w;
      int y = margin_top + (ny - 1 - i2) * cell_h;
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w
          << "\" height=\"" << cell_h << "\" fill=\""
          << cell_color(s.cell(i1, i2)) << "\" stroke=\"#424242\" stroke-width=\"0.5\"/>\n";
    }
  }

  auto tick_label = [](double v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%.1e", v);
    return std::string(buf);
  };
  for (int i1 = 0; i1 < nx; ++i1) {
    out << "<text x=\"" << margin_left + i1 * cell_w + cell_w / 2 << "\" y=\""
        << margin_top + plot_h + 18
        << "\" font-size=\"9\" text-anchor=\"middle\" font-family=\"monospace\">"
        << tick_label(s.grid1[i1]) << "</text>\n";
  }
  for (int i2 = 0; i2 < ny; ++i2) {
    out << "<text x=\"" << margin_left - 6 << "\" y=\""
        << margin_top + (ny - 1 - i2) * cell_h + cell_h / 2 + 3
        << "\" font-size=\"9\" text-anchor=\"end\" font-family=\"monospace\">"
        << tick_label(s.grid2[i2]) << "</text>\n";
  }
  out << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\""
      << margin_top + plot_h + 40
      << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"monospace\">"
      << field_name(s.request.axis1.field) << " (log scale)</text>\n";
  out << "<text x=\"18\" y=\"" << margin_top + plot_h / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"monospace\" "
         "transform=\"rotate(-90 18 "
      << margin_top + plot_h / 2 << ")\">" << field_name(s.request.axis2.field)
      << " (log scale)</text>\n";

  struct LegendEntry {
    const char* color;
    const char* label;
  };
  const LegendEntry legend[] = {
      {"#81c784", "microscopic mass and size, requirements met"},
      {"#64b5f6", "microscopic mass, dial not microscopic"},
      {"#9575cd", "macroscopic mass"},
      {"#e57373", "R << 2l or dx >> R fails"},
      {"#bdbdbd", "closure invalid"},
  };
  int ly = margin_top + plot_h + margin_bottom;
  for (const auto& e : legend) {
    out << "<rect x=\"" << margin_left << "\" y=\"" << ly
        << "\" width=\"14\" height=\"14\" fill=\"" << e.color
        << "\" stroke=\"#424242\" stroke-width=\"0.5\"/>\n"
        << "<text x=\"" << margin_left + 20 << "\" y=\"" << ly + 11
        << "\" font-size=\"11\" font-family=\"monospace\">" << e.label << "</text>\n";
    ly += 20;
  }
  out << "</svg>\n";
  return out.str();
}

namespace {

const char* field_unit(Field f) {
  if (field_dimension(f) == dim::time) return "s";
  if (field_dimension(f) == dim::length) return "cm";
  if (field_dimension(f) == dim::mass) return "g";
  if (field_dimension(f) == dim::speed) return "cm/s";
  if (field_dimension(f) == dim::momentum) return "g cm/s";
  if (field_dimension(f) == dim::density) return "g/cm^3";
  return "";
}

}  // namespace

std::string format_design_table(const ClockDesign& d, bool human) {
  std::ostringstream out;
  out << "mode          " << mode_name(d.mode) << "\n";
  for (Field f : kSerializedFields) {
    char name[16];
    std::snprintf(name, sizeof(name), "%-13s", field_name(f));
    out << name << " " << fmt(d.field(f));
    const char* unit = field_unit(f);
    if (unit[0] != '\0') out << " " << unit;
    if (human && field_dimension(f) == dim::length) {
      char metric[40];
      std::snprintf(metric, sizeof(metric), " (%.3g m)", d.field(f) / 100.0);
      out << metric;
    }
    out << "\n";
  }
  out << "total_mass    " << fmt(d.total_mass()) << " g\n";
  return out.str();
}

std::string format_report_table(const FeasibilityReport& r, MaterialNote note) {
  std::ostringstream out;
  auto req = [&out](const char* label, const Requirement& q) {
    out << label << "  " << (q.pass ? "PASS" : "FAIL") << "  margin " << fmt(q.margin)
        << "\n";
  };
  req("req_a (n >> 1)     ", r.req_a);
  req("req_b (L_M << dx)  ", r.req_b);
  req("req_c (R << 2l)    ", r.req_c);
  req("req_d (dx >> R)    ", r.req_d);
  out << "relativistic_warning  " << (r.relativistic_warning ? "yes" : "no") << "\n";
  out << "mass_class            " << to_string(r.mass_class) << "\n";
  out << "size_class            " << to_string(r.size_class) << "\n";
  out << "material_note         " << to_string(note) << "\n";
  return out.str();
}

std::string format_spreading_table(const SpreadingReport& r) {
  std::ostringstream out;
  out << "growth factor over run (std dev convention)   " << fmt(r.growth_std) << "\n"
      << "growth factor over run (dx*dp=hbar convention) " << fmt(r.growth_paper)
      << "\n"
      << "dt at end of run / tau (std dev convention)   " << fmt(r.dt_end_over_tau_std)
      << "\n"
      << "dt at end of run / tau (dx*dp=hbar convention) "
      << fmt(r.dt_end_over_tau_paper) << "\n"
      << "spreading condition " << (r.within_band ? "satisfied" : "VIOLATED")
      << " (band (1, 2.5])\n";
  return out.str();
}

std::vector<ReproCase> builtin_repro_cases(const PhysicalConstants& k) {
  std::vector<ReproCase> cases;

  {
    ReproCase c;
    c.name = "wigner-1957";
    c.input.mode = DialMode::maximal_dial;
    c.input.knowns = {{Field::tau, {1e-8, dim::time}}, {Field::T, {8.64e4, dim::time}}};
    c.input.rho = k.density_terrestrial;
    c.expected = {
        {Field::n, 8.64e12, 1.0 + 1e-9, "Eq. (28)"},
        {Field::M, 0.072, 1.5, "Eq. (29)"},
        {Field::dial, 300.0, 1.1, "Eq. (30)"},
        {Field::dx, 1e-11, 5.0, "Eq. (31)"},
        {Field::R, 0.26, 1.1, "Eq. (32)"},
    };
    cases.push_back(std::move(c));
  }
  {
    ReproCase c;
    c.name = "micro-mass";
    c.input.mode = DialMode::maximal_dial;
    c.input.knowns = {{Field::tau, {1e-7, dim::time}},
                      {Field::n, {1e7, dim::dimensionless}}};
    c.input.rho = k.density_terrestrial;
    c.expected = {
        {Field::M, 1e-20, 1.5, "Eq. (38)"},
        {Field::u, 3e3, 1.1, "Eq. (40)"},
        {Field::dx, 3e-4, 1.5, "Eq. (41)"},
        {Field::dial, 3e3, 1.5, "Eq. (43)"},
        {Field::R, 1e-7, 2.0, "Eq. (39)"},
    };
    cases.push_back(std::move(c));
  }
  {
    ReproCase c;
    c.name = "nucleon-n100";
    c.input.mode = DialMode::maximal_dial;
    c.input.knowns = {{Field::n, {100.0, dim::dimensionless}},
                      {Field::M, {k.nucleon_mass, dim::mass}}};
    c.input.rho = k.density_nuclear;
    c.expected = {
        {Field::tau, 1e-18, 1.5, "Eq. (48)"},
        {Field::T, 1e-16, 1.5, "Eq. (48)"},
        {Field::dx, 3e-10, 1.5, "Eq. (49)"},
        {Field::dial, 3e-8, 1.5, "Eq. (49)"},
        {Field::u, 3e8, 1.1, "Eq. (50)"},
        {Field::R, 1e-13, 2.0, "Eq. (52)"},
    };
    cases.push_back(std::move(c));
  }
  return cases;
}

ReproOutcome reproduce(const PhysicalConstants& k, const std::string& name_glob) {
  ReproOutcome outcome;
  for (const ReproCase& c : builtin_repro_cases(k)) {
    if (!glob_match(name_glob, c.name)) continue;
    ClockDesign d = close_design(c.input, k);
    (void)check(d, c.strong_factor);
    (void)verify_spreading_condition(d, k);
    for (const ExpectedValue& e : c.expected) {
      ReproRow row;
      row.case_name = c.name;
      row.field = field_name(e.field);
      row.computed = d.field(e.field);
      row.expected = e.value;
      row.ratio = row.computed / row.expected;
      row.tolerance = e.tolerance;
      row.citation = e.citation;
      row.pass = std::max(row.ratio, 1.0 / row.ratio) <= e.tolerance;
      outcome.all_pass = outcome.all_pass && row.pass;
      outcome.rows.push_back(std::move(row));
    }
  }
  return outcome;
}

std::string format_repro_table(const ReproOutcome& outcome) {
  std::ostringstream out;
  out << "case          field  computed        published       ratio     tol    "
         "citation   result\n";
  for (const ReproRow& r : outcome.rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-13s %-6s %-15.6e %-15.6e %-9.4f x%-5.2g %-10s %s\n",
                  r.case_name.c_str(), r.field.c_str(), r.computed, r.expected,
                  r.ratio, r.tolerance, r.citation.c_str(),
                  r.pass ? "pass" : "FAIL");
    out << line;
  }
  out << (outcome.all_pass ? "all cases pass\n" : "FAILURES present\n");
  return out.str();
}

}  // namespace swclock
