#include "swclock/design.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace swclock {

namespace {

constexpr double kRadiusCoeff = 0.62;      // sphere of volume M/rho
constexpr double kConsistencyRel = 1e-9;   // redundant-known tolerance
constexpr double kPivotTol = 1e-9;

// Every design relation is a monomial, so each field is coeff * tau^a * n^b
// * (2l)^c over the free parameters of the general-dial closure.
struct Monomial {
  double coeff;
  std::array<int, 3> exps;  // (tau, n, dial)
};

struct FieldInfo {
  Field field;
  const char* name;
  Dimension dimension;
  const char* relation;  // shown in inconsistency errors
};

constexpr FieldInfo kFields[] = {
    {Field::tau, "tau", dim::time, "tau = T/n"},
    {Field::T, "T", dim::time, "T = n*tau"},
    {Field::n, "n", dim::dimensionless, "n = T/tau"},
    {Field::u, "u", dim::speed, "u = 2l/T"},
    {Field::dial, "dial", dim::length, "2l = u*T"},
    {Field::dx, "dx", dim::length, "dx = u*tau"},
    {Field::dp, "dp", dim::momentum, "dp = hbar/dx"},
    {Field::dt, "dt", dim::time, "dt = dx/u"},
    {Field::du, "du", dim::speed, "du = u/n"},
    {Field::M, "M", dim::mass, "M = hbar*T/dx^2"},
    {Field::L_M, "L_M", dim::length, "L_M = hbar/(M*c)"},
    {Field::R, "R", dim::length, "R = 0.62*(M/rho)^(1/3)"},
    {Field::rho, "rho", dim::density, "rho (given)"},
};

const FieldInfo& info(Field f) {
  for (const auto& fi : kFields) {
    if (fi.field == f) return fi;
  }
  throw std::logic_error("unknown field");
}

// General-dial exponents; maximal mode substitutes 2l = c*tau.
Monomial general_monomial(Field f, const PhysicalConstants& k) {
  switch (f) {
    case Field::tau:  return {1.0, {1, 0, 0}};
    case Field::T:    return {1.0, {1, 1, 0}};
    case Field::n:    return {1.0, {0, 1, 0}};
    case Field::u:    return {1.0, {-1, -1, 1}};
    case Field::dial: return {1.0, {0, 0, 1}};
    case Field::dx:   return {1.0, {0, -1, 1}};
    case Field::dp:   return {k.hbar, {0, 1, -1}};
    case Field::dt:   return {1.0, {1, 0, 0}};
    case Field::du:   return {1.0, {-1, -2, 1}};
    case Field::M:    return {k.hbar, {1, 3, -2}};
    case Field::L_M:  return {1.0 / k.c, {-1, -3, 2}};
    default:
      throw ClosureError(ClosureError::Kind::invalid_value,
                         std::string("field '") + field_name(f) +
                             "' cannot be used as a closure known");
  }
}

Monomial monomial_for(Field f, DialMode mode, const PhysicalConstants& k) {
  Monomial m = general_monomial(f, k);
  if (mode == DialMode::maximal_dial) {
    // fold the dial exponent into tau via 2l = c*tau
    m.coeff *= std::pow(k.c, m.exps[2]);
    m.exps[0] += m.exps[2];
    m.exps[2] = 0;
  }
  return m;
}

constexpr Field kClosureFields[] = {Field::tau, Field::T, Field::n,
                                    Field::u, Field::dial, Field::dx,
                                    Field::dp, Field::dt, Field::du, Field::M};

}  // namespace

const char* field_name(Field f) { return info(f).name; }

Dimension field_dimension(Field f) { return info(f).dimension; }

Field field_from_name(const std::string& name) {
  for (const auto& fi : kFields) {
    if (name == fi.name) return fi.field;
  }
  if (name == "2l" || name == "dial") return Field::dial;
  throw std::invalid_argument("unknown field name '" + name + "'");
}

double ClockDesign::field(Field f) const {
  switch (f) {
    case Field::tau:  return tau;
    case Field::T:    return T;
    case Field::n:    return n;
    case Field::u:    return u;
    case Field::dial: return dial;
    case Field::dx:   return dx;
    case Field::dp:   return dp;
    case Field::dt:   return dt;
    case Field::du:   return du;
    case Field::M:    return M;
    case Field::L_M:  return L_M;
    case Field::R:    return R;
    case Field::rho:  return rho;
  }
  throw std::logic_error("unknown field");
}

ClockDesign close_design(const DesignInput& input, const PhysicalConstants& k) {
  const int dof = input.mode == DialMode::maximal_dial ? 2 : 3;

  if (!(input.rho > 0.0) || !std::isfinite(input.rho)) {
    throw ClosureError(ClosureError::Kind::invalid_value, "rho must be positive and finite");
  }
  for (const auto& [field, quantity] : input.knowns) {
    if (quantity.dimension() != field_dimension(field)) {
      throw ClosureError(ClosureError::Kind::invalid_value,
                         std::string("known '") + field_name(field) +
                             "' has dimension [" + quantity.dimension().str() +
                             "], expected [" + field_dimension(field).str() + "]");
    }
    if (!(quantity.value() > 0.0) || !std::isfinite(quantity.value())) {
      throw ClosureError(ClosureError::Kind::invalid_value,
                         std::string("known '") + field_name(field) +
                             "' must be positive and finite");
    }
  }

  // Augmented system: exps . (log tau, log n[, log 2l]) = log(value/coeff).
  struct Row {
    std::array<double, 3> a;
    double rhs;
    Field source;
  };
  std::vector<Row> rows;
  for (const auto& [field, quantity] : input.knowns) {
    Monomial m = monomial_for(field, input.mode, k);
    Row row{{0, 0, 0}, std::log(quantity.value()) - std::log(m.coeff), field};
    for (int j = 0; j < 3; ++j) row.a[j] = m.exps[j];
    rows.push_back(row);
  }

  // Gauss-Jordan with partial pivoting; rank deficiency leaves columns
  // without pivots, redundant rows reduce to zero and are consistency-checked
  // after the solve.
  std::array<int, 3> pivot_row{-1, -1, -1};
  int next = 0;
  for (int col = 0; col < dof; ++col) {
    int best = -1;
    double best_mag = kPivotTol;
    for (int r = next; r < static_cast<int>(rows.size()); ++r) {
      if (std::abs(rows[r].a[col]) > best_mag) {
        best = r;
        best_mag = std::abs(rows[r].a[col]);
      }
    }
    if (best < 0) continue;
    std::swap(rows[next], rows[best]);
    Row& p = rows[next];
    double inv = 1.0 / p.a[col];
    for (int j = 0; j < dof; ++j) p.a[j] *= inv;
    p.rhs *= inv;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == next) continue;
      double f = rows[r].a[col];
      if (f == 0.0) continue;
      for (int j = 0; j < dof; ++j) rows[r].a[j] -= f * p.a[j];
      rows[r].rhs -= f * p.rhs;
    }
    pivot_row[col] = next;
    ++next;
  }

  if (next < dof) {
    // Which additional knowns would raise the rank?
    std::ostringstream missing;
    for (Field candidate : kClosureFields) {
      Monomial m = monomial_for(candidate, input.mode, k);
      std::array<double, 3> v{};
      for (int j = 0; j < 3; ++j) v[j] = m.exps[j];
      for (int col = 0; col < dof; ++col) {
        if (pivot_row[col] < 0) continue;
        double f = v[col];
        for (int j = 0; j < dof; ++j) v[j] -= f * rows[pivot_row[col]].a[j];
      }
      double residual = 0.0;
      for (int j = 0; j < dof; ++j) residual += v[j] * v[j];
      if (residual > kPivotTol) {
        if (missing.tellp() > 0) missing << ", ";
        missing << field_name(candidate);
      }
    }
    std::ostringstream msg;
    msg << "under-determined: " << rows.size() << " known(s) fix " << next
        << " of " << dof << " degrees of freedom; need " << (dof - next)
        << " more of {" << missing.str() << "}";
    throw ClosureError(ClosureError::Kind::under_determined, msg.str());
  }

  std::array<double, 3> x{0, 0, 0};
  for (int col = 0; col < dof; ++col) x[col] = rows[pivot_row[col]].rhs;

  auto eval = [&](Field f) {
    Monomial m = monomial_for(f, input.mode, k);
    return m.coeff * std::exp(m.exps[0] * x[0] + m.exps[1] * x[1] + m.exps[2] * x[2]);
  };

  // Redundant knowns must reproduce to kConsistencyRel.
  for (const auto& [field, quantity] : input.knowns) {
    double computed = eval(field);
    if (std::abs(computed / quantity.value() - 1.0) > kConsistencyRel) {
      std::ostringstream msg;
      msg << "inconsistent input: given " << field_name(field) << " = "
          << quantity.value() << " but the other knowns give "
          << field_name(field) << " = " << computed << " (violates "
          << info(field).relation << ")";
      throw ClosureError(ClosureError::Kind::inconsistent, msg.str());
    }
  }

  ClockDesign d;
  d.mode = input.mode;
  d.rho = input.rho;
  d.tau = eval(Field::tau);
  d.T = eval(Field::T);
  d.n = eval(Field::n);
  d.u = eval(Field::u);
  d.dial = eval(Field::dial);
  d.dx = eval(Field::dx);
  d.dp = eval(Field::dp);
  d.dt = eval(Field::dt);
  d.du = eval(Field::du);
  d.M = eval(Field::M);
  d.L_M = eval(Field::L_M);
  d.R = kRadiusCoeff * std::cbrt(d.M / d.rho);

  for (Field f : {Field::tau, Field::T, Field::n, Field::u, Field::dial,
                  Field::dx, Field::dp, Field::dt, Field::du, Field::M,
                  Field::L_M, Field::R}) {
    double v = d.field(f);
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "closure left '" << field_name(f) << "' non-positive or non-finite (" << v
          << "); inputs out of representable range";
      throw ClosureError(ClosureError::Kind::invalid_value, msg.str());
    }
  }
  return d;
}

double invert_for(Field target, const DesignInput& fixed, const PhysicalConstants& k) {
  return close_design(fixed, k).field(target);
}

}  // namespace swclock
