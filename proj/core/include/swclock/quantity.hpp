#ifndef SWCLOCK_QUANTITY_HPP_
#define SWCLOCK_QUANTITY_HPP_

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swclock {

// Structural dimension over the CGS base (length, mass, time).
// Exponents are small integers; equality is exact.
struct Dimension {
  int length = 0;
  int mass = 0;
  int time = 0;

  friend constexpr bool operator==(const Dimension&, const Dimension&) = default;

  constexpr Dimension operator+(const Dimension& o) const {
    return {length + o.length, mass + o.mass, time + o.time};
  }
  constexpr Dimension operator-(const Dimension& o) const {
    return {length - o.length, mass - o.mass, time - o.time};
  }
  constexpr Dimension operator*(int k) const {
    return {length * k, mass * k, time * k};
  }

  std::string str() const;
};

namespace dim {
inline constexpr Dimension dimensionless{0, 0, 0};
inline constexpr Dimension length{1, 0, 0};
inline constexpr Dimension mass{0, 1, 0};
inline constexpr Dimension time{0, 0, 1};
inline constexpr Dimension speed{1, 0, -1};
inline constexpr Dimension momentum{1, 1, -1};
inline constexpr Dimension density{-3, 1, 0};
inline constexpr Dimension action{2, 1, -1};
}  // namespace dim

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimensioned scalar in CGS units. Addition of mismatched dimensions throws;
// multiplication and division combine exponents.
class Quantity {
 public:
  constexpr Quantity() = default;
  constexpr Quantity(double value, Dimension d) : value_(value), dim_(d) {}

  double value() const { return value_; }
  Dimension dimension() const { return dim_; }

  Quantity operator+(const Quantity& o) const {
    require_same(o, "+");
    return {value_ + o.value_, dim_};
  }
  Quantity operator-(const Quantity& o) const {
    require_same(o, "-");
    return {value_ - o.value_, dim_};
  }
  Quantity operator*(const Quantity& o) const {
    return {value_ * o.value_, dim_ + o.dim_};
  }
  Quantity operator/(const Quantity& o) const {
    return {value_ / o.value_, dim_ - o.dim_};
  }
  Quantity operator*(double s) const { return {value_ * s, dim_}; }
  Quantity operator/(double s) const { return {value_ / s, dim_}; }

  // Integer power; exponents stay on the lattice.
  Quantity pow(int k) const { return {std::pow(value_, k), dim_ * k}; }

 private:
  void require_same(const Quantity& o, const char* op) const;

  double value_ = 0.0;
  Dimension dim_ = dim::dimensionless;
};

inline Quantity operator*(double s, const Quantity& q) { return q * s; }

}  // namespace swclock

#endif  // SWCLOCK_QUANTITY_HPP_
