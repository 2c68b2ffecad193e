#include "swclock/quantity.hpp"

#include <sstream>

namespace swclock {

std::string Dimension::str() const {
  if (*this == dim::dimensionless) return "1";
  std::ostringstream out;
  auto emit = [&out](const char* base, int e) {
    if (e == 0) return;
    if (out.tellp() > 0) out << " ";
    out << base;
    if (e != 1) out << "^" << e;
  };
  emit("cm", length);
  emit("g", mass);
  emit("s", time);
  return out.str();
}

void Quantity::require_same(const Quantity& o, const char* op) const {
  if (dim_ != o.dim_) {
    throw DimensionError(std::string("dimension mismatch in '") + op + "': [" +
                         dim_.str() + "] vs [" + o.dim_.str() + "]");
  }
}

}  // namespace swclock
