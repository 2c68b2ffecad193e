#ifndef SWCLOCK_WAVEPACKET_HPP_
#define SWCLOCK_WAVEPACKET_HPP_

#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "swclock/constants.hpp"
#include "swclock/design.hpp"

namespace swclock {

// Meaning of the packet width dx:
//   std_dev_hbar_half: dx is the position standard deviation sigma_x of a
//     minimal packet with sigma_x * sigma_p = hbar/2.
//   paper_hbar: dx * dp = hbar, i.e. dx = sqrt(2) * sigma_x.
enum class WidthConvention { std_dev_hbar_half, paper_hbar };

struct GaussianPacket {
  double center = 0.0;     // cm
  double velocity = 0.0;   // cm/s, signed (the hand moves with -u)
  double sigma0 = 0.0;     // cm, initial position standard deviation
  double mass = 0.0;       // g
  double t = 0.0;          // s, elapsed
  WidthConvention convention = WidthConvention::paper_hbar;
};

// Closed-form free-particle width at time t, in the packet's convention:
// sigma(t) = sigma0 * sqrt(1 + (hbar t / (2 m sigma0^2))^2).
double width_at(const GaussianPacket& packet, double t, const PhysicalConstants& k);

class GridDomainError : public std::runtime_error {
 public:
  GridDomainError(const std::string& msg, double suggested_half_width)
      : std::runtime_error(msg), suggested_half_width_(suggested_half_width) {}
  double suggested_half_width() const { return suggested_half_width_; }

 private:
  double suggested_half_width_;
};

struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  int points = 0;  // power of two
};

struct GridState {
  GridSpec spec;
  std::vector<std::complex<double>> psi;
  double mass = 0.0;
  double t = 0.0;

  double dx_grid() const { return (spec.x_max - spec.x_min) / spec.points; }
  double x_at(int i) const { return spec.x_min + i * dx_grid(); }
  double norm() const;
  double mean_x() const;
  double sigma_x() const;
};

// Samples the initial Gaussian and applies the exact free-evolution phase in
// momentum space (one FFT round trip; free evolution needs no splitting).
// Throws GridDomainError when the packet support, initial or final, comes
// within 8 sigma of a boundary.
GridState propagate_grid(const GaussianPacket& initial, const GridSpec& spec,
                         double t, const PhysicalConstants& k);

// |psi|^2 snapshot, columns x, probability density, t.
void write_density_csv(const GridState& state, std::ostream& out);

struct ArrivalStats {
  double mean = 0.0;    // s
  double spread = 0.0;  // s, sample standard deviation
  std::uint64_t samples = 0;
  std::uint64_t discarded = 0;  // non-crossing draws (v >= 0)
};

// Semiclassical Monte Carlo of the hand's passage time across the dial:
// x0 ~ N(+l, dx), v ~ N(-u, du), arrival at -l is t = (x0 + l) / (-v).
// Deterministic for a given seed regardless of worker count.
ArrivalStats arrival_time_spread(const ClockDesign& design, std::uint64_t samples,
                                 std::uint64_t seed, int workers = 0);

struct SpreadingReport {
  double growth_std = 0.0;    // width_at(T)/width_at(0), std-dev convention
  double growth_paper = 0.0;  // same, paper convention
  double dt_end_std = 0.0;    // width_at(T)/u
  double dt_end_paper = 0.0;
  double dt_end_over_tau_std = 0.0;
  double dt_end_over_tau_paper = 0.0;
  bool within_band = false;  // both growth factors in (1, 2.5]
};

// Checks that a packet prepared with the design's dx no more than roughly
// doubles over the running time, under both width conventions.
SpreadingReport verify_spreading_condition(const ClockDesign& design,
                                           const PhysicalConstants& k);

}  // namespace swclock

#endif  // SWCLOCK_WAVEPACKET_HPP_
