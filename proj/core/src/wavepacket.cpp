#include "swclock/wavepacket.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include "swclock/parallel.hpp"

namespace swclock {

namespace {

constexpr double kSupportSigmas = 8.0;

double convention_factor(WidthConvention c) {
  // paper convention: dx*dp = hbar with dp = hbar/(2 sigma_x) * ... for a
  // minimal packet sigma_x*sigma_p = hbar/2, so dx = sqrt(2)*sigma_x makes
  // dx * (sqrt(2)*sigma_p) = hbar.
  return c == WidthConvention::paper_hbar ? std::numbers::sqrt2 : 1.0;
}

double sigma_at(double sigma0, double mass, double t, double hbar) {
  double s = hbar * t / (2.0 * mass * sigma0 * sigma0);
  return sigma0 * std::sqrt(1.0 + s * s);
}

// FFTW planning is not thread-safe; execution of a plan on its own arrays is.
std::mutex g_fftw_mutex;

}  // namespace

double width_at(const GaussianPacket& packet, double t, const PhysicalConstants& k) {
  if (t < 0.0) throw std::invalid_argument("width_at: t must be non-negative");
  if (!(packet.sigma0 > 0.0) || !(packet.mass > 0.0)) {
    throw std::invalid_argument("width_at: sigma0 and mass must be positive");
  }
  return convention_factor(packet.convention) *
         sigma_at(packet.sigma0, packet.mass, t, k.hbar);
}

double GridState::norm() const {
  double d = dx_grid();
  double sum = 0.0;
  for (const auto& a : psi) sum += std::norm(a);
  return sum * d;
}

double GridState::mean_x() const {
  double d = dx_grid();
  double sum = 0.0;
  for (int i = 0; i < static_cast<int>(psi.size()); ++i) {
    sum += x_at(i) * std::norm(psi[i]);
  }
  return sum * d / norm();
}

double GridState::sigma_x() const {
  double d = dx_grid();
  double mu = mean_x();
  double sum = 0.0;
  for (int i = 0; i < static_cast<int>(psi.size()); ++i) {
    double dxi = x_at(i) - mu;
    sum += dxi * dxi * std::norm(psi[i]);
  }
  return std::sqrt(sum * d / norm());
}

GridState propagate_grid(const GaussianPacket& initial, const GridSpec& spec,
                         double t, const PhysicalConstants& k) {
  if (t < 0.0) throw std::invalid_argument("propagate_grid: t must be non-negative");
  int n = spec.points;
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("propagate_grid: points must be a power of two >= 2");
  }
  double length = spec.x_max - spec.x_min;
  if (!(length > 0.0)) {
    throw std::invalid_argument("propagate_grid: empty domain");
  }

  // Support must stay kSupportSigmas widths clear of both boundaries for the
  // whole evolution, otherwise the periodic wrap contaminates the packet.
  double sigma0 = initial.sigma0;
  double sigma_t = sigma_at(sigma0, initial.mass, t, k.hbar);
  double x0 = initial.center;
  double xt = x0 + initial.velocity * t;
  double lo = std::min(x0 - kSupportSigmas * sigma0, xt - kSupportSigmas * sigma_t);
  double hi = std::max(x0 + kSupportSigmas * sigma0, xt + kSupportSigmas * sigma_t);
  if (lo < spec.x_min || hi > spec.x_max) {
    double center = 0.5 * (lo + hi);
    double half = 0.5 * (hi - lo) * 1.25;
    std::ostringstream msg;
    msg << "grid domain [" << spec.x_min << ", " << spec.x_max
        << "] too small: packet support is [" << lo << ", " << hi
        << "]; use at least [" << center - half << ", " << center + half << "]";
    throw GridDomainError(msg.str(), half);
  }

  double dg = length / n;
  double k0 = initial.mass * initial.velocity / k.hbar;
  // The carrier k0 and the packet's momentum content must be resolvable.
  double k_nyquist = std::numbers::pi / dg;
  if (std::abs(k0) + kSupportSigmas / sigma0 > k_nyquist) {
    std::ostringstream msg;
    msg << "grid spacing " << dg << " cannot resolve wavenumber content up to "
        << std::abs(k0) + kSupportSigmas / sigma0 << " rad/cm (Nyquist "
        << k_nyquist << "); use more points";
    throw GridDomainError(msg.str(), 0.5 * length);
  }

  GridState state;
  state.spec = spec;
  state.mass = initial.mass;
  state.t = t;
  state.psi.resize(n);

  double norm_coeff = std::pow(2.0 * std::numbers::pi * sigma0 * sigma0, -0.25);
  for (int i = 0; i < n; ++i) {
    double x = spec.x_min + i * dg;
    double arg = (x - x0) / (2.0 * sigma0);
    state.psi[i] = norm_coeff * std::exp(-arg * arg) *
                   std::exp(std::complex<double>(0.0, k0 * x));
  }

  if (t > 0.0) {
    fftw_plan fwd, bwd;
    auto* data = reinterpret_cast<fftw_complex*>(state.psi.data());
    {
      std::lock_guard<std::mutex> lock(g_fftw_mutex);
      fwd = fftw_plan_dft_1d(n, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_1d(n, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(fwd);
    double dk = 2.0 * std::numbers::pi / length;
    double phase_coeff = k.hbar * t / (2.0 * initial.mass);
    for (int i = 0; i < n; ++i) {
      int m = i <= n / 2 ? i : i - n;  // signed frequency index
      double kk = m * dk;
      state.psi[i] *= std::exp(std::complex<double>(0.0, -phase_coeff * kk * kk));
    }
    fftw_execute(bwd);
    double scale = 1.0 / n;  // FFTW transforms are unnormalized
    for (auto& a : state.psi) a *= scale;
    {
      std::lock_guard<std::mutex> lock(g_fftw_mutex);
      fftw_destroy_plan(fwd);
      fftw_destroy_plan(bwd);
    }
  }
  return state;
}

void write_density_csv(const GridState& state, std::ostream& out) {
  out << "x,probability_density,t\n";
  char line[96];
  for (int i = 0; i < static_cast<int>(state.psi.size()); ++i) {
    std::snprintf(line, sizeof(line), "%.12e,%.12e,%.12e\n", state.x_at(i),
                  std::norm(state.psi[i]), state.t);
    out << line;
  }
}

ArrivalStats arrival_time_spread(const ClockDesign& design, std::uint64_t samples,
                                 std::uint64_t seed, int workers) {
  if (samples < 1000) {
    throw std::invalid_argument("arrival_time_spread: need at least 1e3 samples");
  }

  constexpr std::uint64_t kBatch = 4096;
  std::uint64_t batches = (samples + kBatch - 1) / kBatch;
  std::vector<double> sum(batches, 0.0), sum_sq(batches, 0.0);
  std::vector<std::uint64_t> kept(batches, 0), dropped(batches, 0);

  double half_dial = 0.5 * design.dial;
  // Accumulate deviations from the nominal transit time; accumulating raw
  // times loses the variance to cancellation when spread/mean ~ 1e-7.
  double shift = design.T;

  parallel_for(batches, workers, [&](std::size_t b) {
    // splitmix-style batch seeding: reproducible for any worker count
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (b + 1);
    std::mt19937_64 gen(s);
    std::normal_distribution<double> pos(half_dial, design.dx);
    std::normal_distribution<double> vel(-design.u, design.du);
    std::uint64_t count = std::min(kBatch, samples - b * kBatch);
    for (std::uint64_t i = 0; i < count; ++i) {
      double x0 = pos(gen);
      double v = vel(gen);
      if (v >= 0.0) {
        ++dropped[b];
        continue;
      }
      double t = (x0 + half_dial) / (-v) - shift;
      sum[b] += t;
      sum_sq[b] += t * t;
      ++kept[b];
    }
  });

  double total = 0.0, total_sq = 0.0;
  std::uint64_t n_kept = 0, n_dropped = 0;
  for (std::uint64_t b = 0; b < batches; ++b) {
    total += sum[b];
    total_sq += sum_sq[b];
    n_kept += kept[b];
    n_dropped += dropped[b];
  }

  if (static_cast<double>(n_dropped) > 1e-3 * static_cast<double>(samples)) {
    std::ostringstream msg;
    msg << "arrival_time_spread: " << n_dropped << " of " << samples
        << " draws failed to cross the detector; the design is too "
           "relativistic or noisy for the semiclassical model";
    throw std::runtime_error(msg.str());
  }

  ArrivalStats stats;
  stats.samples = n_kept;
  stats.discarded = n_dropped;
  stats.mean = shift + total / n_kept;
  double var = (total_sq - total * total / n_kept) / (n_kept - 1);
  stats.spread = std::sqrt(std::max(0.0, var));
  return stats;
}

SpreadingReport verify_spreading_condition(const ClockDesign& design,
                                           const PhysicalConstants& k) {
  SpreadingReport r;
  GaussianPacket std_packet{0.0, -design.u, design.dx, design.M, 0.0,
                            WidthConvention::std_dev_hbar_half};
  GaussianPacket paper_packet{0.0, -design.u, design.dx / std::numbers::sqrt2,
                              design.M, 0.0, WidthConvention::paper_hbar};
  r.growth_std = width_at(std_packet, design.T, k) / width_at(std_packet, 0.0, k);
  r.growth_paper =
      width_at(paper_packet, design.T, k) / width_at(paper_packet, 0.0, k);
  r.dt_end_std = width_at(std_packet, design.T, k) / design.u;
  r.dt_end_paper = width_at(paper_packet, design.T, k) / design.u;
  r.dt_end_over_tau_std = r.dt_end_std / design.tau;
  r.dt_end_over_tau_paper = r.dt_end_paper / design.tau;
  r.within_band = r.growth_std > 1.0 && r.growth_std <= 2.5 &&
                  r.growth_paper > 1.0 && r.growth_paper <= 2.5;
  return r;
}

}  // namespace swclock
