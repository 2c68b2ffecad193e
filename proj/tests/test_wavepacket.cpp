#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "swclock/wavepacket.hpp"

using namespace swclock;

namespace {

const PhysicalConstants kDefaults = load_constants();

ClockDesign close_maximal(double v1, Field f1, double v2, Field f2) {
  DesignInput in;
  in.mode = DialMode::maximal_dial;
  in.knowns = {{f1, {v1, field_dimension(f1)}}, {f2, {v2, field_dimension(f2)}}};
  return close_design(in, kDefaults);
}

int next_pow2(double x) {
  int p = 1;
  while (p < x) p *= 2;
  return p;
}

// Grid sized for a packet at rest: domain well clear of the 8-sigma support
// bound, spacing fine enough for the momentum content.
GridSpec spec_for(const GaussianPacket& packet, double t,
                  const PhysicalConstants& k) {
  GaussianPacket still = packet;
  still.convention = WidthConvention::std_dev_hbar_half;
  double sigma_f = width_at(still, t, k);
  double half = packet.sigma0 > 0 ? 16.0 * sigma_f : 0.0;
  double x1 = std::min(packet.center, packet.center + packet.velocity * t) - half;
  double x2 = std::max(packet.center, packet.center + packet.velocity * t) + half;
  int points = next_pow2((x2 - x1) / (packet.sigma0 / 6.0));
  if (points > (1 << 18)) points = 1 << 18;
  return {x1, x2, points};
}

}  // namespace

TEST_CASE("closed-form width") {
  GaussianPacket p{0.0, 0.0, 1e-6, 1e-20, 0.0, WidthConvention::std_dev_hbar_half};

  SUBCASE("identity at t = 0") {
    CHECK(width_at(p, 0.0, kDefaults) == rel(1e-6, 1e-15));
    GaussianPacket paper = p;
    paper.convention = WidthConvention::paper_hbar;
    CHECK(width_at(paper, 0.0, kDefaults) ==
          rel(std::numbers::sqrt2 * 1e-6, 1e-12));
  }

  SUBCASE("ballistic spreading rate at large t") {
    double t0 = 2.0 * p.mass * p.sigma0 * p.sigma0 / kDefaults.hbar;
    double t = 1e6 * t0;
    double rate = width_at(p, t, kDefaults) / t;
    CHECK(rate == rel(kDefaults.hbar / (2.0 * p.mass * p.sigma0), 1e-6));
  }

  SUBCASE("exact closed form") {
    double t0 = 2.0 * p.mass * p.sigma0 * p.sigma0 / kDefaults.hbar;
    double t = 0.7 * t0;
    CHECK(width_at(p, t, kDefaults) ==
          rel(p.sigma0 * std::sqrt(1.0 + 0.49), 1e-12));
  }
}

TEST_CASE("spreading condition on closed designs") {
  ClockDesign d = close_maximal(1e-7, Field::tau, 1e7, Field::n);
  SpreadingReport r = verify_spreading_condition(d, kDefaults);
  // growth over T with hbar T / (M dx^2) = 1 by closure, in either convention
  CHECK(r.growth_std == rel(std::sqrt(1.25), 1e-12));
  CHECK(r.growth_paper == rel(std::numbers::sqrt2, 1e-12));
  CHECK(r.within_band);
  CHECK(r.dt_end_over_tau_std == rel(std::sqrt(1.25), 1e-12));
  CHECK(r.dt_end_over_tau_paper == rel(std::numbers::sqrt2, 1e-12));
  CHECK(r.dt_end_std == rel(d.tau * std::sqrt(1.25), 1e-12));

  SUBCASE("a hundredfold heavier hand barely spreads") {
    ClockDesign heavy = d;
    heavy.M *= 100.0;
    SpreadingReport rh = verify_spreading_condition(heavy, kDefaults);
    CHECK(rh.growth_paper - 1.0 < 1e-3);
    CHECK(rh.growth_std - 1.0 < 1e-3);
  }

  SUBCASE("a hundredfold lighter hand spreads far past doubling") {
    ClockDesign light = d;
    light.M /= 100.0;
    SpreadingReport rl = verify_spreading_condition(light, kDefaults);
    CHECK(rl.growth_paper > 2.5);
    CHECK_FALSE(rl.within_band);
  }
}

TEST_CASE("grid propagation at t = 0 samples the initial Gaussian") {
  GaussianPacket p{0.0, 0.0, 1e-6, 1e-20, 0.0, WidthConvention::std_dev_hbar_half};
  GridSpec spec = spec_for(p, 0.0, kDefaults);
  GridState s = propagate_grid(p, spec, 0.0, kDefaults);
  CHECK(s.norm() == rel(1.0, 1e-9));
  CHECK(std::fabs(s.mean_x()) < 1e-12);
  CHECK(s.sigma_x() == rel(1e-6, 1e-6));
  // amplitudes match the sampled Gaussian profile
  double norm_c = std::pow(2.0 * std::numbers::pi * p.sigma0 * p.sigma0, -0.25);
  for (int i = 0; i < spec.points; i += spec.points / 16) {
    double x = s.x_at(i);
    double expect = norm_c * std::exp(-x * x / (4.0 * p.sigma0 * p.sigma0));
    CHECK(std::fabs(std::abs(s.psi[i]) - expect) < 1e-9 * norm_c);
  }
}

TEST_CASE("grid propagation matches the closed form: nucleon parameters") {
  GaussianPacket p{0.0, 0.0, 3e-10, 1.67e-24, 0.0,
                   WidthConvention::std_dev_hbar_half};
  double t = 1e-16;
  GridSpec spec = spec_for(p, t, kDefaults);
  GridState s = propagate_grid(p, spec, t, kDefaults);
  CHECK(s.norm() == rel(1.0, 1e-9));
  CHECK(s.sigma_x() == rel(width_at(p, t, kDefaults), 1e-6));
}

TEST_CASE("randomized oracle matrix: grid vs closed form") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> log_m(-24.0, -18.0);
  std::uniform_real_distribution<double> log_s(-8.0, -2.0);
  std::uniform_real_distribution<double> log_t(-1.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    double m = std::pow(10.0, log_m(gen));
    double s0 = std::pow(10.0, log_s(gen));
    double t0 = 2.0 * m * s0 * s0 / kDefaults.hbar;
    double t = t0 * std::pow(10.0, log_t(gen));
    GaussianPacket p{0.0, 0.0, s0, m, 0.0, WidthConvention::std_dev_hbar_half};
    GridSpec spec = spec_for(p, t, kDefaults);
    GridState s = propagate_grid(p, spec, t, kDefaults);
    CHECK(s.norm() == rel(1.0, 1e-9));
    CHECK(s.sigma_x() == rel(width_at(p, t, kDefaults), 1e-6));
  }
}

TEST_CASE("moving packet: Ehrenfest drift and Galilean consistency") {
  double m = kDefaults.nucleon_mass;
  double s0 = 2e-10;
  double u = 2.9979e8;
  double t = 7e-17;

  GaussianPacket moving{1e-8, -u, s0, m, 0.0, WidthConvention::std_dev_hbar_half};
  GridSpec spec{-1.5e-7, 1.5e-7, 1 << 16};
  GridState s = propagate_grid(moving, spec, t, kDefaults);
  CHECK(s.norm() == rel(1.0, 1e-9));
  // center crosses the midpoint: 1e-8 - u t = -1.09853e-8
  CHECK(s.mean_x() == rel(1e-8 - u * t, 1e-8));

  GaussianPacket still{1e-8, 0.0, s0, m, 0.0, WidthConvention::std_dev_hbar_half};
  GridState s2 = propagate_grid(still, spec, t, kDefaults);
  // boosting shifts the mean linearly and leaves the width untouched
  CHECK(s.sigma_x() == rel(s2.sigma_x(), 1e-8));
  CHECK(s.mean_x() - s2.mean_x() == rel(-u * t, 1e-8));
}

TEST_CASE("grid preconditions") {
  GaussianPacket p{0.0, 0.0, 1e-6, 1e-20, 0.0, WidthConvention::std_dev_hbar_half};

  SUBCASE("domain too small for the support invariant") {
    GridSpec tight{-4e-6, 4e-6, 1024};  // 4 sigma, needs 8
    try {
      propagate_grid(p, tight, 0.0, kDefaults);
      FAIL("expected GridDomainError");
    } catch (const GridDomainError& e) {
      CHECK(e.suggested_half_width() > 4e-6);
    }
  }

  SUBCASE("final width counts toward the support invariant") {
    double t0 = 2.0 * p.mass * p.sigma0 * p.sigma0 / kDefaults.hbar;
    GridSpec spec{-2e-5, 2e-5, 4096};  // fine at t = 0, too small at 20 t0
    propagate_grid(p, spec, 0.0, kDefaults);
    CHECK_THROWS_AS(propagate_grid(p, spec, 20.0 * t0, kDefaults), GridDomainError);
  }

  SUBCASE("point count must be a power of two") {
    GridSpec odd{-1e-4, 1e-4, 1000};
    CHECK_THROWS_AS(propagate_grid(p, odd, 0.0, kDefaults), std::invalid_argument);
  }
}

TEST_CASE("arrival-time statistics") {
  ClockDesign d = close_maximal(1e-7, Field::tau, 1e7, Field::n);
  double analytic = std::sqrt(d.dx * d.dx / (d.u * d.u) +
                              d.dial * d.dial * d.du * d.du / std::pow(d.u, 4));

  SUBCASE("microscopic-mass design matches the error-propagation oracle") {
    ArrivalStats s = arrival_time_spread(d, 100000, 42);
    CHECK(s.samples + s.discarded == 100000);
    CHECK(s.discarded == 0);
    CHECK(std::fabs(s.mean - d.T) < 3.0 * s.spread / std::sqrt(double(s.samples)));
    CHECK(s.spread >= d.tau);
    CHECK(s.spread <= 2.5 * d.tau);
    CHECK(s.spread == rel(analytic, 0.05));
    CHECK(analytic == rel(std::numbers::sqrt2 * d.tau, 1e-12));
  }

  SUBCASE("position-only uncertainty gives spread = tau") {
    ClockDesign frozen = d;
    frozen.du = 0.0;
    ArrivalStats s = arrival_time_spread(frozen, 200000, 7);
    CHECK(s.spread == rel(d.tau, 0.01));
  }

  SUBCASE("nucleon design stays within the band") {
    ClockDesign nucleon = close_maximal(100.0, Field::n, kDefaults.nucleon_mass,
                                        Field::M);
    ArrivalStats s = arrival_time_spread(nucleon, 100000, 11);
    CHECK(s.spread / nucleon.tau >= 1.0);
    CHECK(s.spread / nucleon.tau <= 2.5);
  }

  SUBCASE("deterministic across worker counts") {
    ArrivalStats a = arrival_time_spread(d, 50000, 123, 1);
    ArrivalStats b = arrival_time_spread(d, 50000, 123, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.spread == b.spread);
  }

  SUBCASE("preconditions and failure modes") {
    CHECK_THROWS_AS(arrival_time_spread(d, 999, 1), std::invalid_argument);
    ClockDesign noisy = d;
    noisy.du = 2.0 * noisy.u;  // ~31% of draws fail to cross
    CHECK_THROWS_AS(arrival_time_spread(noisy, 10000, 1), std::runtime_error);
  }
}

TEST_CASE("Monte Carlo error shrinks as one over root samples") {
  ClockDesign d = close_maximal(1e-7, Field::tau, 1e7, Field::n);
  const std::uint64_t sizes[] = {2000, 8000, 32000, 128000};
  const int reps = 100;
  std::vector<double> log_n, log_sd;
  for (std::uint64_t n : sizes) {
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < reps; ++r) {
      ArrivalStats s = arrival_time_spread(d, n, 1000 * n + r);
      sum += s.spread;
      sum_sq += s.spread * s.spread;
    }
    double var = (sum_sq - sum * sum / reps) / (reps - 1);
    log_n.push_back(std::log(double(n)));
    log_sd.push_back(0.5 * std::log(var));
  }
  // least-squares slope of log(estimator sd) vs log(samples)
  double mx = 0, my = 0;
  for (size_t i = 0; i < log_n.size(); ++i) mx += log_n[i], my += log_sd[i];
  mx /= log_n.size(), my /= log_n.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < log_n.size(); ++i) {
    sxy += (log_n[i] - mx) * (log_sd[i] - my);
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
  }
  double slope = sxy / sxx;
  CHECK(slope > -0.55);
  CHECK(slope < -0.45);
}
