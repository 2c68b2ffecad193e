#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "swclock/constants.hpp"
#include "swclock/quantity.hpp"

using namespace swclock;

TEST_CASE("dimension algebra over the exponent lattice") {
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> e(-3, 3);
  std::uniform_real_distribution<double> v(0.1, 10.0);
  for (int i = 0; i < 500; ++i) {
    Dimension da{e(gen), e(gen), e(gen)};
    Dimension db{e(gen), e(gen), e(gen)};
    Quantity a{v(gen), da}, b{v(gen), db};
    CHECK((a * b).dimension() == da + db);
    CHECK((a / b).dimension() == da - db);
    int k = e(gen);
    CHECK(a.pow(k).dimension() == da * k);
    CHECK((a * b).value() == doctest::Approx(a.value() * b.value()));
  }
}

TEST_CASE("addition is dimension-checked") {
  Quantity t{1.0, dim::time}, l{1.0, dim::length};
  CHECK_THROWS_AS(t + l, DimensionError);
  CHECK_THROWS_AS(t - l, DimensionError);
  Quantity s = t + Quantity{2.0, dim::time};
  CHECK(s.value() == doctest::Approx(3.0));
  CHECK(s.dimension() == dim::time);
}

TEST_CASE("derived dimensions compose") {
  Quantity x{3.0, dim::length}, t{1.5, dim::time};
  CHECK((x / t).dimension() == dim::speed);
  Quantity m{2.0, dim::mass};
  CHECK((m * x / t).dimension() == dim::momentum);
  CHECK((m * x.pow(2) / t).dimension() == dim::action);
  CHECK((m / x.pow(3)).dimension() == dim::density);
  CHECK((x / x).dimension() == dim::dimensionless);
}

TEST_CASE("default constants") {
  PhysicalConstants k = load_constants();
  CHECK(k.hbar == rel(1.0546e-27, 1e-12));
  CHECK(k.c == rel(2.9979e10, 1e-12));
  CHECK(k.nucleon_mass == rel(1.6726e-24, 1e-12));
  CHECK(k.density_terrestrial == 1.0);
  CHECK(k.density_nuclear == rel(2.3e14, 1e-12));
  // the rounded constant used in back-of-envelope arithmetic
  CHECK(k.hbar_over_c2() > 1e-48 / 1.2);
  CHECK(k.hbar_over_c2() < 1e-48 * 1.2);
}

TEST_CASE("constant overrides") {
  PhysicalConstants k = load_constants({{"hbar", 1.0e-27}});
  CHECK(k.hbar == 1.0e-27);
  CHECK(k.c == doctest::Approx(2.9979e10));  // untouched

  CHECK_THROWS_AS(load_constants({{"c", -1.0}}), ConfigError);
  CHECK_THROWS_AS(load_constants({{"c", 0.0}}), ConfigError);
  CHECK_THROWS_AS(load_constants({{"no_such_field", 1.0}}), ConfigError);
  CHECK_THROWS_WITH_AS(load_constants({{"c", -1.0}}),
                       doctest::Contains("c"), ConfigError);
}

namespace {
std::string write_temp(const std::string& text) {
  static int counter = 0;
  std::string path =
      "/tmp/swclock_test_constants_" + std::to_string(counter++) + ".conf";
  std::ofstream out(path);
  out << text;
  return path;
}
}  // namespace

TEST_CASE("constants file parsing") {
  std::string path = write_temp(
      "# comment line\n"
      "hbar 1.1e-27\n"
      "c = 3.0e10   # trailing comment\n"
      "\n");
  auto overrides = parse_constants_file(path);
  CHECK(overrides.size() == 2);
  CHECK(overrides.at("hbar") == 1.1e-27);
  CHECK(overrides.at("c") == 3.0e10);
  PhysicalConstants k = load_constants(overrides);
  CHECK(k.hbar == 1.1e-27);
  CHECK(k.c == 3.0e10);
  CHECK(k.nucleon_mass == rel(1.6726e-24, 1e-9));
  std::remove(path.c_str());

  std::string bad = write_temp("hbar not_a_number\n");
  CHECK_THROWS_AS(parse_constants_file(bad), ConfigError);
  std::remove(bad.c_str());

  CHECK_THROWS_AS(parse_constants_file("/no/such/path"), ConfigError);
}
