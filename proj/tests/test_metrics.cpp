#include <doctest.h>

#include <cmath>

#include "hetnet/metrics.hpp"
#include "oracles.hpp"

using namespace hetnet;

namespace {

const LinkProfile kTable4{1.4e6, 72, 6, 1.4766, 0.0};

std::vector<double> point_mass(std::size_t n, std::size_t at) {
  std::vector<double> p(n, 0.0);
  p[at] = 1.0;
  return p;
}

}  // namespace

TEST_CASE("instantaneous bit rate") {
  CHECK(72 * 6 * 1.4766 == doctest::Approx(637.8912).epsilon(1e-15));
  CHECK(instantaneous_bitrate(kTable4) == doctest::Approx(1.4e6 * 637.8912).epsilon(1e-14));
  LinkProfile dead = kTable4;
  dead.bler = 1.0;
  CHECK(instantaneous_bitrate(dead) == 0.0);
  LinkProfile half = kTable4;
  half.frequencies = 36;
  CHECK(instantaneous_bitrate(half) == doctest::Approx(instantaneous_bitrate(kTable4) / 2));
  // Affine in BLER.
  LinkProfile a = kTable4, b = kTable4, c = kTable4;
  a.bler = 0.1;
  b.bler = 0.4;
  c.bler = 0.7;
  CHECK(instantaneous_bitrate(b) - instantaneous_bitrate(a) ==
        doctest::Approx(instantaneous_bitrate(c) - instantaneous_bitrate(b)));
  CHECK(kTable4.validate().empty());
  LinkProfile bad = kTable4;
  bad.bler = 1.2;
  CHECK_FALSE(bad.validate().empty());
}

TEST_CASE("congestion scaling") {
  CHECK(state_bitrate(5.0, 0.7, 0.0) == 5.0);
  CHECK(state_bitrate(5.0, 1.0, 1.0) == 0.0);
  CHECK(state_bitrate(5.0, 0.0, 0.6) == 5.0);
  CHECK(state_block(0.3, 0.5, 0.0) == doctest::Approx(0.3));
  CHECK(state_block(0.3, 1.0, 1.0) == 0.0);
  CHECK(state_block(0.3, 0.0, 1.0) == doctest::Approx(0.3));
  CHECK(congestion_scale(0.25, 1.0) == doctest::Approx(0.5));
  double prev_d = 1e300, prev_b = 1.0;
  for (int j = 0; j <= 20; ++j) {
    const double ratio = j / 20.0;
    CHECK(state_bitrate(10.0, ratio, 0.99) >= state_bitrate(10.0, ratio, 1.0));
    CHECK(state_block(0.4, ratio, 0.5) >= state_block(0.4, ratio, 0.8));
    const double d = state_bitrate(10.0, ratio, 0.8);
    const double b = state_block(1.0, ratio, 0.8);
    CHECK(d <= prev_d);
    CHECK(b <= prev_b);
    CHECK(b >= 0.0);
    prev_d = d;
    prev_b = b;
  }
}

TEST_CASE("Erlang-B against the factorial formula") {
  CHECK(std::abs(erlang_block(1.0, 1) - 0.5) < 1e-12);
  CHECK(std::abs(erlang_block(2.0, 2) - 0.4) < 1e-12);
  CHECK(erlang_block(0.0, 3) == 0.0);
  for (int s = 1; s <= 20; ++s) {
    for (double rho : {0.05, 0.5, 1.0, 3.7, 10.0, 25.0}) {
      CHECK(std::abs(erlang_block(rho, s) - oracle::erlang_b_factorial(rho, s)) < 1e-12);
    }
  }
}

TEST_CASE("weighted means over a distribution") {
  const auto space = enumerate_states(Capacities{2, {1}}, {1}, 2);
  const ZoneWeights unit{ZoneId::subcell(2), {1.0}, 1.0};
  const std::size_t empty = 0;
  const std::size_t full = *space.index_of(OccupancyState{{2, 0, 1}});

  CHECK(mean_bitrate(point_mass(space.size(), empty), space, unit, 7.0, 1.0) == doctest::Approx(7.0));
  CHECK(mean_block(point_mass(space.size(), empty), space, unit, 0.3, 1.0) == 0.0);
  CHECK(mean_block(point_mass(space.size(), full), space, unit, 0.3, 1.0) == doctest::Approx(0.0));
  CHECK(mean_block(point_mass(space.size(), full), space, unit, 0.3, 0.5) ==
        doctest::Approx(0.3 * 0.5));

  // With Lambda = 0 the state factor is one, so only the admitting mass and
  // the weights matter.
  std::vector<double> uniform(space.size(), 1.0 / space.size());
  double admitting = 0.0;
  for (std::size_t e = 0; e < space.size(); ++e) {
    if (space.layout().total_lte(space[e]) + 1 <= 2) admitting += uniform[e];
  }
  const ZoneWeights w{ZoneId::subcell(2), {3.0}, 3.0};
  CHECK(mean_bitrate(uniform, space, w, 5.0, 0.0) == doctest::Approx(5.0 * admitting));

  const double mb = mean_block(uniform, space, w, 0.4, 0.8);
  CHECK(mb >= 0.0);
  CHECK(mb <= 1.0);
  CHECK(mean_bitrate(uniform, space, w, 5.0, 0.99) >= mean_bitrate(uniform, space, w, 5.0, 1.0));
}

TEST_CASE("zone weights total") {
  const ZoneWeights w{ZoneId::subcell(2), {0.25, 0.5}, 0.75};
  CHECK(w.total() == doctest::Approx(0.75));
}
