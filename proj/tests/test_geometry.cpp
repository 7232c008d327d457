#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hetnet/error.hpp"
#include "hetnet/geometry.hpp"
#include "oracles.hpp"

using namespace hetnet;

namespace {

ClusterGeometry reference() { return ClusterGeometry(600.0, {SubCell{200.0, 300.0, 0.0}}); }

bool mentions(const std::vector<std::string>& v, const std::string& word) {
  for (const auto& s : v) {
    if (s.find(word) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("zone lookup on the reference cluster") {
  const auto g = reference();
  CHECK(g.zone_of({300.0, 0.0}) == ZoneId::subcell(2));
  CHECK(g.zone_of({0.0, 0.0}) == ZoneId::lte_only());
  CHECK_THROWS_AS(g.zone_of({700.0, 0.0}), OutsideCluster);
  CHECK(g.zone_of({600.0, 0.0}) == ZoneId::lte_only());
}

TEST_CASE("points on a sub-cell boundary belong to C_0") {
  const auto g = reference();
  CHECK(g.zone_of({500.0, 0.0}) == ZoneId::lte_only());
  CHECK(g.zone_of({100.0, 0.0}) == ZoneId::lte_only());
  CHECK(g.zone_of({499.999, 0.0}) == ZoneId::subcell(2));
}

TEST_CASE("center angle rotates the sub-cell") {
  const ClusterGeometry g(600.0, {SubCell{200.0, 300.0, std::numbers::pi / 2}});
  CHECK(g.zone_of({0.0, 300.0}) == ZoneId::subcell(2));
  CHECK(g.zone_of({300.0, 0.0}) == ZoneId::lte_only());
}

TEST_CASE("validation reports every violation") {
  CHECK(reference().validate().empty());
  const auto spill = ClusterGeometry(600.0, {SubCell{400.0, 300.0, 0.0}}).validate();
  CHECK(spill.size() == 1);
  const auto overlap =
      ClusterGeometry(600.0, {SubCell{100.0, 300.0, 0.0}, SubCell{100.0, 300.0, 0.0}}).validate();
  CHECK(mentions(overlap, "overlap"));
  CHECK_FALSE(ClusterGeometry(0.0, {}).validate().empty());
  CHECK_FALSE(ClusterGeometry(600.0, {SubCell{0.0, 10.0, 0.0}}).validate().empty());
  // Touching circles share one point and are still reported.
  CHECK_FALSE(
      ClusterGeometry(600.0, {SubCell{100.0, 200.0, 0.0}, SubCell{100.0, 0.0, 0.0}}).validate().empty());
}

TEST_CASE("zones partition the cluster") {
  const ClusterGeometry g(600.0, {SubCell{200.0, 300.0, 0.0}, SubCell{100.0, 300.0, std::numbers::pi}});
  std::mt19937_64 rng(11);
  const int n = 400000;
  std::vector<int> counts(4, 0);
  for (int s = 0; s < n; ++s) {
    const auto v = oracle::uniform_in_disk(rng, 600.0);
    const Point p{v.x, v.y};
    const ZoneId z = g.zone_of(p);
    ++counts[static_cast<std::size_t>(z.value)];
    if (!z.is_lte_only()) {
      REQUIRE(distance(p, g.subcell(z.value).center()) < g.subcell(z.value).radius);
    }
  }
  CHECK(counts[0] + counts[2] + counts[3] == n);
  const double sigma = std::sqrt(0.25 / n);
  CHECK(std::abs(counts[2] / double(n) - 1.0 / 9.0) < 5 * sigma);
  CHECK(std::abs(counts[3] / double(n) - 1.0 / 36.0) < 5 * sigma);
}
