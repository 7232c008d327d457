#include <doctest.h>

#include <algorithm>

#include "hetnet/error.hpp"
#include "hetnet/state_space.hpp"
#include "oracles.hpp"

using namespace hetnet;

namespace {

// Brute-force count over session-count vectors for one service per entry of
// `prb`, one sub-cell.
std::size_t brute_count(int lte, int wifi, const std::vector<int>& prb) {
  std::vector<int> upper;
  for (int n : prb) upper.insert(upper.end(), {lte / n, lte / n, wifi});
  return oracle::brute_force(upper, [&](const std::vector<int>& v) {
           int lte_sum = 0, wifi_sum = 0;
           for (std::size_t k = 0; k < prb.size(); ++k) {
             lte_sum += (v[3 * k] + v[3 * k + 1]) * prb[k];
             wifi_sum += v[3 * k + 2];
           }
           return lte_sum <= lte && wifi_sum <= wifi;
         }).size();
}

}  // namespace

TEST_CASE("twelve-state reference instance") {
  const auto space = enumerate_states(Capacities{2, {1}}, {1}, 2);
  CHECK(space.size() == 12);
  CHECK(space.size() == brute_count(2, 1, {1}));
}

TEST_CASE("six-state single pool instance") {
  // Without Wi-Fi units only the LTE pairs remain.
  const auto space = enumerate_states(Capacities{2, {0}}, {1}, 2);
  CHECK(space.size() == 6);
}

TEST_CASE("enumeration agrees with brute force") {
  CHECK(enumerate_states(Capacities{4, {2}}, {1, 2}, 2).size() == brute_count(4, 2, {1, 2}));
  CHECK(enumerate_states(Capacities{6, {1}}, {2, 3}, 2).size() == brute_count(6, 1, {2, 3}));
  CHECK(enumerate_states(Capacities{60, {8}}, {10, 20}, 2).size() == brute_count(60, 8, {10, 20}));
}

TEST_CASE("states are sorted, unique, admissible and found by lookup") {
  const auto space = enumerate_states(Capacities{4, {2, 1}}, {1, 2}, 3);
  CHECK(std::is_sorted(space.states().begin(), space.states().end()));
  CHECK(std::adjacent_find(space.states().begin(), space.states().end()) == space.states().end());
  for (std::size_t i = 0; i < space.size(); ++i) {
    CHECK(space.admissible(space[i]));
    REQUIRE(space.index_of(space[i]).has_value());
    CHECK(*space.index_of(space[i]) == i);
  }
  OccupancyState bad = space[0];
  bad.units[0] = 99;
  CHECK_FALSE(space.admissible(bad));
  CHECK_FALSE(space.index_of(bad).has_value());
}

TEST_CASE("layout and occupancy ratio") {
  const StateLayout layout(2, 3);
  CHECK(layout.size() == 10);
  const Capacities caps{10, {4, 2}};
  OccupancyState s;
  s.units.assign(layout.size(), 0);
  s.units[layout.lte_slot(0, ZoneId::lte_only())] = 2;
  s.units[layout.lte_slot(1, ZoneId::subcell(3))] = 4;
  s.units[layout.wifi_slot(0, 2)] = 1;
  s.units[layout.wifi_slot(1, 2)] = 1;
  s.units[layout.wifi_slot(1, 3)] = 2;
  CHECK(layout.total_lte(s) == 6);
  CHECK(layout.wifi_in(s, 2) == 2);
  CHECK(layout.wifi_in(s, 3) == 2);
  CHECK(layout.occupancy_ratio(s, caps, ZoneId::subcell(2)) == doctest::Approx(8.0 / 14.0));
  CHECK(layout.occupancy_ratio(s, caps, ZoneId::subcell(3)) == doctest::Approx(8.0 / 12.0));
  CHECK(layout.occupancy_ratio(s, caps, ZoneId::lte_only()) == doctest::Approx(0.6));
  CHECK(layout.is_lte_slot(layout.lte_slot(1, ZoneId::subcell(2))));
  CHECK_FALSE(layout.is_lte_slot(layout.wifi_slot(1, 2)));
}

TEST_CASE("state cap") {
  CHECK_THROWS_AS(enumerate_states(Capacities{60, {8}}, {1, 1}, 2, 1000), StateSpaceTooLarge);
  CHECK(enumerate_states(Capacities{3, {}}, {1}, 1).size() == 4);
}
