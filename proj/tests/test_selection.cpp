#include <doctest.h>

#include "hetnet/selection.hpp"

using namespace hetnet;

namespace {
const SelectionPolicy kPolicy{4.0e8, 3.0e8, 1.0};
}

TEST_CASE("LTE-only zone admits on LTE or blocks") {
  CHECK(select_network(ZoneId::lte_only(), {0, 60, 0, 0}, 10, kPolicy) == Decision::connect_lte);
  CHECK(select_network(ZoneId::lte_only(), {50, 60, 0, 0}, 10, kPolicy) == Decision::connect_lte);
  CHECK(select_network(ZoneId::lte_only(), {51, 60, 0, 0}, 10, kPolicy) == Decision::blocked);
}

TEST_CASE("sub-cell selection by bit rate") {
  const auto c2 = ZoneId::subcell(2);
  // Empty system: LTE at full rate beats the Wi-Fi nominal rate.
  CHECK(select_network(c2, {0, 60, 0, 8}, 10, kPolicy) == Decision::connect_lte);
  // Loaded system: the congestion-scaled LTE rate falls below Wi-Fi.
  CHECK(select_network(c2, {40, 60, 0, 8}, 10, kPolicy) == Decision::connect_wifi);
  // LTE saturated, Wi-Fi free.
  CHECK(select_network(c2, {60, 60, 0, 8}, 10, kPolicy) == Decision::connect_wifi);
  // Wi-Fi saturated, LTE free.
  CHECK(select_network(c2, {40, 60, 8, 8}, 10, kPolicy) == Decision::connect_lte);
  CHECK(select_network(c2, {60, 60, 8, 8}, 10, kPolicy) == Decision::blocked);
}

TEST_CASE("ties go to LTE") {
  const SelectionPolicy equal{3.0e8, 3.0e8, 0.0};
  CHECK(select_network(ZoneId::subcell(2), {30, 60, 4, 8}, 10, equal) == Decision::connect_lte);
}
