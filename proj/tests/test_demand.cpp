#include <doctest.h>

#include <cmath>

#include "hetnet/demand.hpp"
#include "hetnet/error.hpp"
#include "hetnet/mobility_rwp.hpp"

using namespace hetnet;

TEST_CASE("fresh demand scales the cluster rate by the zone probability") {
  CHECK(fresh_rate(0.0, 3.0) == 0.0);
  CHECK(fresh_rate(1.0, 3.0) == 3.0);
  CHECK(fresh_rate(0.2, 10.0) == doctest::Approx(2.0));
}

TEST_CASE("exit flow and handover rate") {
  CHECK(exit_flow(0.4, 100.0) == doctest::Approx(0.004));
  CHECK(exit_flow(0.0, 100.0) == 0.0);
  CHECK_THROWS_AS(exit_flow(0.4, 0.0), DivisionByZero);
  CHECK(handover_rate(5.0, 0.004) == doctest::Approx(0.02));
  CHECK(handover_rate(0.0, 0.004) == 0.0);
  for (double u : {0.5, 3.0, 12.0}) {
    for (double delta : {2.0, 40.0}) {
      CHECK(handover_rate(u, exit_flow(0.3, delta)) == doctest::Approx(u * 0.3 / delta));
    }
  }
  CHECK(mean_population(2.0, 1.5) == doctest::Approx(3.0));
}

TEST_CASE("service validation") {
  CHECK(ServiceProfile{1, 0.7, 1.25, 10}.validate().empty());
  CHECK_FALSE(ServiceProfile{1, -1.0, 1.25, 10}.validate().empty());
  CHECK_FALSE(ServiceProfile{1, 0.7, 0.0, 10}.validate().empty());
  CHECK_FALSE(ServiceProfile{1, 0.7, 1.25, 0}.validate().empty());
}

TEST_CASE("derived demand follows the mobility profile") {
  MobilityProfile mob;
  mob.probability = {0.75, 0.0, 0.25};
  mob.arrival_rate = {0.01, 0.0, 0.01};
  mob.residence_time = {75.0, 0.0, 25.0};
  const auto rates = derive_demand(mob, {ServiceProfile{1, 2.0, 3.0, 1}, ServiceProfile{2, 0.0, 1.0, 2}});
  REQUIRE(rates.services.size() == 2);
  const auto& d = rates.services[0];
  CHECK(d.fresh[0] == doctest::Approx(1.5));
  CHECK(d.fresh[2] == doctest::Approx(0.5));
  CHECK(d.population_c0 == doctest::Approx(4.5));
  CHECK(d.exit_c0_cluster == doctest::Approx(0.75 / 75.0));
  CHECK(d.exit_c0_subcell[2] == doctest::Approx(0.75 / 25.0));
  CHECK(d.horizontal == doctest::Approx(4.5 * 0.01));
  CHECK(d.vertical[2] == doctest::Approx(4.5 * 0.03));
  const auto& idle = rates.services[1];
  CHECK(idle.horizontal == 0.0);
  CHECK(idle.vertical[2] == 0.0);
}

TEST_CASE("demand on the reference cluster is finite and non-negative") {
  const ClusterGeometry g(600.0, {SubCell{200.0, 300.0, 0.0}});
  const auto rates = derive_demand(analyze_mobility(g, RwpParams{}), {ServiceProfile{1, 0.7, 1.25, 10}});
  const auto& d = rates.services[0];
  for (double v : {d.fresh[0], d.fresh[2], d.population_c0, d.exit_c0_cluster, d.exit_c0_subcell[2],
                   d.horizontal, d.vertical[2]}) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
  CHECK(d.fresh[0] + d.fresh[2] == doctest::Approx(0.7));
}
