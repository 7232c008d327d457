#pragma once

#include <cmath>
// Boost 1.74's pchip calls isnan unqualified, which ADL cannot find for double.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <vector>

#include "hetnet/geometry.hpp"

namespace hetnet {

// Shape constant of the sub-cell arrival-rate integral, fitted once against
// the trajectory simulator on the reference geometry (R = 600 m, one sub-cell
// r = 200 m at d = 300 m). It is geometry-shape only: speeds enter through
// effective_speed().
inline constexpr double kDefaultCv = 6.256;

struct RwpParams {
  double v_max = 10.0;      // m/s
  double v_min = 0.1;       // m/s, speeds are uniform on [v_min, v_max]
  double pause_mean = 0.0;  // s
  double c_v = kDefaultCv;

  // Time-average speed 1/E[1/v] of the uniform speed law.
  double effective_speed() const;
  std::vector<std::string> validate() const;

  friend bool operator==(const RwpParams&, const RwpParams&) = default;
};

// Unnormalized stationary RWP density at radius fraction x of the unit disk:
// (1 - x^2) * integral_0^pi sqrt(1 - x^2 cos^2(phi + phase)) dphi. The
// integrand has period pi, so `phase` (the alpha - beta offset of a point
// parameterized from a sub-cell center) does not change the value.
double rwp_unnormalized_density(double x, double phase = 0.0);

// Normalized radial density over the unit disk, tabulated on 1024 radii and
// interpolated with a monotone cubic.
class SpatialDensity {
 public:
  static constexpr int kTableSize = 1024;

  SpatialDensity();

  // Density per unit area of the unit disk at radius fraction x in [0, 1].
  double operator()(double x) const;
  double normalizer() const { return normalizer_; }

 private:
  double normalizer_ = 0.0;
  boost::math::interpolators::pchip<std::vector<double>> table_;
};

// Shared process-wide density; construction costs a few thousand quadratures.
const SpatialDensity& default_density();

// Point on the circle of radius r around (d, 0), at angle alpha, expressed
// in cluster polar coordinates (distance x, bearing beta).
struct SubcellPoint {
  double x;
  double beta;
};
SubcellPoint subcell_point(double d, double r, double alpha);

double rwp_density(double radius_fraction);

// Probability of finding a user inside sub-cell i (2..m).
double cell_probability(const ClusterGeometry& geom, int i, const SpatialDensity& density);

// Per-user entry rate into sub-cell i, 1/s.
double arrival_rate(const ClusterGeometry& geom, int i, const SpatialDensity& density,
                    const RwpParams& params);

// Little's law: occupancy probability over entry rate. Throws DivisionByZero
// for a zero rate.
double mean_residence_time(double probability, double rate);
double mean_residence_time(const ClusterGeometry& geom, int i, const SpatialDensity& density,
                           const RwpParams& params);

// Per-zone mobility statistics for a whole cluster. Index 0 is C_0, index
// i >= 2 is sub-cell i; index 1 is unused.
struct MobilityProfile {
  std::vector<double> probability;
  std::vector<double> arrival_rate;    // entries per second per user
  std::vector<double> residence_time;  // seconds, +inf when never left

  double p_c0() const { return probability.at(0); }
  // Per-user rate of moving from C_0 into sub-cell i.
  double rate_into(int i) const;
  // Per-user rate of leaving sub-cell i (back into C_0).
  double rate_out_of(int i) const;
};

MobilityProfile analyze_mobility(const ClusterGeometry& geom, const RwpParams& params,
                                 const SpatialDensity& density = default_density());

}  // namespace hetnet
