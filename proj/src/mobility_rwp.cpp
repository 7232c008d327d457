#include "hetnet/mobility_rwp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hetnet/error.hpp"
#include "hetnet/quadrature.hpp"

namespace hetnet {

namespace {

constexpr double kPi = std::numbers::pi;

// Sub-cell geometry scaled to the unit disk.
struct UnitSubcell {
  double d;
  double r;
};

UnitSubcell to_unit(const ClusterGeometry& geom, int i) {
  const SubCell& c = geom.subcell(i);
  return {c.center_distance / geom.service_radius(), c.radius / geom.service_radius()};
}

}  // namespace

double RwpParams::effective_speed() const {
  if (v_max == v_min) return v_max;
  return (v_max - v_min) / std::log(v_max / v_min);
}

std::vector<std::string> RwpParams::validate() const {
  std::vector<std::string> out;
  if (!(v_max > 0.0)) out.push_back("mobility.v_max must be positive");
  if (!(v_min > 0.0)) out.push_back("mobility.v_min must be positive");
  if (!(v_min <= v_max)) out.push_back("mobility.v_min must not exceed v_max");
  if (!(pause_mean >= 0.0)) out.push_back("mobility.pause_mean must be >= 0");
  if (!(c_v > 0.0)) out.push_back("mobility.c_v must be positive");
  return out;
}

double rwp_unnormalized_density(double x, double phase) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("radius fraction outside [0, 1]");
  const double x2 = x * x;
  const double chord = integrate(
      [&](double phi) {
        const double c = std::cos(phi + phase);
        return std::sqrt(std::max(0.0, 1.0 - x2 * c * c));
      },
      0.0, kPi);
  return (1.0 - x2) * chord;
}

namespace {

boost::math::interpolators::pchip<std::vector<double>> build_table(double normalizer) {
  std::vector<double> xs(SpatialDensity::kTableSize);
  std::vector<double> ys(SpatialDensity::kTableSize);
  for (int j = 0; j < SpatialDensity::kTableSize; ++j) {
    const double x = static_cast<double>(j) / (SpatialDensity::kTableSize - 1);
    xs[static_cast<std::size_t>(j)] = x;
    ys[static_cast<std::size_t>(j)] = rwp_unnormalized_density(x) / normalizer;
  }
  // Zero end slopes: the density is flat at the center by symmetry.
  return {std::move(xs), std::move(ys), 0.0};
}

double disk_mass() {
  return 2.0 * kPi * integrate([](double x) { return x * rwp_unnormalized_density(x); }, 0.0, 1.0);
}

}  // namespace

SpatialDensity::SpatialDensity() : normalizer_(disk_mass()), table_(build_table(normalizer_)) {}

double SpatialDensity::operator()(double x) const {
  if (x < 0.0 || x > 1.0) throw std::domain_error("radius fraction outside [0, 1]");
  return std::max(0.0, table_(x));
}

const SpatialDensity& default_density() {
  static const SpatialDensity density;
  return density;
}

double rwp_density(double radius_fraction) { return default_density()(radius_fraction); }

SubcellPoint subcell_point(double d, double r, double alpha) {
  const double x = std::sqrt(std::max(0.0, d * d + 2.0 * d * r * std::cos(alpha) + r * r));
  const double beta = std::atan2(r * std::sin(alpha), d + r * std::cos(alpha));
  return {x, beta};
}

double cell_probability(const ClusterGeometry& geom, int i, const SpatialDensity& density) {
  const UnitSubcell c = to_unit(geom, i);
  if (c.r == 0.0) return 0.0;
  // Area integral over the sub-cell in polar coordinates around its center;
  // the alpha integrand is symmetric so integrate over [0, pi] and double.
  const double p = integrate(
      [&](double rho) {
        const double ring = integrate(
            [&](double alpha) {
              const SubcellPoint q = subcell_point(c.d, rho, alpha);
              return density(std::min(q.x, 1.0));
            },
            0.0, kPi);
        return 2.0 * rho * ring;
      },
      0.0, c.r);
  return std::clamp(p, 0.0, 1.0);
}

double arrival_rate(const ClusterGeometry& geom, int i, const SpatialDensity& density,
                    const RwpParams& params) {
  const UnitSubcell c = to_unit(geom, i);
  if (c.r == 0.0) return 0.0;
  const double boundary = integrate(
      [&](double alpha) {
        const double h = density(std::min(subcell_point(c.d, c.r, alpha).x, 1.0));
        return integrate([&](double phi) { return c.r * h * std::sin(phi); }, 0.0, kPi);
      },
      0.0, kPi);
  const double time_scale = params.effective_speed() / geom.service_radius();
  return 2.0 / params.c_v * time_scale * boundary;
}

double mean_residence_time(double probability, double rate) {
  if (rate == 0.0) {
    std::ostringstream msg;
    msg << "residence time undefined: zero arrival rate (probability " << probability << ")";
    throw DivisionByZero(msg.str());
  }
  return probability / rate;
}

double mean_residence_time(const ClusterGeometry& geom, int i, const SpatialDensity& density,
                           const RwpParams& params) {
  return mean_residence_time(cell_probability(geom, i, density),
                             arrival_rate(geom, i, density, params));
}

double MobilityProfile::rate_into(int i) const {
  const double p0 = p_c0();
  return p0 > 0.0 ? arrival_rate.at(static_cast<std::size_t>(i)) / p0 : 0.0;
}

double MobilityProfile::rate_out_of(int i) const {
  return 1.0 / residence_time.at(static_cast<std::size_t>(i));
}

MobilityProfile analyze_mobility(const ClusterGeometry& geom, const RwpParams& params,
                                 const SpatialDensity& density) {
  const auto zones = static_cast<std::size_t>(geom.m()) + 1;
  MobilityProfile out;
  out.probability.assign(zones, 0.0);
  out.arrival_rate.assign(zones, 0.0);
  out.residence_time.assign(zones, 0.0);

  double covered = 0.0;
  double entries = 0.0;
  for (int i = 2; i <= geom.m(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.probability[k] = cell_probability(geom, i, density);
    out.arrival_rate[k] = arrival_rate(geom, i, density, params);
    out.residence_time[k] = mean_residence_time(out.probability[k], out.arrival_rate[k]);
    covered += out.probability[k];
    entries += out.arrival_rate[k];
  }
  out.probability[0] = std::max(0.0, 1.0 - covered);
  // Sojourns in C_0 end exactly when a sub-cell is entered.
  out.arrival_rate[0] = entries;
  out.residence_time[0] =
      entries > 0.0 ? out.probability[0] / entries : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace hetnet
