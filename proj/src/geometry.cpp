#include "hetnet/geometry.hpp"

#include <cmath>
#include <sstream>

#include "hetnet/error.hpp"

namespace hetnet {

double Point::norm() const { return std::hypot(x, y); }

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

Point SubCell::center() const {
  return {center_distance * std::cos(center_angle), center_distance * std::sin(center_angle)};
}

ClusterGeometry::ClusterGeometry(double service_radius, std::vector<SubCell> subcells)
    : service_radius_(service_radius), subcells_(std::move(subcells)) {}

const SubCell& ClusterGeometry::subcell(int i) const {
  if (i < 2 || i > m()) {
    throw std::out_of_range("sub-cell index " + std::to_string(i) + " outside 2.." +
                            std::to_string(m()));
  }
  return subcells_[static_cast<std::size_t>(i - 2)];
}

ZoneId ClusterGeometry::zone_of(const Point& p) const {
  if (p.norm() > service_radius_) {
    std::ostringstream msg;
    msg << "point (" << p.x << ", " << p.y << ") lies outside the cluster of radius "
        << service_radius_;
    throw OutsideCluster(msg.str());
  }
  for (std::size_t k = 0; k < subcells_.size(); ++k) {
    const SubCell& c = subcells_[k];
    if (distance(p, c.center()) < c.radius) return ZoneId::subcell(static_cast<int>(k) + 2);
  }
  return ZoneId::lte_only();
}

std::vector<std::string> ClusterGeometry::validate() const {
  std::vector<std::string> out;
  if (!(service_radius_ > 0.0)) {
    out.push_back("service radius must be positive (got " + std::to_string(service_radius_) + ")");
  }
  for (std::size_t k = 0; k < subcells_.size(); ++k) {
    const SubCell& c = subcells_[k];
    const std::string name = "C_" + std::to_string(k + 2);
    if (!(c.radius > 0.0)) out.push_back(name + ": radius must be positive");
    if (!(c.center_distance >= 0.0)) out.push_back(name + ": center distance must be >= 0");
    if (c.center_distance + c.radius > service_radius_) {
      std::ostringstream msg;
      msg << name << ": d+r = " << c.center_distance + c.radius << " exceeds R = "
          << service_radius_;
      out.push_back(msg.str());
    }
    for (std::size_t j = k + 1; j < subcells_.size(); ++j) {
      const SubCell& o = subcells_[j];
      if (!(distance(c.center(), o.center()) > c.radius + o.radius)) {
        out.push_back(name + " overlaps C_" + std::to_string(j + 2));
      }
    }
  }
  return out;
}

}  // namespace hetnet
