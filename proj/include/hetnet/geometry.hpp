#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace hetnet {

struct Point {
  double x = 0.0;
  double y = 0.0;

  double norm() const;
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

// Zone identifier: 0 is the LTE-only residual zone C_0, i >= 2 is Wi-Fi
// sub-cell C_i. The cluster disk itself (C_1) never appears as a zone.
struct ZoneId {
  int value = 0;

  static constexpr ZoneId lte_only() { return ZoneId{0}; }
  static constexpr ZoneId subcell(int i) { return ZoneId{i}; }
  bool is_lte_only() const { return value == 0; }
  std::string name() const { return "C_" + std::to_string(value); }

  friend auto operator<=>(const ZoneId&, const ZoneId&) = default;
};

struct SubCell {
  double radius = 0.0;           // r_i, meters
  double center_distance = 0.0;  // d_i, meters from the cluster center
  double center_angle = 0.0;     // radians

  Point center() const;
  friend bool operator==(const SubCell&, const SubCell&) = default;
};

// Disk of radius R holding disjoint circular Wi-Fi sub-cells. The sub-cell
// stored at position p of `subcells` is zone C_{p+2}.
class ClusterGeometry {
 public:
  ClusterGeometry() = default;
  ClusterGeometry(double service_radius, std::vector<SubCell> subcells);

  double service_radius() const { return service_radius_; }
  const std::vector<SubCell>& subcells() const { return subcells_; }

  // Number of zones counting C_1, matching the cluster's "m": one sub-cell
  // gives m = 2.
  int m() const { return static_cast<int>(subcells_.size()) + 1; }

  // Sub-cell for zone index i in 2..m.
  const SubCell& subcell(int i) const;

  // Throws OutsideCluster when |p| > R. Boundary points of a sub-cell belong
  // to C_0.
  ZoneId zone_of(const Point& p) const;

  // Every containment and disjointness violation, human readable. Empty means
  // the geometry is valid.
  std::vector<std::string> validate() const;

  friend bool operator==(const ClusterGeometry&, const ClusterGeometry&) = default;

 private:
  double service_radius_ = 0.0;
  std::vector<SubCell> subcells_;
};

}  // namespace hetnet
