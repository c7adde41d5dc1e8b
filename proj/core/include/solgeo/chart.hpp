/// @file chart.hpp
/// @brief Coordinate charts: dimension, names, validity region, sample boxes.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

namespace solgeo {

/// Axis-aligned box, one [lo, hi] interval per coordinate.
struct Box {
  std::vector<std::array<double, 2>> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  Box scaled_about_center(double factor) const;
};

struct Chart {
  int dim = 0;
  std::vector<std::string> coordinate_names;
  /// Open-set membership test for the chart's validity region.
  std::function<bool(const Eigen::VectorXd&)> validity;

  bool valid(const Eigen::VectorXd& x) const { return validity ? validity(x) : true; }

  /// True if x and the 2*dim axis probes at distance `margin` are all valid.
  /// Stencils move along coordinate axes only, so probing the extreme axis
  /// offsets is the membership test the differencing code actually needs.
  bool valid_with_margin(const Eigen::VectorXd& x, double margin) const;
};

}  // namespace solgeo
