/// @file grid.hpp
/// @brief Deterministic sample-point generation inside chart boxes.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "solgeo/chart.hpp"

namespace solgeo {

struct GridOptions {
  int count = 50;
  std::uint64_t seed = 20240817;
  /// Points must stay valid under axis probes at this distance, so that the
  /// second-order stencils (largest offset: 2 * step) never leave the chart.
  double margin = 2e-3;
};

/// `count` points uniform in `box`, rejecting those too close to the chart
/// boundary.  The generator is seeded and the uniform mapping is hand-rolled
/// from raw mt19937_64 output, so sequences are identical across platforms.
std::vector<Eigen::VectorXd> sample_points(const Chart& chart, const Box& box,
                                           const GridOptions& opt = {});

}  // namespace solgeo
