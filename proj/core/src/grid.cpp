/// @file grid.cpp
/// @brief Seeded rejection sampling over chart boxes.

#include "solgeo/grid.hpp"

#include <random>

#include "solgeo/errors.hpp"

namespace solgeo {

namespace {

/// Uniform double in [0,1) from raw engine output.  std::uniform_real_
/// distribution is implementation-defined; this mapping is not.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<Eigen::VectorXd> sample_points(const Chart& chart, const Box& box,
                                           const GridOptions& opt) {
  if (box.dim() != chart.dim)
    fail(ErrorKind::builder_error, "sample box dimension does not match chart");
  std::mt19937_64 rng(opt.seed);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(opt.count);
  const long attempts_cap = 10000L * std::max(1, opt.count);
  long attempts = 0;
  while (static_cast<int>(pts.size()) < opt.count) {
    if (++attempts > attempts_cap)
      fail(ErrorKind::builder_error,
           "sample box appears to lie outside the chart validity region");
    Eigen::VectorXd x(chart.dim);
    for (int i = 0; i < chart.dim; ++i) {
      const auto& [lo, hi] = box.axes[i];
      x[i] = lo + (hi - lo) * unit_uniform(rng);
    }
    if (chart.valid_with_margin(x, opt.margin)) pts.push_back(x);
  }
  return pts;
}

}  // namespace solgeo
