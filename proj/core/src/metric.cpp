/// @file metric.cpp
/// @brief Chart helpers and checked jet evaluation.

#include "solgeo/metric.hpp"

#include <Eigen/Cholesky>
#include <sstream>

namespace solgeo {

Box Box::scaled_about_center(double factor) const {
  Box out = *this;
  for (auto& ax : out.axes) {
    const double c = 0.5 * (ax[0] + ax[1]);
    const double h = 0.5 * (ax[1] - ax[0]) * factor;
    ax = {c - h, c + h};
  }
  return out;
}

bool Chart::valid_with_margin(const Eigen::VectorXd& x, double margin) const {
  if (!valid(x)) return false;
  Eigen::VectorXd probe = x;
  for (int i = 0; i < dim; ++i) {
    probe[i] = x[i] + margin;
    if (!valid(probe)) return false;
    probe[i] = x[i] - margin;
    if (!valid(probe)) return false;
    probe[i] = x[i];
  }
  return true;
}

MetricJets evaluate_jets(const MetricFamily& m, const Eigen::VectorXd& x, int order) {
  if (x.size() != m.chart.dim) {
    fail(ErrorKind::invalid_point, "point dimension does not match chart dimension");
  }
  if (!m.chart.valid(x)) {
    std::ostringstream os;
    os << "point outside chart validity region: (";
    for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    fail(ErrorKind::invalid_point, os.str());
  }
  MetricJets j = m.jets(x, order);
  Eigen::LLT<Eigen::MatrixXd> llt(j.g);
  if (llt.info() != Eigen::Success) {
    fail(ErrorKind::degenerate_metric, "metric is not positive definite at the sample point");
  }
  return j;
}

}  // namespace solgeo
