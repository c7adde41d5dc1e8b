/// @file metric.hpp
/// @brief Metric families: a chart plus exact derivative oracles for the
///        metric components and the potential, to third order.
///
/// A MetricFamily is type-erased: builders hand in templated component
/// functions once, and make_metric_family() instantiates them on nested dual
/// numbers to produce jets of g and f.  Downstream code (Christoffel symbols,
/// curvature, covariant derivatives of curvature) is then exact to roundoff;
/// no finite differencing enters below second-order operators.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "solgeo/chart.hpp"
#include "solgeo/dual.hpp"
#include "solgeo/errors.hpp"
#include "solgeo/tensor.hpp"

namespace solgeo {

/// Jets of the metric and potential at a point.
///   dg(k,i,j)      = d_k g_ij
///   ddg(k,l,i,j)   = d_k d_l g_ij
///   dddg(k,l,m,i,j)= d_k d_l d_m g_ij
/// Order 0 fills only g and f (cheap path for quadrature); order 3 fills all.
struct MetricJets {
  int n = 0;
  int order = 0;
  Eigen::MatrixXd g;
  TensorField dg;
  TensorField ddg;
  TensorField dddg;
  double f = 0.0;
  Eigen::VectorXd df;
  Eigen::MatrixXd ddf;
  TensorField dddf;
};

struct MetricFamily {
  Chart chart;
  double lambda = 0.0;
  /// Parameter echo for reports (insertion order preserved).
  std::vector<std::pair<std::string, double>> parameters;
  /// Jet evaluator; order in {0, 3}.
  std::function<MetricJets(const Eigen::VectorXd&, int)> jets;

  int dim() const { return chart.dim; }
  Eigen::MatrixXd g(const Eigen::VectorXd& x) const { return jets(x, 0).g; }
  double f(const Eigen::VectorXd& x) const { return jets(x, 0).f; }
};

namespace detail {

// Seeded Jet3 coordinate: derivative levels (outer, mid, inner) follow the
// directions (a, b, c).
inline Jet3 seed3(double x, int i, int a, int b, int c) {
  Jet3 out;
  out.v.v.v = x;
  out.v.v.d = (i == c) ? 1.0 : 0.0;
  out.v.d.v = (i == b) ? 1.0 : 0.0;
  out.d.v.v = (i == a) ? 1.0 : 0.0;
  return out;
}

}  // namespace detail

/// Build a MetricFamily from templated component callbacks.
///
/// GFun: void(const std::vector<T>& x, std::vector<T>& out) filling the n*n
///       row-major metric components (must be written symmetrically).
/// FFun: T(const std::vector<T>& x) returning the potential.
template <class GFun, class FFun>
MetricFamily make_metric_family(Chart chart, double lambda, GFun g_fun, FFun f_fun) {
  const int n = chart.dim;
  MetricFamily fam;
  fam.chart = std::move(chart);
  fam.lambda = lambda;
  fam.jets = [n, g_fun, f_fun](const Eigen::VectorXd& x, int order) -> MetricJets {
    MetricJets out;
    out.n = n;
    out.order = order;
    if (order == 0) {
      std::vector<double> xs(x.data(), x.data() + n), gs(n * n);
      g_fun(xs, gs);
      out.g = Eigen::Map<Eigen::MatrixXd>(gs.data(), n, n);
      out.f = f_fun(xs);
      return out;
    }
    out.g.resize(n, n);
    out.dg = TensorField(n, {3, 0});
    out.ddg = TensorField(n, {4, 0});
    out.dddg = TensorField(n, {5, 0});
    out.df.resize(n);
    out.ddf.resize(n, n);
    out.dddf = TensorField(n, {3, 0});

    std::vector<Jet3> xs(n);
    std::vector<Jet3> gs(n * n);
    // One evaluation per direction triple a <= b <= c harvests every
    // derivative up to order three by symmetry of partials.
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        for (int c = b; c < n; ++c) {
          for (int i = 0; i < n; ++i) xs[i] = detail::seed3(x[i], i, a, b, c);
          g_fun(xs, gs);
          Jet3 fj = f_fun(xs);
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
              const Jet3& y = gs[i * n + j];
              out.g(i, j) = y.v.v.v;
              out.dg(a, i, j) = y.d.v.v;
              out.dg(b, i, j) = y.v.d.v;
              out.dg(c, i, j) = y.v.v.d;
              out.ddg(a, b, i, j) = out.ddg(b, a, i, j) = y.d.d.v;
              out.ddg(a, c, i, j) = out.ddg(c, a, i, j) = y.d.v.d;
              out.ddg(b, c, i, j) = out.ddg(c, b, i, j) = y.v.d.d;
              const double t = y.d.d.d;
              out.dddg(a, b, c, i, j) = out.dddg(a, c, b, i, j) = t;
              out.dddg(b, a, c, i, j) = out.dddg(b, c, a, i, j) = t;
              out.dddg(c, a, b, i, j) = out.dddg(c, b, a, i, j) = t;
            }
          }
          out.f = fj.v.v.v;
          out.df[a] = fj.d.v.v;
          out.df[b] = fj.v.d.v;
          out.df[c] = fj.v.v.d;
          out.ddf(a, b) = out.ddf(b, a) = fj.d.d.v;
          out.ddf(a, c) = out.ddf(c, a) = fj.d.v.d;
          out.ddf(b, c) = out.ddf(c, b) = fj.v.d.d;
          const double tf = fj.d.d.d;
          out.dddf(a, b, c) = out.dddf(a, c, b) = tf;
          out.dddf(b, a, c) = out.dddf(b, c, a) = tf;
          out.dddf(c, a, b) = out.dddf(c, b, a) = tf;
        }
      }
    }
    return out;
  };
  return fam;
}

/// Jets at x after checking chart validity; throws Error(invalid_point) when
/// outside the chart and Error(degenerate_metric) when g is not SPD.
MetricJets evaluate_jets(const MetricFamily& m, const Eigen::VectorXd& x, int order);

}  // namespace solgeo
