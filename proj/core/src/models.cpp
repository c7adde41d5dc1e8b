/// @file models.cpp
/// @brief Soliton catalog builders, warped products, volume quadrature.

#include "solgeo/models.hpp"

#include <algorithm>
#include <cmath>

#include "solgeo/geometry.hpp"
#include "solgeo/grid.hpp"

namespace solgeo {

namespace {

constexpr double kGateTolerance = 1e-8;
constexpr int kGatePoints = 50;

/// Common multiplier applied to every metric component: global scaling plus
/// the cubic conformal perturbation (negative control).
template <class T>
T options_factor(const ModelOptions& opt, const T& x0) {
  T factor(opt.metric_scale);
  if (opt.perturb_g_conformal != 0.0) {
    factor = factor * (1.0 + opt.perturb_g_conformal * ipow(x0, 3));
  }
  return factor;
}

template <class T>
T potential_perturbation(const ModelOptions& opt, const T& x0) {
  if (opt.perturb_f_cubic == 0.0) return T(0.0);
  return opt.perturb_f_cubic * ipow(x0, 3);
}

bool options_perturb(const ModelOptions& opt) {
  return opt.perturb_f_cubic != 0.0 || opt.perturb_g_conformal != 0.0;
}

Box cube_box(int n, double lo, double hi) {
  Box b;
  b.axes.assign(n, {lo, hi});
  return b;
}

/// Load-time gate: unperturbed instances must satisfy the soliton equation
/// on a seeded grid before they are handed to anyone.
void gate_instance(SolitonInstance& inst) {
  if (inst.perturbed) return;
  GridOptions gopt;
  gopt.count = kGatePoints;
  const auto pts = sample_points(inst.family.chart, inst.sample_box, gopt);
  double worst = 0.0;
  for (const auto& x : pts) {
    const PointGeometry P = point_geometry(inst.family, x);
    worst = std::max(worst, soliton_residual(inst.family, P));
  }
  if (!(worst < kGateTolerance)) {
    fail(ErrorKind::soliton_residual_failed,
         inst.label + ": max residual " + std::to_string(worst) + " on " +
             std::to_string(kGatePoints) + " points");
  }
}

SolitonInstance finish_instance(std::string label, MetricFamily family,
                                Box sample_box, Box volume_box,
                                std::string expected_class, const ModelOptions& opt) {
  SolitonInstance inst;
  inst.label = std::move(label);
  inst.family = std::move(family);
  inst.kind = soliton_kind(inst.family.lambda);
  inst.sample_box = std::move(sample_box);
  inst.volume_box = std::move(volume_box);
  inst.perturbed = options_perturb(opt);
  if (!inst.perturbed) inst.expected_class = std::move(expected_class);
  gate_instance(inst);
  return inst;
}

void require_dimension(int n, int lo, const std::string& who) {
  if (n < lo) fail(ErrorKind::builder_error, who + ": dimension must be >= " + std::to_string(lo));
  if (n > 6) fail(ErrorKind::builder_error, who + ": dimension capped at 6");
}

void require_positive(double v, const std::string& who, const std::string& what) {
  if (!(v > 0.0)) fail(ErrorKind::builder_error, who + ": " + what + " must be positive");
}

/// Hyperspherical angles for S^d: coordinates s_0..s_{d-1}, metric
/// diag(a^2, a^2 sin^2 s_0, a^2 sin^2 s_0 sin^2 s_1, ...).
template <class T>
void hyperspherical_metric(int d, double radius, const T* s, T* diag_out) {
  T prod(radius * radius);
  for (int i = 0; i < d; ++i) {
    diag_out[i] = prod;
    if (i + 1 < d) {
      T si = sin(s[i]);
      prod = prod * (si * si);
    }
  }
}

bool angles_interior(const Eigen::VectorXd& x, int first, int count) {
  for (int i = 0; i < count; ++i) {
    const double v = x[first + i];
    if (!(v > 0.0 && v < 3.14159265358979323846)) return false;
  }
  return true;
}

}  // namespace

SolitonKind soliton_kind(double lambda) {
  if (lambda > 1e-12) return SolitonKind::shrinking;
  if (lambda < -1e-12) return SolitonKind::expanding;
  return SolitonKind::steady;
}

const char* soliton_kind_name(SolitonKind k) {
  switch (k) {
    case SolitonKind::shrinking: return "shrinking";
    case SolitonKind::steady: return "steady";
    case SolitonKind::expanding: return "expanding";
  }
  return "?";
}

// --- builders -------------------------------------------------------------------

SolitonInstance gaussian_soliton(int n, double lambda, const ModelOptions& opt) {
  require_dimension(n, 1, "gaussian");
  Chart chart;
  chart.dim = n;
  chart.validity = [](const Eigen::VectorXd&) { return true; };
  auto g_fun = [n, opt](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    const T factor = options_factor(opt, x[0]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i * n + j] = (i == j) ? factor : T(0.0);
  };
  auto f_fun = [n, lambda, opt](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T q(0.0);
    for (int i = 0; i < n; ++i) q += x[i] * x[i];
    return 0.5 * lambda * q + potential_perturbation(opt, x[0]);
  };
  MetricFamily fam = make_metric_family(chart, lambda / opt.metric_scale, g_fun, f_fun);
  fam.parameters = {{"n", double(n)}, {"lambda", lambda}};

  const double L = lambda > 0 ? 8.0 / std::sqrt(lambda) : 8.0;
  SolitonInstance inst =
      finish_instance("gaussian(n=" + std::to_string(n) + ")", std::move(fam),
                      cube_box(n, -2.0, 2.0), cube_box(n, -L, L), "flat-Rn", opt);
  if (lambda > 0 && !inst.perturbed) {
    // e^{-f} dvol of the Gaussian: sqrt(det cg) = c^{n/2} times (2 pi/lambda)^{n/2}
    inst.closed_form_f_volume =
        std::pow(opt.metric_scale, 0.5 * n) * std::pow(2.0 * M_PI / lambda, 0.5 * n);
  }
  return inst;
}

SolitonInstance round_sphere(int n, double radius, const ModelOptions& opt) {
  require_dimension(n, 2, "round_sphere");
  require_positive(radius, "round_sphere", "radius");
  Chart chart;
  chart.dim = n;
  chart.validity = [](const Eigen::VectorXd&) { return true; };
  auto g_fun = [n, radius, opt](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    T w(1.0);
    for (int i = 0; i < n; ++i) w += x[i] * x[i];
    const T c = options_factor(opt, x[0]) * ((4.0 * radius * radius) / (w * w));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i * n + j] = (i == j) ? c : T(0.0);
  };
  auto f_fun = [opt](const auto& x) { return potential_perturbation(opt, x[0]); };
  const double lambda = (n - 1.0) / (radius * radius);
  MetricFamily fam = make_metric_family(chart, lambda / opt.metric_scale, g_fun, f_fun);
  fam.parameters = {{"n", double(n)}, {"radius", radius}};
  return finish_instance("round_sphere(n=" + std::to_string(n) + ")", std::move(fam),
                         cube_box(n, -1.5, 1.5), cube_box(n, -40.0, 40.0),
                         "Sn-Einstein", opt);
}

SolitonInstance sphere_cylinder(int n, double radius, const ModelOptions& opt) {
  require_dimension(n, 3, "cylinder");
  require_positive(radius, "cylinder", "radius");
  const int d = n - 1;  // sphere factor dimension
  Chart chart;
  chart.dim = n;
  chart.validity = [d](const Eigen::VectorXd& x) {
    return angles_interior(x, 0, d - 1);  // polar angles in (0, pi); azimuth/t free
  };
  const double lambda = (n - 2.0) / (radius * radius);
  auto g_fun = [n, d, radius, opt](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    for (int i = 0; i < n * n; ++i) out[i] = T(0.0);
    std::vector<T> diag(d);
    hyperspherical_metric(d, radius, x.data(), diag.data());
    const T factor = options_factor(opt, x[0]);
    for (int i = 0; i < d; ++i) out[i * n + i] = factor * diag[i];
    out[n * n - 1] = factor;  // g_tt = 1
  };
  auto f_fun = [n, lambda, opt](const auto& x) {
    return 0.5 * lambda * x[n - 1] * x[n - 1] + potential_perturbation(opt, x[0]);
  };
  MetricFamily fam = make_metric_family(chart, lambda / opt.metric_scale, g_fun, f_fun);
  fam.parameters = {{"n", double(n)}, {"radius", radius}};

  Box sample, volume;
  for (int i = 0; i < d - 1; ++i) sample.axes.push_back({0.5, M_PI - 0.5});
  sample.axes.push_back({0.3, 2.0 * M_PI - 0.3});
  sample.axes.push_back({-2.0, 2.0});
  for (int i = 0; i < d - 1; ++i) volume.axes.push_back({0.0, M_PI});
  volume.axes.push_back({0.0, 2.0 * M_PI});
  const double L = 8.0 / std::sqrt(lambda);
  volume.axes.push_back({-L, L});
  return finish_instance("cylinder(n=" + std::to_string(n) + ")", std::move(fam),
                         std::move(sample), std::move(volume), "S(n-1)xR-split", opt);
}

SolitonInstance hyperbolic_space(int n, const ModelOptions& opt) {
  require_dimension(n, 2, "hyperbolic");
  Chart chart;
  chart.dim = n;
  chart.validity = [](const Eigen::VectorXd& x) { return x.squaredNorm() < 1.0; };
  auto g_fun = [n, opt](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    T w(1.0);
    for (int i = 0; i < n; ++i) w -= x[i] * x[i];
    const T c = options_factor(opt, x[0]) * (4.0 / (w * w));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i * n + j] = (i == j) ? c : T(0.0);
  };
  auto f_fun = [opt](const auto& x) { return potential_perturbation(opt, x[0]); };
  const double lambda = -(n - 1.0);
  MetricFamily fam = make_metric_family(chart, lambda / opt.metric_scale, g_fun, f_fun);
  fam.parameters = {{"n", double(n)}};
  const double L = 0.8 / std::sqrt(double(n));
  return finish_instance("hyperbolic(n=" + std::to_string(n) + ")", std::move(fam),
                         cube_box(n, -L, L), cube_box(n, -0.45, 0.45), "Hn-Einstein",
                         opt);
}

SolitonInstance hyperbolic_cylinder(int n, const ModelOptions& opt) {
  require_dimension(n, 3, "hyperbolic_cylinder");
  const int d = n - 1;  // hyperbolic factor dimension
  Chart chart;
  chart.dim = n;
  chart.validity = [d](const Eigen::VectorXd& x) {
    return x.head(d).squaredNorm() < 1.0;
  };
  const double lambda = -(n - 2.0);
  auto g_fun = [n, d, opt](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    for (int i = 0; i < n * n; ++i) out[i] = T(0.0);
    T w(1.0);
    for (int i = 0; i < d; ++i) w -= x[i] * x[i];
    const T factor = options_factor(opt, x[0]);
    const T c = factor * (4.0 / (w * w));
    for (int i = 0; i < d; ++i) out[i * n + i] = c;
    out[n * n - 1] = factor;
  };
  auto f_fun = [n, lambda, opt](const auto& x) {
    return 0.5 * lambda * x[n - 1] * x[n - 1] + potential_perturbation(opt, x[0]);
  };
  MetricFamily fam = make_metric_family(chart, lambda / opt.metric_scale, g_fun, f_fun);
  fam.parameters = {{"n", double(n)}};
  const double L = 0.8 / std::sqrt(double(d));
  Box sample = cube_box(d, -L, L);
  sample.axes.push_back({-2.0, 2.0});
  Box volume = cube_box(d, -0.45, 0.45);
  volume.axes.push_back({-8.0, 8.0});
  return finish_instance("hyperbolic_cylinder(n=" + std::to_string(n) + ")",
                         std::move(fam), std::move(sample), std::move(volume),
                         "H(n-1)xR-split", opt);
}

SolitonInstance einstein_product(int m, int k, double radius, const ModelOptions& opt) {
  if (m < 2) fail(ErrorKind::builder_error, "einstein_product: sphere factor needs m >= 2");
  if (k < 1) fail(ErrorKind::builder_error, "einstein_product: flat factor needs k >= 1");
  require_dimension(m + k, 3, "einstein_product");
  const int n = m + k;
  Chart chart;
  chart.dim = n;
  chart.validity = [](const Eigen::VectorXd&) { return true; };
  const double lambda = (m - 1.0) / (radius * radius);
  auto g_fun = [n, m, radius, opt](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    for (int i = 0; i < n * n; ++i) out[i] = T(0.0);
    T w(1.0);
    for (int i = 0; i < m; ++i) w += x[i] * x[i];
    const T factor = options_factor(opt, x[0]);
    const T c = factor * ((4.0 * radius * radius) / (w * w));
    for (int i = 0; i < m; ++i) out[i * n + i] = c;
    for (int i = m; i < n; ++i) out[i * n + i] = factor;
  };
  auto f_fun = [n, m, lambda, opt](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T q(0.0);
    for (int i = m; i < n; ++i) q += x[i] * x[i];
    return 0.5 * lambda * q + potential_perturbation(opt, x[0]);
  };
  MetricFamily fam = make_metric_family(chart, lambda / opt.metric_scale, g_fun, f_fun);
  fam.parameters = {{"m", double(m)}, {"k", double(k)}, {"radius", radius}};
  Box sample = cube_box(m, -1.5, 1.5);
  for (int i = 0; i < k; ++i) sample.axes.push_back({-2.0, 2.0});
  Box volume = cube_box(m, -40.0, 40.0);
  const double L = 8.0 / std::sqrt(lambda);
  for (int i = 0; i < k; ++i) volume.axes.push_back({-L, L});
  return finish_instance(
      "einstein_product(m=" + std::to_string(m) + ",k=" + std::to_string(k) + ")",
      std::move(fam), std::move(sample), std::move(volume), "NxRk-rigid", opt);
}

// --- warped products -------------------------------------------------------------

RadialProfile radial_profile_from_name(const std::string& name) {
  if (name == "tanh") return RadialProfile::tanh_r;
  if (name == "sin") return RadialProfile::sin_r;
  if (name == "sinh") return RadialProfile::sinh_r;
  if (name == "linear") return RadialProfile::linear_r;
  if (name == "zero") return RadialProfile::zero;
  if (name == "half_r_squared") return RadialProfile::half_r_squared;
  if (name == "minus_two_log_cosh") return RadialProfile::minus_two_log_cosh;
  if (name == "log_cosh") return RadialProfile::log_cosh;
  if (name == "minus_cos") return RadialProfile::minus_cos;
  if (name == "cosh") return RadialProfile::cosh_r;
  fail(ErrorKind::invalid_profile, "unknown radial profile '" + name + "'");
}

const char* radial_profile_name(RadialProfile p) {
  switch (p) {
    case RadialProfile::tanh_r: return "tanh";
    case RadialProfile::sin_r: return "sin";
    case RadialProfile::sinh_r: return "sinh";
    case RadialProfile::linear_r: return "linear";
    case RadialProfile::zero: return "zero";
    case RadialProfile::half_r_squared: return "half_r_squared";
    case RadialProfile::minus_two_log_cosh: return "minus_two_log_cosh";
    case RadialProfile::log_cosh: return "log_cosh";
    case RadialProfile::minus_cos: return "minus_cos";
    case RadialProfile::cosh_r: return "cosh";
  }
  return "?";
}

FiberKind fiber_kind_from_name(const std::string& name) {
  if (name == "circle") return FiberKind::circle;
  if (name == "line") return FiberKind::line;
  if (name == "sphere") return FiberKind::sphere_stereo;
  if (name == "hyperbolic") return FiberKind::hyperbolic_ball;
  fail(ErrorKind::invalid_profile, "unknown fiber kind '" + name + "'");
}

const char* fiber_kind_name(FiberKind k) {
  switch (k) {
    case FiberKind::circle: return "circle";
    case FiberKind::line: return "line";
    case FiberKind::sphere_stereo: return "sphere";
    case FiberKind::hyperbolic_ball: return "hyperbolic";
  }
  return "?";
}

namespace {

template <class T>
void fiber_metric(FiberKind kind, int d, double radius, const T* y, T* diag_out) {
  switch (kind) {
    case FiberKind::circle:
      diag_out[0] = T(radius * radius);
      return;
    case FiberKind::line:
      diag_out[0] = T(1.0);
      return;
    case FiberKind::sphere_stereo: {
      T w(1.0);
      for (int i = 0; i < d; ++i) w += y[i] * y[i];
      const T c = (4.0 * radius * radius) / (w * w);
      for (int i = 0; i < d; ++i) diag_out[i] = c;
      return;
    }
    case FiberKind::hyperbolic_ball: {
      T w(1.0);
      for (int i = 0; i < d; ++i) w -= y[i] * y[i];
      const T c = 4.0 / (w * w);
      for (int i = 0; i < d; ++i) diag_out[i] = c;
      return;
    }
  }
  fail(ErrorKind::internal, "unhandled fiber kind");
}

/// h and h' at r, exactly.
std::pair<double, double> warp_jet1(RadialProfile p, double r) {
  Jet2 rj{Jet1{r, 1.0}, Jet1{1.0, 0.0}};
  Jet2 h = radial_profile_eval(p, rj);
  return {h.v.v, h.v.d};
}

void check_warp_invariants(const WarpedProductSpec& spec) {
  const auto [lo, hi] = spec.r_domain;
  if (!(hi > lo)) fail(ErrorKind::builder_error, "warped product: empty r domain");
  if (spec.topology == WarpedProductSpec::Topology::plane_like) {
    const auto [h0, dh0] = warp_jet1(spec.warp, 0.0);
    if (std::abs(h0) > 1e-9 || std::abs(dh0 - 1.0) > 1e-9)
      fail(ErrorKind::invalid_profile,
           "plane-like warp must satisfy h(0) = 0, h'(0) = 1");
  }
  if (spec.topology == WarpedProductSpec::Topology::sphere_like) {
    if (std::abs(warp_jet1(spec.warp, lo).first) > 1e-9 ||
        std::abs(warp_jet1(spec.warp, hi).first) > 1e-9)
      fail(ErrorKind::invalid_profile, "sphere-like warp must vanish at both ends");
  }
  // h > 0 on the open interior
  for (int i = 1; i < 200; ++i) {
    const double r = lo + (hi - lo) * i / 200.0;
    if (!(warp_jet1(spec.warp, r).first > 0.0))
      fail(ErrorKind::invalid_profile, "warp profile not positive on the interior");
  }
}

MetricFamily build_warped_product_with(const WarpedProductSpec& spec,
                                       const ModelOptions& opt) {
  int d = spec.fiber_dim;
  if (spec.fiber == FiberKind::circle || spec.fiber == FiberKind::line) d = 1;
  if (d < 1 || d > 5) fail(ErrorKind::builder_error, "warped product: bad fiber dimension");
  check_warp_invariants(spec);

  const int n = 1 + d;
  const double r_lo = std::max(spec.r_domain[0], 0.05);
  const double r_hi = spec.topology == WarpedProductSpec::Topology::sphere_like
                          ? spec.r_domain[1] - 0.05
                          : spec.r_domain[1];
  const RadialProfile warp = spec.warp;
  const FiberKind fiber = spec.fiber;
  Chart chart;
  chart.dim = n;
  chart.validity = [r_lo, r_hi, warp, fiber, d](const Eigen::VectorXd& x) {
    if (!(x[0] > r_lo && x[0] < r_hi)) return false;
    if (!(warp_jet1(warp, x[0]).first > 0.0)) return false;
    if (fiber == FiberKind::hyperbolic_ball && !(x.tail(d).squaredNorm() < 1.0))
      return false;
    return true;
  };
  const double radius = spec.fiber_radius;
  auto g_fun = [n, d, warp, fiber, radius, opt](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    for (int i = 0; i < n * n; ++i) out[i] = T(0.0);
    const T factor = options_factor(opt, x[0]);
    const T h = radial_profile_eval(warp, x[0]);
    const T H = h * h;
    std::vector<T> diag(d);
    fiber_metric(fiber, d, radius, x.data() + 1, diag.data());
    out[0] = factor;
    for (int i = 0; i < d; ++i) out[(i + 1) * n + (i + 1)] = factor * H * diag[i];
  };
  const RadialProfile potential = spec.potential;
  auto f_fun = [potential, opt](const auto& x) {
    return radial_profile_eval(potential, x[0]) + potential_perturbation(opt, x[0]);
  };
  MetricFamily fam =
      make_metric_family(chart, spec.lambda / opt.metric_scale, g_fun, f_fun);
  fam.parameters = {{"fiber_dim", double(d)},
                    {"fiber_radius", radius},
                    {"r_lo", spec.r_domain[0]},
                    {"r_hi", spec.r_domain[1]}};
  return fam;
}

}  // namespace

MetricFamily build_warped_product(const WarpedProductSpec& spec) {
  return build_warped_product_with(spec, ModelOptions{});
}

SolitonInstance warped_instance(const WarpedProductSpec& spec) {
  SolitonInstance inst;
  inst.family = build_warped_product(spec);
  inst.label = std::string("warped(") + radial_profile_name(spec.warp) + "," +
               fiber_kind_name(spec.fiber) + ")";
  inst.kind = soliton_kind(spec.lambda);

  const int d = inst.family.dim() - 1;
  const double r_lo = std::max(spec.r_domain[0], 0.05);
  const double r_hi = spec.topology == WarpedProductSpec::Topology::sphere_like
                          ? spec.r_domain[1] - 0.05
                          : spec.r_domain[1];
  Box sample, volume;
  sample.axes.push_back({r_lo + 0.05, r_hi - 0.05});
  volume.axes.push_back({r_lo + 0.01, r_hi - 0.01});
  for (int i = 0; i < d; ++i) {
    switch (spec.fiber) {
      case FiberKind::circle:
        sample.axes.push_back({0.3, 2.0 * M_PI - 0.3});
        volume.axes.push_back({0.0, 2.0 * M_PI});
        break;
      case FiberKind::line:
        sample.axes.push_back({-2.0, 2.0});
        volume.axes.push_back({-8.0, 8.0});
        break;
      case FiberKind::sphere_stereo:
        sample.axes.push_back({-1.5, 1.5});
        volume.axes.push_back({-40.0, 40.0});
        break;
      case FiberKind::hyperbolic_ball: {
        const double L = 0.8 / std::sqrt(double(d));
        sample.axes.push_back({-L, L});
        volume.axes.push_back({-0.45, 0.45});
        break;
      }
    }
  }
  inst.sample_box = std::move(sample);
  inst.volume_box = std::move(volume);
  return inst;
}

SolitonInstance cigar_soliton(const ModelOptions& opt) {
  WarpedProductSpec spec;
  spec.warp = RadialProfile::tanh_r;
  spec.fiber = FiberKind::circle;
  spec.fiber_dim = 1;
  spec.potential = RadialProfile::minus_two_log_cosh;
  spec.lambda = 0.0;
  spec.r_domain = {0.0, 3.5};
  spec.topology = WarpedProductSpec::Topology::plane_like;

  SolitonInstance inst = warped_instance(spec);
  inst.family = build_warped_product_with(spec, opt);
  inst.label = "cigar";
  inst.sample_box.axes[0] = {0.1, 3.0};
  inst.perturbed = options_perturb(opt);
  if (!inst.perturbed) inst.expected_class = "inconclusive";
  gate_instance(inst);
  return inst;
}

// --- registry ---------------------------------------------------------------------

const std::vector<ModelInfo>& model_registry() {
  static const std::vector<ModelInfo> table = {
      {"gaussian", "flat R^n, f = lambda/2 |x|^2",
       {{"n", 3}, {"lambda", 0.5}}, "flat-Rn"},
      {"round_sphere", "round S^n(radius), stereographic chart, f = 0",
       {{"n", 3}, {"radius", 1}}, "Sn-Einstein"},
      {"cylinder", "S^(n-1)(radius) x R, f = lambda/2 t^2",
       {{"n", 3}, {"radius", 1}}, "S(n-1)xR-split"},
      {"hyperbolic", "hyperbolic space H^n (Poincare ball), f = 0",
       {{"n", 3}}, "Hn-Einstein"},
      {"hyperbolic_cylinder", "H^(n-1) x R, f = lambda/2 t^2",
       {{"n", 3}}, "H(n-1)xR-split"},
      {"cigar", "steady surface soliton: h = tanh r, f = -2 log cosh r",
       {}, "inconclusive"},
      {"einstein_product", "S^m(radius) x R^k rigid soliton",
       {{"m", 2}, {"k", 2}, {"radius", 1}}, "NxRk-rigid"},
  };
  return table;
}

namespace {

int int_param(const std::map<std::string, double>& p, const std::string& key) {
  const double v = p.at(key);
  const long r = std::lround(v);
  if (std::abs(v - double(r)) > 1e-9)
    fail(ErrorKind::builder_error, "parameter '" + key + "' must be an integer");
  return static_cast<int>(r);
}

}  // namespace

SolitonInstance build_model(const std::string& name,
                            const std::map<std::string, double>& params) {
  const auto& registry = model_registry();
  const auto row = std::find_if(registry.begin(), registry.end(),
                                [&](const ModelInfo& r) { return r.name == name; });
  if (row == registry.end())
    fail(ErrorKind::unknown_model, "no builder named '" + name + "'");

  std::map<std::string, double> merged;
  for (const auto& [k, v] : row->defaults) merged[k] = v;
  ModelOptions opt;
  for (const auto& [k, v] : params) {
    if (k == "perturb_f_cubic") {
      opt.perturb_f_cubic = v;
    } else if (k == "perturb_g_conformal") {
      opt.perturb_g_conformal = v;
    } else if (k == "metric_scale") {
      if (!(v > 0)) fail(ErrorKind::builder_error, "metric_scale must be positive");
      opt.metric_scale = v;
    } else if (merged.count(k)) {
      merged[k] = v;
    } else {
      fail(ErrorKind::builder_error,
           "builder '" + name + "' has no parameter '" + k + "'");
    }
  }

  if (name == "gaussian") return gaussian_soliton(int_param(merged, "n"), merged["lambda"], opt);
  if (name == "round_sphere") return round_sphere(int_param(merged, "n"), merged["radius"], opt);
  if (name == "cylinder") return sphere_cylinder(int_param(merged, "n"), merged["radius"], opt);
  if (name == "hyperbolic") return hyperbolic_space(int_param(merged, "n"), opt);
  if (name == "hyperbolic_cylinder") return hyperbolic_cylinder(int_param(merged, "n"), opt);
  if (name == "cigar") return cigar_soliton(opt);
  if (name == "einstein_product")
    return einstein_product(int_param(merged, "m"), int_param(merged, "k"),
                            merged["radius"], opt);
  fail(ErrorKind::internal, "registry/dispatch mismatch for '" + name + "'");
}

std::vector<SolitonInstance> default_catalog() {
  std::vector<SolitonInstance> out;
  out.push_back(gaussian_soliton(3, 0.5));
  out.push_back(round_sphere(2));
  out.push_back(round_sphere(3));
  out.push_back(round_sphere(4));
  out.push_back(sphere_cylinder(3));
  out.push_back(sphere_cylinder(4));
  out.push_back(hyperbolic_space(3));
  out.push_back(hyperbolic_cylinder(3));
  out.push_back(cigar_soliton());
  out.push_back(einstein_product(2, 2));
  return out;
}

// --- surface ODE residual ------------------------------------------------------------

SurfaceOdeReport surface_soliton_residual(const WarpedProductSpec& spec,
                                          const std::vector<double>& r_grid) {
  SurfaceOdeReport rep;
  for (const double r : r_grid) {
    Jet2 rj{Jet1{r, 1.0}, Jet1{1.0, 0.0}};
    const Jet2 h = radial_profile_eval(spec.warp, rj);
    const Jet2 fj = radial_profile_eval(spec.potential, rj);
    const double hv = h.v.v, dh = h.v.d, ddh = h.d.d;
    const double df = fj.v.d, ddf = fj.d.d;
    if (!(std::abs(hv) > 1e-12))
      fail(ErrorKind::invalid_point, "surface ODE grid touches h = 0");
    const double radial = -ddh / hv + ddf - spec.lambda;
    const double fiber = -ddh / hv + df * dh / hv - spec.lambda;
    rep.r.push_back(r);
    rep.radial_residual.push_back(radial);
    rep.fiber_residual.push_back(fiber);
    rep.max_residual =
        std::max({rep.max_residual, std::abs(radial), std::abs(fiber)});
  }
  return rep;
}

// --- warped-product detection ----------------------------------------------------------

WarpedDetection detect_warped_product(const MetricFamily& m,
                                      const std::vector<Eigen::VectorXd>& pts) {
  WarpedDetection det;
  det.trivial_potential = true;
  const int n = m.dim();
  for (const auto& x : pts) {
    const PointGeometry P = point_geometry(m, x);
    if (std::sqrt(P.grad_f_norm2) > 1e-9) det.trivial_potential = false;
    const double mu = (P.ginv * P.hess_f).trace() / n;
    det.mu_values.push_back(mu);
    const Eigen::MatrixXd tracefree = P.hess_f - mu * P.mj.g;
    det.max_tracefree_hess = std::max(
        det.max_tracefree_hess, frame_components(tracefree, P.frame).norm());
  }
  det.is_warped = det.max_tracefree_hess < 1e-7;
  return det;
}

// --- weighted volume ---------------------------------------------------------------------

namespace {

double midpoint_f_volume(const MetricFamily& m, const Box& box, int resolution) {
  const int n = box.dim();
  std::vector<double> h(n), lo(n);
  double cell = 1.0;
  for (int i = 0; i < n; ++i) {
    lo[i] = box.axes[i][0];
    h[i] = (box.axes[i][1] - box.axes[i][0]) / resolution;
    cell *= h[i];
  }
  std::vector<int> idx(n, 0);
  Eigen::VectorXd x(n);
  double sum = 0.0;
  while (true) {
    for (int i = 0; i < n; ++i) x[i] = lo[i] + (idx[i] + 0.5) * h[i];
    if (m.chart.valid(x)) {
      const MetricJets j0 = m.jets(x, 0);
      const double det = j0.g.determinant();
      if (det > 0.0) sum += std::exp(-j0.f) * std::sqrt(det);
    }
    int axis = n - 1;
    while (axis >= 0 && ++idx[axis] == resolution) idx[axis--] = 0;
    if (axis < 0) break;
  }
  return sum * cell;
}

}  // namespace

VolumeEstimate f_volume_estimate(const MetricFamily& m, const Box& box,
                                 int resolution) {
  if (box.dim() != m.dim())
    fail(ErrorKind::builder_error, "volume box dimension does not match chart");
  if (resolution < 2) fail(ErrorKind::builder_error, "volume resolution must be >= 2");
  VolumeEstimate est;
  est.value = midpoint_f_volume(m, box, resolution);
  est.doubled_value = midpoint_f_volume(m, box.scaled_about_center(2.0), resolution);
  est.divergent =
      std::abs(est.doubled_value - est.value) > 0.01 * std::max(std::abs(est.value), 1e-12);
  return est;
}

}  // namespace solgeo
