/// @file models.hpp
/// @brief Catalog of closed-form gradient Ricci solitons, warped-product
///        assembly, the surface soliton ODE residual, warped-product
///        detection, and weighted-volume estimation.
///
/// Every builder returns a SolitonInstance whose metric family carries exact
/// third-order jets (templated component functions instantiated on nested
/// dual numbers).  Unperturbed instances are gated at construction time:
/// ||Ric + Hess f - lambda*g|| must vanish to 1e-8 on a seeded 50-point grid,
/// so nothing enters the catalog without actually being a soliton.

#pragma once

#include <array>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "solgeo/chart.hpp"
#include "solgeo/dual.hpp"
#include "solgeo/errors.hpp"
#include "solgeo/metric.hpp"

namespace solgeo {

enum class SolitonKind { shrinking, steady, expanding };
SolitonKind soliton_kind(double lambda);
const char* soliton_kind_name(SolitonKind k);

/// Knobs applied uniformly by every builder.  The perturbations are negative
/// controls: they deliberately break the soliton equation so the verifier's
/// refusal paths and the classifier's inconclusive branch stay honest.
struct ModelOptions {
  double perturb_f_cubic = 0.0;     ///< f += eps * x0^3
  double perturb_g_conformal = 0.0; ///< g *= (1 + eps * x0^3)
  double metric_scale = 1.0;        ///< g -> c g with lambda -> lambda / c
};

struct SolitonInstance {
  std::string label;
  MetricFamily family;
  SolitonKind kind = SolitonKind::steady;
  Box sample_box;  ///< default region for verification grids
  Box volume_box;  ///< default region for weighted-volume quadrature
  /// Classifier label this model should earn; empty for perturbed instances.
  std::string expected_class;
  bool perturbed = false;
  /// Reference value of the weighted volume when a closed form exists.
  double closed_form_f_volume = std::numeric_limits<double>::quiet_NaN();
};

// --- catalog builders ---------------------------------------------------------

/// Flat R^n with f = lambda |x|^2 / 2 (the model shrinker when lambda > 0).
SolitonInstance gaussian_soliton(int n, double lambda, const ModelOptions& opt = {});

/// Round sphere of the given radius, stereographic chart, f = 0,
/// lambda = (n-1)/radius^2.
SolitonInstance round_sphere(int n, double radius = 1.0, const ModelOptions& opt = {});

/// S^{n-1}(radius) x R in (angles..., t), f = lambda t^2 / 2,
/// lambda = (n-2)/radius^2.  Requires n >= 3.
SolitonInstance sphere_cylinder(int n, double radius = 1.0, const ModelOptions& opt = {});

/// Hyperbolic space (Poincare ball), f = 0, lambda = -(n-1).
SolitonInstance hyperbolic_space(int n, const ModelOptions& opt = {});

/// H^{n-1} x R in (ball coords..., t), f = lambda t^2 / 2, lambda = -(n-2).
SolitonInstance hyperbolic_cylinder(int n, const ModelOptions& opt = {});

/// The steady surface soliton: warped metric dr^2 + tanh^2(r) dtheta^2 with
/// f = -2 log cosh r, lambda = 0; scal = 4 sech^2 r.
SolitonInstance cigar_soliton(const ModelOptions& opt = {});

/// S^m(radius) x R^k with f = lambda |z|^2 / 2 on the flat factor,
/// lambda = (m-1)/radius^2.  A rigid soliton with nonzero Weyl when m,k >= 2.
SolitonInstance einstein_product(int m, int k, double radius = 1.0,
                                 const ModelOptions& opt = {});

// --- registry / manifest interface --------------------------------------------

struct ModelInfo {
  std::string name;
  std::string summary;
  std::vector<std::pair<std::string, double>> defaults;
  std::string expected_class;
};

/// Table of builder names, parameter schemas, and expected labels.
const std::vector<ModelInfo>& model_registry();

/// Build by name with named parameters (unknown name/parameter -> error).
/// Recognized option keys on every builder: perturb_f_cubic,
/// perturb_g_conformal, metric_scale.
SolitonInstance build_model(const std::string& name,
                            const std::map<std::string, double>& params);

/// The default verification catalog (10 instances; see model_registry()).
std::vector<SolitonInstance> default_catalog();

// --- warped products -----------------------------------------------------------

/// Named radial profiles, evaluated on plain doubles or nested duals.
enum class RadialProfile {
  tanh_r,              // h(r) = tanh r        (plane-like warp)
  sin_r,               // h(r) = sin r         (sphere-like warp)
  sinh_r,              // h(r) = sinh r        (hyperbolic warp)
  linear_r,            // h(r) = r             (flat polar warp)
  zero,                // f(r) = 0
  half_r_squared,      // f(r) = r^2 / 2
  minus_two_log_cosh,  // f(r) = -2 log cosh r (cigar potential)
  log_cosh,            // f(r) = log cosh r    (antiderivative of tanh)
  minus_cos,           // f(r) = -cos r        (antiderivative of sin)
  cosh_r,              // f(r) = cosh r        (antiderivative of sinh)
};

RadialProfile radial_profile_from_name(const std::string& name);
const char* radial_profile_name(RadialProfile p);

template <class T>
T radial_profile_eval(RadialProfile p, const T& r) {
  switch (p) {
    case RadialProfile::tanh_r: return tanh(r);
    case RadialProfile::sin_r: return sin(r);
    case RadialProfile::sinh_r: return sinh(r);
    case RadialProfile::linear_r: return r;
    case RadialProfile::zero: return T(0.0);
    case RadialProfile::half_r_squared: return 0.5 * r * r;
    case RadialProfile::minus_two_log_cosh: return -2.0 * log(cosh(r));
    case RadialProfile::log_cosh: return log(cosh(r));
    case RadialProfile::minus_cos: return -cos(r);
    case RadialProfile::cosh_r: return cosh(r);
  }
  fail(ErrorKind::invalid_profile, "unhandled radial profile");
}

/// Fiber geometries available to the warped builder.
enum class FiberKind {
  circle,         // flat S^1, coordinate theta, g = radius^2
  line,           // flat R, g = 1
  sphere_stereo,  // round S^d(radius), stereographic chart
  hyperbolic_ball // H^d, Poincare ball (radius ignored; unit curvature -1)
};

FiberKind fiber_kind_from_name(const std::string& name);
const char* fiber_kind_name(FiberKind k);

struct WarpedProductSpec {
  RadialProfile warp = RadialProfile::tanh_r;
  FiberKind fiber = FiberKind::circle;
  int fiber_dim = 1;
  double fiber_radius = 1.0;
  RadialProfile potential = RadialProfile::zero;
  double lambda = 0.0;
  std::array<double, 2> r_domain{0.0, 3.5};

  enum class Topology { plane_like, sphere_like, cylinder_like };
  Topology topology = Topology::plane_like;
};

/// g = dr^2 + h(r)^2 g0 on (r, fiber coordinates).  Checks the topology
/// invariants on h analytically (h(0) = 0, h'(0) = 1 for plane-like; h
/// vanishing at both ends for sphere-like) and h > 0 on the interior.
MetricFamily build_warped_product(const WarpedProductSpec& spec);

/// Warped family wrapped as an instance (no load-time soliton gate: warped
/// specs are allowed to be non-solitons; the verifier decides).
SolitonInstance warped_instance(const WarpedProductSpec& spec);

/// The two scalar soliton ODEs of a warped surface (fiber_dim = 1):
///   radial:  -h''/h + f''        = lambda
///   fiber:   -h''/h + f' h' / h  = lambda
struct SurfaceOdeReport {
  std::vector<double> r;
  std::vector<double> radial_residual;
  std::vector<double> fiber_residual;
  double max_residual = 0.0;
};

SurfaceOdeReport surface_soliton_residual(const WarpedProductSpec& spec,
                                          const std::vector<double>& r_grid);

/// Warped-product detection via the conformal-Hessian criterion: the metric
/// admits a warped splitting along grad f iff Hess f = mu * g; numerically,
/// iff the trace-free part of Hess f vanishes (1e-7) at every grid point.
struct WarpedDetection {
  bool is_warped = false;
  bool trivial_potential = false;  ///< grad f == 0 on the whole grid
  std::vector<double> mu_values;   ///< (Delta f) / n per point
  double max_tracefree_hess = 0.0;
};

WarpedDetection detect_warped_product(const MetricFamily& m,
                                      const std::vector<Eigen::VectorXd>& pts);

// --- weighted volume ------------------------------------------------------------

/// Midpoint-rule tensor-product quadrature of e^{-f} dvol_g over `box`
/// (`resolution` points per axis).  The divergence flag compares against the
/// same quadrature on the box scaled by 2 about its center: a > 1% change
/// means the integral has not stabilized (e.g. steady/expanding models with
/// infinite weighted volume).
struct VolumeEstimate {
  double value = 0.0;
  double doubled_value = 0.0;
  bool divergent = false;
};

VolumeEstimate f_volume_estimate(const MetricFamily& m, const Box& box,
                                 int resolution);

}  // namespace solgeo
