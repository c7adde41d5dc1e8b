/// @file geometry.hpp
/// @brief Pointwise Riemannian geometry of a metric family.
///
/// point_geometry() evaluates, at one chart point, everything that is an
/// algebraic function of the metric jets: Christoffel symbols and their
/// coordinate derivatives, the (0,4) curvature tensor, its first covariant
/// derivative, Ricci/scalar curvature and their first covariant derivatives,
/// the potential's gradient/Hessian, and an orthonormal frame.  All of these
/// are exact to roundoff (third-order analytic jets underneath).
///
/// Second covariant derivatives (Hessians of curvature scalars, connection
/// Laplacians of Ricci and of the full curvature tensor) need fourth metric
/// derivatives, which the jets do not carry; they are produced by one level
/// of Richardson-extrapolated central differencing of the *analytic first
/// covariant derivative* fields — see elliptic_terms().  A fully generic
/// stencil path for arbitrary tensor-field oracles is also provided.

#pragma once

#include <Eigen/Dense>
#include <functional>

#include "solgeo/metric.hpp"
#include "solgeo/tensor.hpp"

namespace solgeo {

struct PointGeometry {
  Eigen::VectorXd x;
  MetricJets mj;

  Eigen::MatrixXd ginv;
  TensorField gamma;    // (k,i,j)     Gamma^k_ij
  TensorField dgamma;   // (l,k,i,j)   d_l Gamma^k_ij
  TensorField ddgamma;  // (p,l,k,i,j) d_p d_l Gamma^k_ij

  TensorField riemann;        // (0,4)  R_ijkl = g(R(d_i,d_j)d_k, d_l)
  TensorField nabla_riemann;  // (0,5)  (p; i j k l) = nabla_p R_ijkl
  Eigen::MatrixXd ricci;      // (0,2)  Ric_jk = g^{il} R_ijkl
  Eigen::MatrixXd ricci_op;   // (1,1)  g^{-1} Ric
  TensorField nabla_ricci;    // (0,3)  (p; j k)

  double scal = 0.0;
  Eigen::VectorXd dscal;  // (0,1) nabla scal (= d scal)

  Eigen::VectorXd grad_f;  // raised gradient (nabla f)^i
  double grad_f_norm2 = 0.0;
  Eigen::MatrixXd hess_f;       // (0,2)
  TensorField nabla_hess_f;     // (0,3) (p; i j)

  double ric_norm2 = 0.0;        // |Ric|^2
  Eigen::VectorXd d_ric_norm2;   // (0,1) d |Ric|^2
  double ric_radial = 0.0;       // Ric(grad f, grad f)
  Eigen::VectorXd d_ric_radial;  // (0,1) d [Ric(grad f, grad f)]

  Eigen::MatrixXd frame;  // columns: g-orthonormal frame vectors (Gram-Schmidt)
};

/// Full first-order geometry at x (validity- and SPD-checked).
PointGeometry point_geometry(const MetricFamily& m, const Eigen::VectorXd& x);

// --- frame utilities ---------------------------------------------------------

/// Components of a fully covariant tensor in the frame E (columns = vectors).
TensorField frame_components(const TensorField& T, const Eigen::MatrixXd& E);
Eigen::MatrixXd frame_components(const Eigen::MatrixXd& T02, const Eigen::MatrixXd& E);
Eigen::VectorXd frame_components(const Eigen::VectorXd& T01, const Eigen::MatrixXd& E);

/// Sectional curvature of the plane spanned by frame vectors a, b
/// (R_frame in an orthonormal frame; spans are automatically unit-area).
double sectional_curvature(const TensorField& R_frame, int a, int b);

/// Norm of a fully covariant tensor measured with the metric (equals the
/// Frobenius norm of its orthonormal-frame components).
double metric_norm(const TensorField& T_cov, const Eigen::MatrixXd& E);

/// Frame-invariant norm of Ric + Hess f - lambda*g at one point; zero exactly
/// when the instance satisfies the gradient soliton equation there.
double soliton_residual(const MetricFamily& m, const PointGeometry& P);

// --- second-order quantities -------------------------------------------------

/// Central differencing scheme: Richardson pair at offsets {step, step/2}.
struct StencilScheme {
  double step = 1e-3;
};

/// Everything second-order the elliptic identities need, in one pass of
/// 4*dim stencil evaluations of the analytic first-derivative fields.
struct EllipticTerms {
  Eigen::MatrixXd hess_scal;    // (0,2) nabla^2 scal
  double lap_f_scal = 0.0;      // Delta_f scal
  Eigen::MatrixXd lap_f_ricci;  // (0,2) Delta_f Ric
  TensorField lap_f_riemann;    // (0,4) Delta_f R
  double lap_f_ric_radial = 0.0;  // Delta_f [Ric(grad f, grad f)]
};
EllipticTerms elliptic_terms(const MetricFamily& m, const PointGeometry& center,
                             const StencilScheme& scheme = {});

// --- generic covariant stencils ----------------------------------------------

/// Fully covariant tensor field given by an oracle (components at a point).
using FieldOracle = std::function<TensorField(const Eigen::VectorXd&)>;

/// First covariant derivative of an arbitrary covariant field oracle at the
/// center point (rank r -> r+1, derivative slot first).
TensorField covariant_derivative(const MetricFamily& m, const PointGeometry& center,
                                 const FieldOracle& field, const StencilScheme& scheme = {});

/// f-Laplacian Delta_f T = trace nabla^2 T - nabla_{grad f} T of an arbitrary
/// covariant field oracle, via the covariant 9-point second-difference stencil.
TensorField f_laplacian(const MetricFamily& m, const PointGeometry& center,
                        const FieldOracle& field, const StencilScheme& scheme = {});

}  // namespace solgeo
