/// @file verify.hpp
/// @brief Grid-based numerical verification of gradient-soliton identities.
///
/// A gradient Ricci soliton (Ric + Hess f = lambda*g) satisfies a family of
/// structural identities: first-order relations tying the derivatives of
/// curvature to the potential, elliptic (drift-Laplacian) equations for the
/// curvature quantities, and a trace compatibility between the curvature
/// operator equation and the Ricci equation.  The functions here evaluate
/// both sides of each identity on a sample grid and report residual norms.
///
/// Residuals are Frobenius norms of LHS - RHS measured in a g-orthonormal
/// frame, so reports are invariant under changes of chart scale.
///
/// The verifier refuses instances that do not satisfy the soliton equation
/// itself (every identity is derived from it); perturbed control instances
/// can be examined by switching off `gate_soliton`.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "solgeo/geometry.hpp"
#include "solgeo/grid.hpp"
#include "solgeo/models.hpp"

namespace solgeo {

// --- grids and options --------------------------------------------------------

/// Deterministic sample grid inside a chart, with the stencil-safety margin
/// it was generated with.  Every point admits the +-2h axis probes used by
/// the second-derivative stencils.
struct SampleGrid {
  std::vector<Eigen::VectorXd> points;
  std::uint64_t seed = 0;
  double margin = 0.0;
};

/// Sample `opt.count` points from the instance's default verification box.
SampleGrid make_sample_grid(const SolitonInstance& inst, const GridOptions& opt = {});

struct VerifyOptions {
  /// Tolerance for identities built from analytically exact derivatives.
  double tol_algebraic = 1e-8;
  /// Tolerance for identities that need one finite-difference level.
  double tol_elliptic = 1e-5;
  /// Refuse instances whose soliton residual exceeds this on the grid.
  double gate_tolerance = 1e-8;
  bool gate_soliton = true;
  StencilScheme scheme;
};

// --- reports ------------------------------------------------------------------

/// Stable labels for the verified identities (report keys).
enum class IdentityId {
  scal_gradient,          // nabla scal = 2 div Ric = 2 Ric(nabla f)
  ricci_codazzi,          // antisymmetrized nabla Ric vs. R(.,.) nabla f
  ricci_radial_transport, // transport of Ric along nabla f
  riemann_divergence,     // div R vs. R(nabla f, ...)
  first_integral,         // scal + |nabla f|^2 - 2 lambda f constant
  scalar_laplacian,       // drift Laplacian of scal
  ricci_laplacian,        // drift Laplacian of Ric
  curvature_operator_laplacian,  // drift Laplacian of the (0,4) curvature
  radial_ricci_laplacian,        // drift Laplacian of Ric(nabla f, nabla f)
  weyl_ricci_laplacian,          // Ricci equation with Weyl-decomposed RHS
  sharp_trace,            // trace of the operator equation vs. Ricci equation
};

const char* identity_id_name(IdentityId id);

struct PointResidual {
  Eigen::VectorXd x;
  double residual = 0.0;
};

struct ResidualReport {
  IdentityId identity_id = IdentityId::scal_gradient;
  std::string description;
  std::vector<PointResidual> per_point;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool verdict = false;  ///< max_residual < tolerance
};

// --- verification passes ------------------------------------------------------

/// First-order identities plus the scalar first integral.  One report per
/// identity, in declaration order of IdentityId.
std::vector<ResidualReport> verify_pointwise_identities(const SolitonInstance& inst,
                                                        const SampleGrid& grid,
                                                        const VerifyOptions& opt = {});

/// Elliptic equation selector.  `weyl_ricci` needs n >= 3.
enum class EllipticEquation { curv_op, ricci, scalar, radial, weyl_ricci };

const char* elliptic_equation_name(EllipticEquation eq);

/// All equations applicable in dimension n (drops weyl_ricci when n < 3).
std::vector<EllipticEquation> applicable_elliptic_equations(int n);

/// Drift-Laplacian equations for the selected curvature quantities.
std::vector<ResidualReport> verify_elliptic_equations(const SolitonInstance& inst,
                                                      const SampleGrid& grid,
                                                      const std::vector<EllipticEquation>& which,
                                                      const VerifyOptions& opt = {});

/// Tracing the curvature-operator equation over a frame must reproduce the
/// right-hand side of the Ricci equation; this checks the two right-hand
/// sides against each other pointwise (n >= 3).
ResidualReport verify_sharp_trace_consistency(const SolitonInstance& inst,
                                              const SampleGrid& grid,
                                              const VerifyOptions& opt = {});

}  // namespace solgeo
