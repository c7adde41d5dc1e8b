/// @file classify.hpp
/// @brief Spectral diagnostics and model-label classification for solitons.
///
/// The rigidity theory of gradient Ricci solitons pivots on a handful of
/// pointwise quantities: the ordered spectra of the Ricci tensor and the
/// curvature operator, the Cauchy-Schwarz gap |Ric|^2 - scal^2/(n-1), a
/// nonpositive function phi of the Ricci eigenvalues, the curvature form
/// K(Y,Y) = sum_i rho_i sec(Y, E_i), and constant-scalar-curvature tests.
/// This header exposes each as an executable diagnostic plus a decision
/// tree that condenses them into one of a fixed set of model labels.
///
/// Labels are a per-grid diagnosis at desk scale -- they assert that the
/// sampled data is consistent with the named model, not a proof.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "solgeo/geometry.hpp"
#include "solgeo/verify.hpp"

namespace solgeo {

// --- spectra --------------------------------------------------------------------

/// Per-point spectral data over a sample grid (all spectra sorted ascending).
struct SpectralDiagnostics {
  int n = 0;
  std::vector<Eigen::VectorXd> points;
  std::vector<Eigen::VectorXd> ricci_eigenvalues;   ///< rho_1 <= ... <= rho_n
  std::vector<Eigen::VectorXd> curvop_eigenvalues;  ///< lambda_1 <= ... <= lambda_N
  std::vector<double> scal;
  std::vector<double> cauchy_schwarz_gap;  ///< |Ric|^2 - scal^2/(n-1)
  std::vector<double> potential;           ///< f at the point (for weights)
};

/// Evaluate spectra on the grid.  Enforces trace consistency
/// (sum rho_i = scal) as an internal invariant.
SpectralDiagnostics spectral_diagnostics(const SolitonInstance& inst,
                                         const SampleGrid& grid);

// --- the phi function -------------------------------------------------------------

/// phi combines the lowest Ricci eigenvalue with the spread of the others:
///   phi = rho_1^2 (n rho_1 - scal) / ((n-1) scal^2)
///       + ((n-2) rho_1 - scal)
///         * ((n-1) sum_{j>=2} rho_j^2 - (sum_{j>=2} rho_j)^2)
///         / ((n-1)(n-2) scal^2)
/// It is nonpositive whenever rho_1 is the smallest eigenvalue and scal > 0,
/// and vanishes exactly in the Einstein and split cases.
double phi_value(const Eigen::VectorXd& rho_sorted, double scal);

struct PhiDiagnostic {
  double phi = 0.0;
  double h_weight = 0.0;  ///< f - log(scal^2), the natural weight for rho_1/scal
};

/// Per-point phi and weight values.  Requires n >= 3 and scal > 0 at every
/// point (fails with hypothesis_violated otherwise).
std::vector<PhiDiagnostic> phi_diagnostic(const SpectralDiagnostics& diag);

// --- curvature form ---------------------------------------------------------------

/// Quadratic form K(Y,Y) = Ric^{ab} R(Y, ., ., Y)_{ab} for a g-unit direction
/// (nonzero input directions are normalized).  Internally cross-checked
/// against the Ricci-eigenbasis expression sum_i rho_i sec(Y, V_i).
double k_quadratic_form(const SolitonInstance& inst, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& direction);

// --- curvature-operator spectrum audit --------------------------------------------

/// Spectrum-side data for one symmetric operator on bivectors.
struct SharpSpectrumPoint {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  /// (1/2) sum_{alpha,beta} (C_{1 alpha beta})^2 lambda_alpha lambda_beta in
  /// an eigenbasis; every term has alpha,beta >= 2 because C is alternating.
  double restricted_sum = 0.0;
  /// The same quantity evaluated directly as <sharp(M) v_1, v_1>.
  double direct_form = 0.0;
  bool degenerate = false;  ///< lambda_2 - lambda_1 below the cluster margin
};

/// Pure-algebra audit of one operator (n = ambient dimension).
SharpSpectrumPoint audit_sharp_spectrum(const Eigen::MatrixXd& M, int n);

struct SecondEigenvalueReport {
  std::vector<Eigen::VectorXd> points;
  std::vector<SharpSpectrumPoint> per_point;
  double cross_check_max = 0.0;  ///< worst |restricted_sum - direct_form|
  int audit_points = 0;          ///< points where lambda_2 >= 0 held
  bool audit_passed = false;     ///< lambda_1 >= -1e-9 * scale at those points
};

/// Where the second eigenvalue of the curvature operator is nonnegative the
/// lowest one must be as well; audits that implication pointwise on the grid.
/// Requires a shrinking instance.
SecondEigenvalueReport second_eigenvalue_check(const SolitonInstance& inst,
                                               const SampleGrid& grid);

// --- kernel parallelism ------------------------------------------------------------

struct KernelParallelismReport {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> projector_derivative_norm;
  int kernel_rank = 0;
  double max_norm = 0.0;
  bool passed = false;  ///< max_norm < 1e-5
};

/// For instances whose Ricci tensor has a zero eigenvalue of fixed
/// multiplicity, measures the covariant derivative of the orthogonal
/// projector onto the kernel (zero iff the kernel is a parallel subbundle).
/// Fails with hypothesis_violated when the rank is not constant on the grid
/// or no zero eigenvalue is present.
KernelParallelismReport kernel_parallelism_check(const SolitonInstance& inst,
                                                 const SampleGrid& grid,
                                                 const StencilScheme& scheme = {});

// --- constant scalar curvature ------------------------------------------------------

struct ConstantScalReport {
  double scal_mean = 0.0;
  double scal_spread = 0.0;  ///< max |scal - mean| over the grid
  bool constant = false;
  /// The remaining fields are meaningful only when `constant` holds.
  bool range_ok = false;         ///< scal between 0 and n*lambda (sign-adjusted)
  double ricci_norm_gap = 0.0;   ///< max ||Ric|^2 - lambda*scal|
  bool flat_endpoint = false;    ///< scal ~ 0
  bool einstein_endpoint = false;///< scal ~ n*lambda
};

ConstantScalReport constant_scal_diagnostics(const SolitonInstance& inst,
                                             const SampleGrid& grid);

// --- decay ratio of the radial Weyl term --------------------------------------------

/// Report-only: max over the grid of |W(grad f, ., ., grad f)| / |grad f|^2.
/// Decay of this radial Weyl component is the obstruction that separates
/// constant-scalar-curvature solitons from the rigid product models.
/// Points with |grad f|^2 below `floor` are skipped.
struct WeylRadialRatioReport {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> ratio;  ///< NaN at skipped points
  double max_ratio = 0.0;
  int skipped = 0;
};

WeylRadialRatioReport weyl_radial_ratio(const SolitonInstance& inst,
                                        const SampleGrid& grid, double floor = 1e-8);

// --- barrier inequality for rho_1 / scal ---------------------------------------------

/// Report-only check of the weighted differential inequality
///   Delta_h (rho_1 / scal) <= 2 phi,   h = f - log(scal^2),
/// valid for shrinking solitons with vanishing Weyl tensor and scal > 0.
/// The left side is a stencil evaluation of the eigenvalue field, classical
/// only where rho_1 is simple; points with eigenvalue gap below `gap_margin`
/// are recorded as skipped.
struct RicciBarrierReport {
  bool applicable = false;
  std::string reason;  ///< why not, when applicable == false
  std::vector<Eigen::VectorXd> points;
  std::vector<double> lap_h;    ///< NaN at skipped points
  std::vector<double> two_phi;  ///< NaN at skipped points
  int checked = 0;
  int skipped = 0;
  double max_violation = 0.0;  ///< max(lap_h - 2 phi, 0) over checked points
  bool satisfied = false;      ///< max_violation <= slack (when applicable)
};

RicciBarrierReport ricci_barrier_check(const SolitonInstance& inst, const SampleGrid& grid,
                                       double gap_margin = 1e-4, double slack = 1e-6,
                                       const StencilScheme& scheme = {});

// --- classification -----------------------------------------------------------------

struct EvidenceItem {
  std::string diagnostic;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct ClassificationResult {
  std::string label;
  std::vector<EvidenceItem> evidence;
};

/// The full label set, in reporting order.
const std::vector<std::string>& classification_labels();

struct ClassifyOptions {
  double zero_rel = 1e-7;     ///< eigenvalue ~ 0, relative to the curvature scale
  double equal_rel = 1e-6;    ///< eigenvalues equal, relative spread
  double weyl_rel = 1e-8;     ///< Weyl ~ 0, relative to the curvature scale
  double gate_tolerance = 1e-8;
};

/// Decision tree over grid aggregates.  Instances failing the soliton
/// equation itself are labeled inconclusive (with the residual as evidence)
/// rather than rejected, so perturbed controls flow through.
ClassificationResult classify(const SolitonInstance& inst, const SampleGrid& grid,
                              const ClassifyOptions& opt = {});

}  // namespace solgeo
