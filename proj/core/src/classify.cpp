/// @file classify.cpp
/// @brief Implementation of the spectral diagnostics and classification tree.

#include "solgeo/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "solgeo/bivector.hpp"
#include "solgeo/errors.hpp"

namespace solgeo {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Characteristic curvature magnitude of an instance: used to make every
// threshold scale like the quantities it judges, so diagnoses are invariant
// under g -> c g (which sends scal -> scal/c and lambda -> lambda/c).
double curvature_scale(double scal_mean, int n, double lambda) {
  double s = std::max(std::abs(scal_mean), static_cast<double>(n) * std::abs(lambda));
  return s > 0.0 ? s : 1.0;
}

std::vector<PointGeometry> evaluate_grid(const SolitonInstance& inst,
                                         const SampleGrid& grid) {
  std::vector<PointGeometry> out;
  out.reserve(grid.points.size());
  for (const auto& x : grid.points) out.push_back(point_geometry(inst.family, x));
  return out;
}

// Frame components of a (contravariant) vector: v = E w  =>  w = E^T g v.
Eigen::VectorXd vector_frame_components(const PointGeometry& P, const Eigen::VectorXd& v) {
  return P.frame.transpose() * (P.mj.g * v);
}

}  // namespace

// --- spectra --------------------------------------------------------------------

SpectralDiagnostics spectral_diagnostics(const SolitonInstance& inst,
                                         const SampleGrid& grid) {
  const int n = inst.family.dim();
  if (n < 2) fail(ErrorKind::unsupported_dimension, "spectral diagnostics need dimension >= 2");

  SpectralDiagnostics diag;
  diag.n = n;
  for (const auto& x : grid.points) {
    PointGeometry P = point_geometry(inst.family, x);
    Eigen::MatrixXd ric_f = frame_components(P.ricci, P.frame);
    TensorField R_f = frame_components(P.riemann, P.frame);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ric_es(ric_f);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> op_es(curvature_operator(R_f));

    const Eigen::VectorXd rho = ric_es.eigenvalues();
    const double trace_defect = std::abs(rho.sum() - P.scal);
    if (trace_defect > 1e-9 * std::max(1.0, std::abs(P.scal)))
      fail(ErrorKind::internal, "Ricci spectrum does not trace back to scal");

    diag.points.push_back(x);
    diag.ricci_eigenvalues.push_back(rho);
    diag.curvop_eigenvalues.push_back(op_es.eigenvalues());
    diag.scal.push_back(P.scal);
    diag.cauchy_schwarz_gap.push_back(P.ric_norm2 -
                                      P.scal * P.scal / static_cast<double>(n - 1));
    diag.potential.push_back(P.mj.f);
  }
  return diag;
}

// --- phi ------------------------------------------------------------------------

double phi_value(const Eigen::VectorXd& rho_sorted, double scal) {
  const int n = static_cast<int>(rho_sorted.size());
  if (n < 3) fail(ErrorKind::unsupported_dimension, "phi needs dimension >= 3");
  if (!(scal > 0.0)) fail(ErrorKind::hypothesis_violated, "phi needs scal > 0");

  double tail_sum = 0.0, tail_sq = 0.0;
  for (int j = 1; j < n; ++j) {
    tail_sum += rho_sorted[j];
    tail_sq += rho_sorted[j] * rho_sorted[j];
  }
  const double rho1 = rho_sorted[0];
  const double s2 = scal * scal;
  const double first = rho1 * rho1 * (n * rho1 - scal) / ((n - 1) * s2);
  const double second = ((n - 2) * rho1 - scal) * ((n - 1) * tail_sq - tail_sum * tail_sum) /
                        ((n - 1.0) * (n - 2.0) * s2);
  return first + second;
}

std::vector<PhiDiagnostic> phi_diagnostic(const SpectralDiagnostics& diag) {
  if (diag.n < 3) fail(ErrorKind::unsupported_dimension, "phi needs dimension >= 3");
  for (double s : diag.scal)
    if (!(s > 0.0))
      fail(ErrorKind::hypothesis_violated, "phi diagnostic needs scal > 0 on the whole grid");

  std::vector<PhiDiagnostic> out;
  out.reserve(diag.points.size());
  for (std::size_t i = 0; i < diag.points.size(); ++i) {
    PhiDiagnostic d;
    d.phi = phi_value(diag.ricci_eigenvalues[i], diag.scal[i]);
    d.h_weight = diag.potential[i] - std::log(diag.scal[i] * diag.scal[i]);
    out.push_back(d);
  }
  return out;
}

// --- curvature form ---------------------------------------------------------------

double k_quadratic_form(const SolitonInstance& inst, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& direction) {
  PointGeometry P = point_geometry(inst.family, x);
  const int n = inst.family.dim();

  const double norm2 = direction.dot(P.mj.g * direction);
  if (!(norm2 > 0.0))
    fail(ErrorKind::hypothesis_violated, "direction must be a nonzero tangent vector");
  const Eigen::VectorXd Y = direction / std::sqrt(norm2);

  Eigen::MatrixXd ric_up = P.ginv * P.ricci * P.ginv;
  double value = 0.0;
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) acc += ric_up(a, b) * P.riemann(y, a, b, z);
      value += Y[y] * acc * Y[z];
    }

  // Cross-check against the Ricci-eigenbasis expression
  // sum_i rho_i R(Y, V_i, V_i, Y).
  Eigen::MatrixXd ric_f = frame_components(P.ricci, P.frame);
  TensorField R_f = frame_components(P.riemann, P.frame);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ric_f);
  const Eigen::VectorXd w = vector_frame_components(P, Y);
  double cross = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd v = es.eigenvectors().col(i);
    double plane = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            plane += R_f(a, b, c, d) * w[a] * v[b] * v[c] * w[d];
    cross += es.eigenvalues()[i] * plane;
  }
  if (std::abs(value - cross) > 1e-9 * std::max(1.0, std::abs(value)))
    fail(ErrorKind::internal, "curvature-form eigenbasis cross-check failed");
  return value;
}

// --- curvature-operator spectrum audit ----------------------------------------------

SharpSpectrumPoint audit_sharp_spectrum(const Eigen::MatrixXd& M, int n) {
  BivectorBasis basis = bivector_basis(n);
  const int N = basis.size;
  if (M.rows() != N || M.cols() != N)
    fail(ErrorKind::internal, "operator size does not match the bivector basis");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  const Eigen::VectorXd lam = es.eigenvalues();
  const Eigen::MatrixXd V = es.eigenvectors();

  // Eigenbivectors as antisymmetric matrices.
  std::vector<Eigen::MatrixXd> psi(N);
  for (int a = 0; a < N; ++a) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int b = 0; b < N; ++b) m += V(b, a) * bivector_matrix(basis, b);
    psi[a] = m;
  }

  SharpSpectrumPoint out;
  out.lambda1 = lam[0];
  out.lambda2 = N > 1 ? lam[1] : lam[0];
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  out.degenerate = N > 1 && (lam[1] - lam[0]) < 1e-6 * scale;

  double sum = 0.0;
  for (int a = 0; a < N; ++a) {
    const Eigen::MatrixXd bracket = psi[0] * psi[a] - psi[a] * psi[0];
    for (int b = 0; b < N; ++b) {
      const double c = bivector_inner(bracket, psi[b]);
      sum += 0.5 * c * c * lam[a] * lam[b];
    }
  }
  out.restricted_sum = sum;
  out.direct_form = V.col(0).dot(sharp_operator(M) * V.col(0));
  return out;
}

SecondEigenvalueReport second_eigenvalue_check(const SolitonInstance& inst,
                                               const SampleGrid& grid) {
  if (inst.kind != SolitonKind::shrinking)
    fail(ErrorKind::hypothesis_violated, "second-eigenvalue check applies to shrinking solitons");
  const int n = inst.family.dim();

  SecondEigenvalueReport rep;
  double scale = 1.0;
  for (const auto& x : grid.points) {
    PointGeometry P = point_geometry(inst.family, x);
    TensorField R_f = frame_components(P.riemann, P.frame);
    SharpSpectrumPoint pt = audit_sharp_spectrum(curvature_operator(R_f), n);
    scale = std::max({scale, std::abs(pt.lambda1), std::abs(pt.lambda2)});
    rep.points.push_back(x);
    rep.per_point.push_back(pt);
    rep.cross_check_max =
        std::max(rep.cross_check_max, std::abs(pt.restricted_sum - pt.direct_form));
  }

  rep.audit_passed = true;
  for (const auto& pt : rep.per_point) {
    if (pt.lambda2 >= -1e-9 * scale) {
      ++rep.audit_points;
      if (pt.lambda1 < -1e-9 * scale) rep.audit_passed = false;
    }
  }
  return rep;
}

// --- kernel parallelism ---------------------------------------------------------------

KernelParallelismReport kernel_parallelism_check(const SolitonInstance& inst,
                                                 const SampleGrid& grid,
                                                 const StencilScheme& scheme) {
  const MetricFamily& m = inst.family;
  const int n = m.dim();
  std::vector<PointGeometry> geoms = evaluate_grid(inst, grid);

  double scal_mean = 0.0;
  for (const auto& P : geoms) scal_mean += P.scal;
  if (!geoms.empty()) scal_mean /= static_cast<double>(geoms.size());
  const double scale = curvature_scale(scal_mean, n, m.lambda);
  const double zero_tol = 1e-7 * scale;
  const double rest_floor = 1e-6 * scale;

  // Kernel dimension, constant across the grid by hypothesis.
  auto kernel_count = [&](const Eigen::MatrixXd& ric_f) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ric_f);
    int k = 0;
    for (int i = 0; i < n; ++i)
      if (std::abs(es.eigenvalues()[i]) < zero_tol) ++k;
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(es.eigenvalues()[i]);
      if (a >= zero_tol && a <= rest_floor)
        fail(ErrorKind::hypothesis_violated,
             "Ricci eigenvalue in the dead zone between zero and nonzero thresholds");
    }
    return k;
  };

  int rank = -1;
  for (const auto& P : geoms) {
    const int k = kernel_count(frame_components(P.ricci, P.frame));
    if (k == 0)
      fail(ErrorKind::hypothesis_violated, "Ricci tensor has no zero eigenvalue on the grid");
    if (rank == -1) rank = k;
    if (k != rank)
      fail(ErrorKind::hypothesis_violated, "Ricci kernel rank is not constant across the grid");
  }

  // Orthogonal projector onto the kernel, as a (0,2) field.
  FieldOracle projector = [&m, n, zero_tol, rank](const Eigen::VectorXd& x) {
    PointGeometry P = point_geometry(m, x);
    Eigen::MatrixXd ric_f = frame_components(P.ricci, P.frame);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ric_f);
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(n, n);
    int found = 0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(es.eigenvalues()[i]) >= zero_tol) continue;
      ++found;
      const Eigen::VectorXd v = P.mj.g * (P.frame * es.eigenvectors().col(i));
      proj += v * v.transpose();
    }
    if (found != rank)
      fail(ErrorKind::hypothesis_violated, "Ricci kernel rank changed inside the stencil");
    return from_matrix(proj, {2, 0});
  };

  KernelParallelismReport rep;
  rep.kernel_rank = rank;
  for (const auto& P : geoms) {
    TensorField nab = covariant_derivative(m, P, projector, scheme);
    const double norm = metric_norm(nab, P.frame);
    rep.points.push_back(P.x);
    rep.projector_derivative_norm.push_back(norm);
    rep.max_norm = std::max(rep.max_norm, norm);
  }
  rep.passed = rep.max_norm < 1e-5;
  return rep;
}

// --- constant scalar curvature ----------------------------------------------------------

ConstantScalReport constant_scal_diagnostics(const SolitonInstance& inst,
                                             const SampleGrid& grid) {
  const MetricFamily& m = inst.family;
  const int n = m.dim();
  std::vector<PointGeometry> geoms = evaluate_grid(inst, grid);

  ConstantScalReport rep;
  for (const auto& P : geoms) rep.scal_mean += P.scal;
  if (!geoms.empty()) rep.scal_mean /= static_cast<double>(geoms.size());
  for (const auto& P : geoms)
    rep.scal_spread = std::max(rep.scal_spread, std::abs(P.scal - rep.scal_mean));

  const double scale = curvature_scale(rep.scal_mean, n, m.lambda);
  rep.constant = rep.scal_spread <= 1e-8 * scale;
  if (!rep.constant) return rep;

  const double eps = 1e-9 * scale;
  const double top = n * m.lambda;
  if (m.lambda > 0.0)
    rep.range_ok = rep.scal_mean >= -eps && rep.scal_mean <= top + eps;
  else if (m.lambda < 0.0)
    rep.range_ok = rep.scal_mean <= eps && rep.scal_mean >= top - eps;
  else
    rep.range_ok = std::abs(rep.scal_mean) <= eps;
  rep.flat_endpoint = std::abs(rep.scal_mean) <= eps;
  rep.einstein_endpoint = std::abs(rep.scal_mean - top) <= eps && m.lambda != 0.0;

  for (const auto& P : geoms)
    rep.ricci_norm_gap =
        std::max(rep.ricci_norm_gap, std::abs(P.ric_norm2 - m.lambda * P.scal));
  return rep;
}

// --- radial Weyl decay ratio --------------------------------------------------------------

WeylRadialRatioReport weyl_radial_ratio(const SolitonInstance& inst, const SampleGrid& grid,
                                        double floor) {
  const int n = inst.family.dim();
  WeylRadialRatioReport rep;
  for (const auto& x : grid.points) {
    PointGeometry P = point_geometry(inst.family, x);
    rep.points.push_back(x);
    if (n < 3) {  // Weyl vanishes identically on surfaces
      rep.ratio.push_back(0.0);
      continue;
    }
    if (P.grad_f_norm2 < floor) {
      rep.ratio.push_back(kNan);
      ++rep.skipped;
      continue;
    }
    Eigen::MatrixXd ric_f = frame_components(P.ricci, P.frame);
    TensorField R_f = frame_components(P.riemann, P.frame);
    WeylDecomposition dec = weyl_decompose(R_f, ric_f, P.scal);
    const Eigen::VectorXd w = vector_frame_components(P, P.grad_f);
    Eigen::MatrixXd radial = Eigen::MatrixXd::Zero(n, n);
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        double acc = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) acc += dec.weyl(a, y, z, b) * w[a] * w[b];
        radial(y, z) = acc;
      }
    const double r = radial.norm() / P.grad_f_norm2;
    rep.ratio.push_back(r);
    rep.max_ratio = std::max(rep.max_ratio, r);
  }
  return rep;
}

// --- barrier inequality ---------------------------------------------------------------------

RicciBarrierReport ricci_barrier_check(const SolitonInstance& inst, const SampleGrid& grid,
                                       double gap_margin, double slack,
                                       const StencilScheme& scheme) {
  const MetricFamily& m = inst.family;
  const int n = m.dim();

  RicciBarrierReport rep;
  auto not_applicable = [&rep](const char* why) {
    rep.applicable = false;
    rep.reason = why;
    return rep;
  };

  if (inst.kind != SolitonKind::shrinking) return not_applicable("not a shrinking soliton");
  if (n < 3) return not_applicable("needs dimension >= 3");

  std::vector<PointGeometry> geoms = evaluate_grid(inst, grid);
  double scal_mean = 0.0, weyl_max = 0.0, scal_min = std::numeric_limits<double>::infinity();
  for (const auto& P : geoms) {
    scal_mean += P.scal;
    scal_min = std::min(scal_min, P.scal);
    Eigen::MatrixXd ric_f = frame_components(P.ricci, P.frame);
    TensorField R_f = frame_components(P.riemann, P.frame);
    weyl_max = std::max(weyl_max, weyl_decompose(R_f, ric_f, P.scal).weyl.frobenius());
  }
  if (!geoms.empty()) scal_mean /= static_cast<double>(geoms.size());
  const double scale = curvature_scale(scal_mean, n, m.lambda);
  if (!(scal_min > 0.0)) return not_applicable("scal not positive on the grid");
  if (weyl_max > 1e-8 * scale) return not_applicable("Weyl tensor not negligible");

  // rho_1 / scal as a scalar field; smooth wherever rho_1 is simple.
  FieldOracle ratio_field = [&m, n](const Eigen::VectorXd& x) {
    PointGeometry P = point_geometry(m, x);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(frame_components(P.ricci, P.frame));
    TensorField t(n, {0, 0});
    t.data()[0] = es.eigenvalues()[0] / P.scal;
    return t;
  };

  rep.applicable = true;
  for (const auto& P : geoms) {
    rep.points.push_back(P.x);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(frame_components(P.ricci, P.frame));
    const Eigen::VectorXd rho = es.eigenvalues();
    if (rho[1] - rho[0] < gap_margin * scale) {
      rep.lap_h.push_back(kNan);
      rep.two_phi.push_back(kNan);
      ++rep.skipped;
      continue;
    }
    const double lap_f_u = f_laplacian(m, P, ratio_field, scheme).data()[0];
    TensorField du_t = covariant_derivative(m, P, ratio_field, scheme);
    Eigen::VectorXd du(n);
    for (int i = 0; i < n; ++i) du[i] = du_t(i);
    // Delta_h u = Delta_f u + (2/scal) <grad scal, grad u>.
    const double lap_h = lap_f_u + (2.0 / P.scal) * P.dscal.dot(P.ginv * du);
    const double two_phi = 2.0 * phi_value(rho, P.scal);
    rep.lap_h.push_back(lap_h);
    rep.two_phi.push_back(two_phi);
    ++rep.checked;
    rep.max_violation = std::max(rep.max_violation, lap_h - two_phi);
  }
  rep.max_violation = std::max(rep.max_violation, 0.0);
  rep.satisfied = rep.max_violation <= slack;
  return rep;
}

// --- classification ---------------------------------------------------------------------------

const std::vector<std::string>& classification_labels() {
  static const std::vector<std::string> labels = {
      "flat-Rn",          "Sn-Einstein", "S(n-1)xR-split", "Hn-Einstein",
      "H(n-1)xR-split",   "Einstein-other", "NxRk-rigid",  "inconclusive"};
  return labels;
}

ClassificationResult classify(const SolitonInstance& inst, const SampleGrid& grid,
                              const ClassifyOptions& opt) {
  const MetricFamily& m = inst.family;
  const int n = m.dim();
  const double lambda = m.lambda;
  std::vector<PointGeometry> geoms = evaluate_grid(inst, grid);

  ClassificationResult res;
  auto cite = [&res](const std::string& diagnostic, double value, double threshold,
                     bool passed) {
    res.evidence.push_back({diagnostic, value, threshold, passed});
  };

  // The identities behind every label presume the soliton equation; a failed
  // gate yields an honest "inconclusive" instead of a confident wrong label.
  double residual_max = 0.0;
  for (const auto& P : geoms) residual_max = std::max(residual_max, soliton_residual(m, P));
  if (!(residual_max < opt.gate_tolerance)) {
    cite("soliton-residual", residual_max, opt.gate_tolerance, false);
    res.label = "inconclusive";
    return res;
  }
  cite("soliton-residual", residual_max, opt.gate_tolerance, true);

  // Grid aggregates.
  double scal_mean = 0.0;
  for (const auto& P : geoms) scal_mean += P.scal;
  if (!geoms.empty()) scal_mean /= static_cast<double>(geoms.size());
  const double scale = curvature_scale(scal_mean, n, lambda);
  const double zero_tol = opt.zero_rel * scale;
  const double equal_tol = opt.equal_rel * scale;
  const double weyl_tol = opt.weyl_rel * scale;

  double scal_spread = 0.0, weyl_max = 0.0, rho_max_abs = 0.0, einstein_dev = 0.0;
  double split_dev = 0.0, rigid_dev = 0.0;
  int kernel_min = n + 1, kernel_max = -1;
  const double split_target = scal_mean / static_cast<double>(n - 1);

  for (const auto& P : geoms) {
    scal_spread = std::max(scal_spread, std::abs(P.scal - scal_mean));
    Eigen::MatrixXd ric_f = frame_components(P.ricci, P.frame);
    if (n >= 3) {
      TensorField R_f = frame_components(P.riemann, P.frame);
      weyl_max = std::max(weyl_max, weyl_decompose(R_f, ric_f, P.scal).weyl.frobenius());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ric_f);
    const Eigen::VectorXd rho = es.eigenvalues();
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
      rho_max_abs = std::max(rho_max_abs, std::abs(rho[i]));
      einstein_dev = std::max(einstein_dev, std::abs(rho[i] - lambda));
      if (std::abs(rho[i]) <= zero_tol) {
        ++zeros;
      } else {
        split_dev = std::max(split_dev, std::abs(rho[i] - split_target));
        rigid_dev = std::max(rigid_dev, std::abs(rho[i] - lambda));
      }
    }
    kernel_min = std::min(kernel_min, zeros);
    kernel_max = std::max(kernel_max, zeros);
  }
  const bool const_scal = scal_spread <= 1e-8 * scale;
  const bool weyl_small = weyl_max <= weyl_tol;
  const bool kernel_const = kernel_min == kernel_max;
  const int kernel_rank = kernel_min;

  // Flat: every Ricci eigenvalue vanishes and so does Weyl.
  if (rho_max_abs <= zero_tol && weyl_small) {
    cite("ricci-max", rho_max_abs, zero_tol, true);
    cite("weyl-max", weyl_max, weyl_tol, true);
    res.label = "flat-Rn";
    return res;
  }

  // Einstein: all eigenvalues equal lambda (soliton forces the constant).
  if (einstein_dev <= equal_tol) {
    cite("einstein-deviation", einstein_dev, equal_tol, true);
    cite("weyl-max", weyl_max, weyl_tol, weyl_small);
    if (weyl_small) {
      res.label = lambda > 0.0 ? "Sn-Einstein" : "Hn-Einstein";
    } else {
      res.label = "Einstein-other";
    }
    return res;
  }

  // Split / rigid: constant scal with a fixed-rank Ricci kernel and the
  // remaining eigenvalues equal.
  if (const_scal && kernel_const && kernel_rank >= 1 && rigid_dev <= equal_tol) {
    cite("scal-spread", scal_spread, 1e-8 * scale, true);
    cite("kernel-rank", kernel_rank, static_cast<double>(n), true);
    cite("rest-vs-lambda", rigid_dev, equal_tol, true);
    if (kernel_rank == 1 && weyl_small && lambda != 0.0) {
      cite("rest-vs-scal-over-n-1", split_dev, equal_tol, split_dev <= equal_tol);
      cite("weyl-max", weyl_max, weyl_tol, true);
      if (split_dev <= equal_tol) {
        res.label = lambda > 0.0 ? "S(n-1)xR-split" : "H(n-1)xR-split";
        return res;
      }
    }
    res.label = "NxRk-rigid";
    return res;
  }

  // Mixed signals: report what was measured.
  cite("scal-spread", scal_spread, 1e-8 * scale, const_scal);
  cite("weyl-max", weyl_max, weyl_tol, weyl_small);
  cite("ricci-max", rho_max_abs, zero_tol, rho_max_abs <= zero_tol);
  cite("einstein-deviation", einstein_dev, equal_tol, einstein_dev <= equal_tol);
  res.label = "inconclusive";
  return res;
}

}  // namespace solgeo
