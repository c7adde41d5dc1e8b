/// @file verify.cpp
/// @brief Implementation of the identity verification passes.

#include "solgeo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "solgeo/bivector.hpp"
#include "solgeo/errors.hpp"

namespace solgeo {

namespace {

// Evaluate the full point geometry on every grid point once; all identities
// at a point are read off the same evaluation.
std::vector<PointGeometry> evaluate_grid(const SolitonInstance& inst,
                                         const SampleGrid& grid) {
  std::vector<PointGeometry> out;
  out.reserve(grid.points.size());
  for (const auto& x : grid.points) out.push_back(point_geometry(inst.family, x));
  return out;
}

// Every identity below is derived from Ric + Hess f = lambda*g, so inputs
// that fail the soliton equation are refused instead of producing reports
// that merely measure how badly the premise fails.
void gate_soliton_equation(const SolitonInstance& inst,
                           const std::vector<PointGeometry>& geoms,
                           const VerifyOptions& opt) {
  if (!opt.gate_soliton) return;
  double worst = 0.0;
  for (const auto& P : geoms) worst = std::max(worst, soliton_residual(inst.family, P));
  if (!(worst < opt.gate_tolerance)) {
    std::ostringstream msg;
    msg << "instance '" << inst.label << "' violates the soliton equation: max |Ric + Hess f - lambda g| = "
        << worst << " (gate " << opt.gate_tolerance << ")";
    fail(ErrorKind::soliton_residual_failed, msg.str());
  }
}

ResidualReport finish_report(IdentityId id, std::string description, double tolerance,
                             std::vector<PointResidual> per_point) {
  ResidualReport rep;
  rep.identity_id = id;
  rep.description = std::move(description);
  rep.tolerance = tolerance;
  rep.per_point = std::move(per_point);
  rep.max_residual = 0.0;
  for (const auto& pr : rep.per_point) rep.max_residual = std::max(rep.max_residual, pr.residual);
  rep.verdict = rep.max_residual < rep.tolerance;
  return rep;
}

// (0,2) frame Frobenius norm.
double frame_norm(const Eigen::MatrixXd& T, const Eigen::MatrixXd& E) {
  return frame_components(T, E).norm();
}

// Ric o Ric as a (0,2) tensor: Ric_ya g^{ab} Ric_bz.
Eigen::MatrixXd ricci_squared(const PointGeometry& P, const Eigen::MatrixXd& gi) {
  return P.ricci * gi * P.ricci;
}

// K_yz = Ric^{ab} R_{yabz}: the curvature contraction appearing in the
// Ricci drift-Laplacian equation.
Eigen::MatrixXd ricci_curvature_contraction(const PointGeometry& P,
                                            const Eigen::MatrixXd& gi) {
  const int n = P.mj.g.rows();
  Eigen::MatrixXd ric_up = gi * P.ricci * gi;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) acc += ric_up(a, b) * P.riemann(y, a, b, z);
      K(y, z) = acc;
    }
  return K;
}

}  // namespace

SampleGrid make_sample_grid(const SolitonInstance& inst, const GridOptions& opt) {
  SampleGrid grid;
  grid.points = sample_points(inst.family.chart, inst.sample_box, opt);
  grid.seed = opt.seed;
  grid.margin = opt.margin;
  return grid;
}

const char* identity_id_name(IdentityId id) {
  switch (id) {
    case IdentityId::scal_gradient: return "scal-gradient";
    case IdentityId::ricci_codazzi: return "ricci-codazzi";
    case IdentityId::ricci_radial_transport: return "ricci-radial-transport";
    case IdentityId::riemann_divergence: return "riemann-divergence";
    case IdentityId::first_integral: return "first-integral";
    case IdentityId::scalar_laplacian: return "scalar-laplacian";
    case IdentityId::ricci_laplacian: return "ricci-laplacian";
    case IdentityId::curvature_operator_laplacian: return "curvature-operator-laplacian";
    case IdentityId::radial_ricci_laplacian: return "radial-ricci-laplacian";
    case IdentityId::weyl_ricci_laplacian: return "weyl-ricci-laplacian";
    case IdentityId::sharp_trace: return "sharp-trace";
  }
  fail(ErrorKind::internal, "unhandled identity id");
}

const char* elliptic_equation_name(EllipticEquation eq) {
  switch (eq) {
    case EllipticEquation::curv_op: return "curv_op";
    case EllipticEquation::ricci: return "ricci";
    case EllipticEquation::scalar: return "scalar";
    case EllipticEquation::radial: return "radial";
    case EllipticEquation::weyl_ricci: return "weyl_ricci";
  }
  fail(ErrorKind::internal, "unhandled elliptic equation");
}

std::vector<EllipticEquation> applicable_elliptic_equations(int n) {
  std::vector<EllipticEquation> eqs = {EllipticEquation::curv_op, EllipticEquation::ricci,
                                       EllipticEquation::scalar, EllipticEquation::radial};
  if (n >= 3) eqs.push_back(EllipticEquation::weyl_ricci);
  return eqs;
}

// --- first-order identities -----------------------------------------------------

std::vector<ResidualReport> verify_pointwise_identities(const SolitonInstance& inst,
                                                        const SampleGrid& grid,
                                                        const VerifyOptions& opt) {
  const int n = inst.family.dim();
  const double lambda = inst.family.lambda;
  std::vector<PointGeometry> geoms = evaluate_grid(inst, grid);
  gate_soliton_equation(inst, geoms, opt);

  std::vector<PointResidual> r_grad, r_codazzi, r_transport, r_div, r_integral;
  std::vector<double> integral_values;

  for (const auto& P : geoms) {
    const Eigen::MatrixXd& gi = P.ginv;
    const Eigen::MatrixXd& E = P.frame;

    // nabla scal = 2 div Ric = 2 Ric(nabla f); residual is the worse leg of
    // the chain, measured as a frame one-form norm.
    Eigen::VectorXd div_ric = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) acc += gi(a, b) * P.nabla_ricci(a, b, k);
      div_ric[k] = acc;
    }
    Eigen::VectorXd ric_gf = P.ricci * P.grad_f;
    double res1 = std::max(frame_components(Eigen::VectorXd(P.dscal - 2.0 * div_ric), E).norm(),
                           frame_components(Eigen::VectorXd(P.dscal - 2.0 * ric_gf), E).norm());
    r_grad.push_back({P.x, res1});

    // Antisymmetrized Ricci derivative against curvature applied to nabla f:
    // nabla_i Ric_jk - nabla_j Ric_ik - (nabla f)^m R_ijkm = 0.
    TensorField codazzi(n, {3, 0});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = P.nabla_ricci(i, j, k) - P.nabla_ricci(j, i, k);
          for (int m = 0; m < n; ++m) acc -= P.grad_f[m] * P.riemann(i, j, k, m);
          codazzi(i, j, k) = acc;
        }
    r_codazzi.push_back({P.x, metric_norm(codazzi, E)});

    // Transport of Ric along nabla f:
    // nabla_{nabla f} Ric + lambda Ric - Ric^2 = R(., nabla f, nabla f, .) + 1/2 Hess scal.
    EllipticTerms ET = elliptic_terms(inst.family, P, opt.scheme);
    Eigen::MatrixXd transported = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd radial_curv = Eigen::MatrixXd::Zero(n, n);
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        double t = 0.0, rc = 0.0;
        for (int p = 0; p < n; ++p) t += P.grad_f[p] * P.nabla_ricci(p, y, z);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) rc += P.grad_f[a] * P.grad_f[b] * P.riemann(y, a, b, z);
        transported(y, z) = t;
        radial_curv(y, z) = rc;
      }
    Eigen::MatrixXd lhs3 = transported + lambda * P.ricci - ricci_squared(P, gi);
    Eigen::MatrixXd rhs3 = radial_curv + 0.5 * ET.hess_scal;
    r_transport.push_back({P.x, frame_norm(lhs3 - rhs3, E)});

    // Divergence of the curvature tensor: g^{ab} nabla_a R_bxyz = (nabla f)^m R_mxyz.
    TensorField divergence(n, {3, 0});
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          double acc = 0.0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) acc += gi(a, b) * P.nabla_riemann(a, b, x, y, z);
          for (int m = 0; m < n; ++m) acc -= P.grad_f[m] * P.riemann(m, x, y, z);
          divergence(x, y, z) = acc;
        }
    r_div.push_back({P.x, metric_norm(divergence, E)});

    integral_values.push_back(P.scal + P.grad_f_norm2 - 2.0 * lambda * P.mj.f);
  }

  // scal + |nabla f|^2 - 2 lambda f is a first integral; its residual is the
  // spread around the grid mean.
  double mean = 0.0;
  for (double v : integral_values) mean += v;
  if (!integral_values.empty()) mean /= static_cast<double>(integral_values.size());
  for (std::size_t i = 0; i < geoms.size(); ++i)
    r_integral.push_back({geoms[i].x, std::abs(integral_values[i] - mean)});

  std::vector<ResidualReport> reports;
  reports.push_back(finish_report(IdentityId::scal_gradient,
                                  "gradient of scal vs. Ricci divergence and Ric(grad f)",
                                  opt.tol_algebraic, std::move(r_grad)));
  reports.push_back(finish_report(IdentityId::ricci_codazzi,
                                  "antisymmetrized Ricci derivative vs. curvature on grad f",
                                  opt.tol_algebraic, std::move(r_codazzi)));
  reports.push_back(finish_report(IdentityId::ricci_radial_transport,
                                  "Ricci transport along grad f vs. curvature and Hess scal",
                                  opt.tol_algebraic, std::move(r_transport)));
  reports.push_back(finish_report(IdentityId::riemann_divergence,
                                  "divergence of curvature vs. curvature on grad f",
                                  opt.tol_algebraic, std::move(r_div)));
  reports.push_back(finish_report(IdentityId::first_integral,
                                  "scal + |grad f|^2 - 2 lambda f constant over the grid",
                                  opt.tol_algebraic, std::move(r_integral)));
  return reports;
}

// --- drift-Laplacian equations ---------------------------------------------------

std::vector<ResidualReport> verify_elliptic_equations(const SolitonInstance& inst,
                                                      const SampleGrid& grid,
                                                      const std::vector<EllipticEquation>& which,
                                                      const VerifyOptions& opt) {
  const int n = inst.family.dim();
  const double lambda = inst.family.lambda;

  for (EllipticEquation eq : which)
    if (eq == EllipticEquation::weyl_ricci && n < 3)
      fail(ErrorKind::unsupported_dimension,
           "the Weyl-decomposed Ricci equation needs dimension >= 3");

  std::vector<PointGeometry> geoms = evaluate_grid(inst, grid);
  gate_soliton_equation(inst, geoms, opt);

  auto selected = [&which](EllipticEquation eq) {
    return std::find(which.begin(), which.end(), eq) != which.end();
  };

  std::vector<PointResidual> r_op, r_ric, r_scal, r_radial, r_weyl;

  for (const auto& P : geoms) {
    const Eigen::MatrixXd& gi = P.ginv;
    const Eigen::MatrixXd& E = P.frame;
    EllipticTerms ET = elliptic_terms(inst.family, P, opt.scheme);

    if (selected(EllipticEquation::scalar)) {
      double rhs = 2.0 * lambda * P.scal - 2.0 * P.ric_norm2;
      r_scal.push_back({P.x, std::abs(ET.lap_f_scal - rhs)});
    }

    if (selected(EllipticEquation::ricci)) {
      Eigen::MatrixXd rhs = 2.0 * lambda * P.ricci - 2.0 * ricci_curvature_contraction(P, gi);
      r_ric.push_back({P.x, frame_norm(ET.lap_f_ricci - rhs, E)});
    }

    if (selected(EllipticEquation::curv_op)) {
      TensorField R_f = frame_components(P.riemann, E);
      Eigen::MatrixXd M = curvature_operator(R_f);
      Eigen::MatrixXd rhs_op = 2.0 * lambda * M - 2.0 * (M * M + sharp_operator(M));
      TensorField lhs_f = frame_components(ET.lap_f_riemann, E);
      TensorField rhs_f = operator_to_tensor(rhs_op, n);
      r_op.push_back({P.x, (lhs_f - rhs_f).frobenius()});
    }

    if (selected(EllipticEquation::radial)) {
      // Drift Laplacian of u = Ric(grad f, grad f) equals
      //   4 lambda u - 2 D_{grad f}|Ric|^2
      //   + 2 sum_i Ric(nabla_{E_i} grad f, nabla_{E_i} grad f)
      //   + 2 sum_i R(grad f, E_i, Ric(E_i), grad f).
      // The frame sums close up into g^{-1} contractions.
      Eigen::MatrixXd half_hess_sq = gi * P.hess_f * gi;  // (1,1) Hess twice raised
      double hess_term = (P.ricci * half_hess_sq * P.hess_f * gi).trace();
      Eigen::MatrixXd ric_up = gi * P.ricci * gi;
      double curv_term = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              curv_term += P.grad_f[a] * P.grad_f[b] * ric_up(j, k) * P.riemann(a, j, k, b);
      double rhs = 4.0 * lambda * P.ric_radial - 2.0 * P.grad_f.dot(P.d_ric_norm2) +
                   2.0 * hess_term + 2.0 * curv_term;
      r_radial.push_back({P.x, std::abs(ET.lap_f_ric_radial - rhs)});
    }

    if (selected(EllipticEquation::weyl_ricci)) {
      Eigen::MatrixXd ric_f = frame_components(P.ricci, E);
      TensorField R_f = frame_components(P.riemann, E);
      WeylDecomposition dec = weyl_decompose(R_f, ric_f, P.scal);
      Eigen::MatrixXd weyl_contr = contract_curvature_sym(dec.weyl, ric_f);
      double gap = P.ric_norm2 - P.scal * P.scal / static_cast<double>(n - 1);
      Eigen::MatrixXd rhs_f =
          2.0 * lambda * ric_f -
          (2.0 * n * P.scal / static_cast<double>((n - 1) * (n - 2))) * ric_f +
          (4.0 / static_cast<double>(n - 2)) * (ric_f * ric_f) -
          (2.0 / static_cast<double>(n - 2)) * gap * Eigen::MatrixXd::Identity(n, n) -
          2.0 * weyl_contr;
      Eigen::MatrixXd lhs_f = frame_components(ET.lap_f_ricci, E);
      r_weyl.push_back({P.x, (lhs_f - rhs_f).norm()});
    }
  }

  std::vector<ResidualReport> reports;
  if (selected(EllipticEquation::curv_op))
    reports.push_back(finish_report(IdentityId::curvature_operator_laplacian,
                                    "drift Laplacian of the curvature operator",
                                    opt.tol_elliptic, std::move(r_op)));
  if (selected(EllipticEquation::ricci))
    reports.push_back(finish_report(IdentityId::ricci_laplacian,
                                    "drift Laplacian of the Ricci tensor", opt.tol_elliptic,
                                    std::move(r_ric)));
  if (selected(EllipticEquation::scalar))
    reports.push_back(finish_report(IdentityId::scalar_laplacian,
                                    "drift Laplacian of scalar curvature", opt.tol_elliptic,
                                    std::move(r_scal)));
  if (selected(EllipticEquation::radial))
    reports.push_back(finish_report(IdentityId::radial_ricci_laplacian,
                                    "drift Laplacian of Ric(grad f, grad f)", opt.tol_elliptic,
                                    std::move(r_radial)));
  if (selected(EllipticEquation::weyl_ricci))
    reports.push_back(finish_report(IdentityId::weyl_ricci_laplacian,
                                    "Ricci drift Laplacian with Weyl-decomposed right-hand side",
                                    opt.tol_elliptic, std::move(r_weyl)));
  return reports;
}

// --- trace compatibility ---------------------------------------------------------

ResidualReport verify_sharp_trace_consistency(const SolitonInstance& inst,
                                              const SampleGrid& grid,
                                              const VerifyOptions& opt) {
  const int n = inst.family.dim();
  if (n < 3)
    fail(ErrorKind::unsupported_dimension, "trace consistency needs dimension >= 3");
  const double lambda = inst.family.lambda;

  std::vector<PointGeometry> geoms = evaluate_grid(inst, grid);
  gate_soliton_equation(inst, geoms, opt);

  std::vector<PointResidual> per_point;
  for (const auto& P : geoms) {
    const Eigen::MatrixXd& gi = P.ginv;
    const Eigen::MatrixXd& E = P.frame;
    TensorField R_f = frame_components(P.riemann, E);
    Eigen::MatrixXd ric_f = frame_components(P.ricci, E);

    Eigen::MatrixXd M = curvature_operator(R_f);
    Eigen::MatrixXd rhs_op = 2.0 * lambda * M - 2.0 * (M * M + sharp_operator(M));
    TensorField rhs_tensor = operator_to_tensor(rhs_op, n);

    // Trace the operator equation over a frame: c(T)_jk = sum_i T(i,j,k,i).
    Eigen::MatrixXd traced = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += rhs_tensor(i, j, k, i);
        traced(j, k) = acc;
      }

    Eigen::MatrixXd K_f = contract_curvature_sym(R_f, ric_f);
    Eigen::MatrixXd rhs_ricci = 2.0 * lambda * ric_f - 2.0 * K_f;
    per_point.push_back({P.x, (traced - rhs_ricci).norm()});
  }

  return finish_report(IdentityId::sharp_trace,
                       "frame trace of the curvature-operator equation vs. the Ricci equation",
                       opt.tol_algebraic, std::move(per_point));
}

}  // namespace solgeo
