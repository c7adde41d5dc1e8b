// Classification diagnostics: the phi invariant and its nonpositivity, the
// curvature quadratic form, the curvature-operator spectrum audit, kernel
// parallelism, constant-scalar-curvature tests, the eigenvalue-ratio barrier,
// and the label decision tree on the catalog and on perturbed controls.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "solgeo/classify.hpp"
#include "solgeo/models.hpp"
#include "solgeo/verify.hpp"

#include "test_support.hpp"

using namespace solgeo;

namespace {

bool fails_with(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.kind() == kind;
  }
  return false;
}

Eigen::VectorXd rho3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("phi: frozen value, zero branches, nonpositivity, guards") {
  // hand-evaluated at rho = (0.1, 1, 2), scal = 3.1:
  //   rho1^2 (3 rho1 - scal) / (2 scal^2)          = 0.01 * (-2.8) / 19.22
  //   (rho1 - scal) * (2*(1+4) - 9) / (2 scal^2)   = (-3) * 1 / 19.22
  // total = -3.028 / 19.22
  CHECK(phi_value(rho3(0.1, 1.0, 2.0), 3.1) ==
        doctest::Approx(-3.028 / 19.22).epsilon(1e-12));

  // Einstein: all eigenvalues equal
  CHECK(std::abs(phi_value(rho3(1.0, 1.0, 1.0), 3.0)) <= 1e-15);
  Eigen::VectorXd rho5 = Eigen::VectorXd::Constant(5, 0.7);
  CHECK(std::abs(phi_value(rho5, 3.5)) <= 1e-15);

  // split: one zero eigenvalue, the rest equal
  CHECK(std::abs(phi_value(rho3(0.0, 1.0, 1.0), 2.0)) <= 1e-15);
  Eigen::VectorXd rho4(4);
  rho4 << 0.0, 2.0, 2.0, 2.0;
  CHECK(std::abs(phi_value(rho4, 6.0)) <= 1e-15);

  // nonpositive on every admissible ascending tuple
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> uni(-1.0, 3.0);
  std::uniform_int_distribution<int> dim(3, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = dim(rng);
    Eigen::VectorXd rho(n);
    for (int i = 0; i < n; ++i) rho[i] = uni(rng);
    std::sort(rho.data(), rho.data() + n);
    const double scal = rho.sum();
    if (!(scal > 0.1)) continue;
    CAPTURE(trial);
    CHECK(phi_value(rho, scal) <= 1e-12);
  }

  CHECK(fails_with(ErrorKind::unsupported_dimension, [] {
    Eigen::VectorXd rho(2);
    rho << 1.0, 1.0;
    phi_value(rho, 2.0);
  }));
  CHECK(fails_with(ErrorKind::hypothesis_violated,
                   [] { phi_value(rho3(-1.0, 0.0, 0.5), -0.5); }));
}

TEST_CASE("curvature quadratic form K(Y,Y) on model geometries") {
  // unit S^3: Ric = 2g, sec = 1 -> K(Y,Y) = 2 + 2 = 4 in every direction
  {
    const SolitonInstance inst = round_sphere(3);
    Eigen::VectorXd x(3), y(3);
    x << 0.2, -0.3, 0.1;
    y << 1.0, 2.0, -0.5;
    CHECK(k_quadratic_form(inst, x, y) == doctest::Approx(4.0).epsilon(1e-10));
  }

  // S^2 x R in (theta, phi, t): K = 0 along the line, 1 along the sphere
  {
    const SolitonInstance inst = sphere_cylinder(3);
    Eigen::VectorXd x(3);
    x << 1.1, 0.7, 0.4;
    Eigen::VectorXd t_dir = Eigen::VectorXd::Zero(3);
    t_dir[2] = 1.0;
    CHECK(std::abs(k_quadratic_form(inst, x, t_dir)) < 1e-11);
    Eigen::VectorXd s_dir = Eigen::VectorXd::Zero(3);
    s_dir[0] = 1.0;
    CHECK(k_quadratic_form(inst, x, s_dir) == doctest::Approx(1.0).epsilon(1e-10));
  }

  // flat space: K = 0
  {
    const SolitonInstance inst = gaussian_soliton(3, 0.5);
    Eigen::VectorXd x(3), y(3);
    x << 0.4, 0.1, -0.2;
    y << 0.3, -1.0, 0.7;
    CHECK(std::abs(k_quadratic_form(inst, x, y)) < 1e-12);
  }
}

TEST_CASE("spectrum audit: eigenbasis restricted sum equals the direct form") {
  std::mt19937_64 rng(424243);
  for (int n : {3, 4}) {
    const int N = n * (n - 1) / 2;
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::MatrixXd M = solgeo_test::random_symmetric(N, rng);
      const SharpSpectrumPoint pt = audit_sharp_spectrum(M, n);
      CAPTURE(n);
      CAPTURE(trial);
      CHECK(std::abs(pt.restricted_sum - pt.direct_form) <= 1e-10);
      CHECK(pt.lambda1 <= pt.lambda2);
    }
  }
}

TEST_CASE("spectrum audit exposes the forbidden sign pattern") {
  // operator shaped like the curvature operator of H^2 x S^2 on pair
  // bivectors: one negative plane, one positive, four flat
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(6, 6);
  M(0, 0) = -1.0;
  M(5, 5) = 1.0;
  const SharpSpectrumPoint pt = audit_sharp_spectrum(M, 4);
  CHECK(pt.lambda1 == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(pt.lambda2 == doctest::Approx(0.0).epsilon(1e-13));
  // lambda2 >= 0 with lambda1 < 0: exactly the configuration the
  // second-eigenvalue check must flag on a shrinking soliton
  CHECK((pt.lambda2 >= 0.0 && pt.lambda1 < -0.5));
}

TEST_CASE("second-eigenvalue check on shrinking catalog models") {
  for (const char* name : {"round_sphere", "cylinder", "einstein_product"}) {
    std::map<std::string, double> params;
    for (const auto& info : model_registry())
      if (info.name == name) params = {info.defaults.begin(), info.defaults.end()};
    const SolitonInstance inst = build_model(name, params);
    SampleGrid grid = make_sample_grid(inst, {12, 15u, 2e-3});
    const SecondEigenvalueReport rep = second_eigenvalue_check(inst, grid);
    CAPTURE(name);
    CHECK(rep.cross_check_max <= 1e-9);
    CHECK(rep.audit_passed);
    CHECK(rep.per_point.size() == grid.points.size());
  }

  const SolitonInstance steady = cigar_soliton();
  SampleGrid grid = make_sample_grid(steady, {6, 16u, 2e-3});
  CHECK(fails_with(ErrorKind::hypothesis_violated,
                   [&] { second_eigenvalue_check(steady, grid); }));
}

TEST_CASE("kernel parallelism: split models carry a parallel Ricci kernel") {
  {
    const SolitonInstance inst = sphere_cylinder(3);
    SampleGrid grid = make_sample_grid(inst, {10, 17u, 2e-3});
    const KernelParallelismReport rep = kernel_parallelism_check(inst, grid);
    CHECK(rep.kernel_rank == 1);
    CHECK(rep.passed);
  }
  {
    const SolitonInstance inst = einstein_product(2, 2);
    SampleGrid grid = make_sample_grid(inst, {10, 18u, 2e-3});
    const KernelParallelismReport rep = kernel_parallelism_check(inst, grid);
    CHECK(rep.kernel_rank == 2);
    CHECK(rep.passed);
  }
  {
    const SolitonInstance inst = round_sphere(3);
    SampleGrid grid = make_sample_grid(inst, {8, 19u, 2e-3});
    CHECK(fails_with(ErrorKind::hypothesis_violated,
                     [&] { kernel_parallelism_check(inst, grid); }));
  }
}

TEST_CASE("constant scalar curvature diagnostics across the catalog endpoints") {
  {
    const SolitonInstance inst = sphere_cylinder(3);
    SampleGrid grid = make_sample_grid(inst, {12, 21u, 2e-3});
    const ConstantScalReport rep = constant_scal_diagnostics(inst, grid);
    CHECK(rep.constant);
    CHECK(rep.range_ok);
    CHECK(rep.ricci_norm_gap <= 1e-8);
    CHECK_FALSE(rep.flat_endpoint);
    CHECK_FALSE(rep.einstein_endpoint);
    CHECK(rep.scal_mean == doctest::Approx(2.0).epsilon(1e-10));
  }
  {
    const SolitonInstance inst = round_sphere(3);
    SampleGrid grid = make_sample_grid(inst, {12, 22u, 2e-3});
    const ConstantScalReport rep = constant_scal_diagnostics(inst, grid);
    CHECK(rep.constant);
    CHECK(rep.einstein_endpoint);
    CHECK_FALSE(rep.flat_endpoint);
  }
  {
    const SolitonInstance inst = gaussian_soliton(3, 0.5);
    SampleGrid grid = make_sample_grid(inst, {12, 23u, 2e-3});
    const ConstantScalReport rep = constant_scal_diagnostics(inst, grid);
    CHECK(rep.constant);
    CHECK(rep.flat_endpoint);
  }
  {
    const SolitonInstance inst = cigar_soliton();
    SampleGrid grid = make_sample_grid(inst, {12, 24u, 2e-3});
    const ConstantScalReport rep = constant_scal_diagnostics(inst, grid);
    CHECK_FALSE(rep.constant);
    CHECK(rep.scal_spread > 0.1);
  }
}

TEST_CASE("eigenvalue-ratio barrier: applicability gates and the split case") {
  {
    // S^3 x R: conformally flat shrinker with scal > 0 and a simple lowest
    // eigenvalue -> the inequality is checked and holds with slack
    const SolitonInstance inst = sphere_cylinder(4);
    SampleGrid grid = make_sample_grid(inst, {10, 25u, 2e-3});
    const RicciBarrierReport rep = ricci_barrier_check(inst, grid);
    CHECK(rep.applicable);
    CHECK(rep.checked > 0);
    CHECK(rep.satisfied);
  }
  {
    // Einstein: every point sits at an eigenvalue crossing, so the classical
    // stencil is skipped everywhere, vacuously satisfied
    const SolitonInstance inst = round_sphere(3);
    SampleGrid grid = make_sample_grid(inst, {10, 26u, 2e-3});
    const RicciBarrierReport rep = ricci_barrier_check(inst, grid);
    CHECK(rep.applicable);
    CHECK(rep.checked == 0);
    CHECK(rep.skipped == static_cast<int>(grid.points.size()));
  }
  {
    // nonzero Weyl -> not applicable
    const SolitonInstance inst = einstein_product(2, 2);
    SampleGrid grid = make_sample_grid(inst, {8, 27u, 2e-3});
    const RicciBarrierReport rep = ricci_barrier_check(inst, grid);
    CHECK_FALSE(rep.applicable);
    CHECK_FALSE(rep.reason.empty());
  }
  {
    // scal = 0 -> not applicable
    const SolitonInstance inst = gaussian_soliton(3, 0.5);
    SampleGrid grid = make_sample_grid(inst, {8, 28u, 2e-3});
    const RicciBarrierReport rep = ricci_barrier_check(inst, grid);
    CHECK_FALSE(rep.applicable);
  }
  {
    // expanding -> not applicable
    const SolitonInstance inst = hyperbolic_space(3);
    SampleGrid grid = make_sample_grid(inst, {8, 29u, 2e-3});
    const RicciBarrierReport rep = ricci_barrier_check(inst, grid);
    CHECK_FALSE(rep.applicable);
  }
}

TEST_CASE("radial Weyl ratio separates conformally flat from generic products") {
  {
    const SolitonInstance inst = sphere_cylinder(4);
    SampleGrid grid = make_sample_grid(inst, {10, 30u, 2e-3});
    const WeylRadialRatioReport rep = weyl_radial_ratio(inst, grid);
    CHECK(rep.max_ratio <= 1e-9);
  }
  {
    const SolitonInstance inst = einstein_product(2, 2);
    SampleGrid grid = make_sample_grid(inst, {10, 31u, 2e-3});
    const WeylRadialRatioReport rep = weyl_radial_ratio(inst, grid);
    CHECK(rep.max_ratio > 0.05);
  }
}

TEST_CASE("spectral diagnostics: gap values and trace consistency") {
  {
    const SolitonInstance inst = round_sphere(3);
    SampleGrid grid = make_sample_grid(inst, {8, 32u, 2e-3});
    const SpectralDiagnostics diag = spectral_diagnostics(inst, grid);
    for (std::size_t i = 0; i < diag.points.size(); ++i) {
      CHECK(diag.scal[i] == doctest::Approx(6.0).epsilon(1e-10));
      // |Ric|^2 - scal^2/(n-1) = 12 - 18 = -6
      CHECK(diag.cauchy_schwarz_gap[i] == doctest::Approx(-6.0).epsilon(1e-9));
      CHECK(diag.ricci_eigenvalues[i].sum() ==
            doctest::Approx(diag.scal[i]).epsilon(1e-12));
    }
  }
  {
    const SolitonInstance inst = sphere_cylinder(3);
    SampleGrid grid = make_sample_grid(inst, {8, 33u, 2e-3});
    const SpectralDiagnostics diag = spectral_diagnostics(inst, grid);
    for (double gap : diag.cauchy_schwarz_gap) CHECK(std::abs(gap) < 1e-9);
  }
}

TEST_CASE("classification: catalog labels match, evidence is consistent") {
  for (const SolitonInstance& inst : default_catalog()) {
    SampleGrid grid = make_sample_grid(inst, {15, 34u, 2e-3});
    const ClassificationResult res = classify(inst, grid);
    CAPTURE(inst.label);
    CHECK(res.label == inst.expected_class);
    if (res.label != "inconclusive")
      for (const EvidenceItem& item : res.evidence) {
        CAPTURE(item.diagnostic);
        CHECK(item.passed);
      }
    const auto& labels = classification_labels();
    CHECK(std::find(labels.begin(), labels.end(), res.label) != labels.end());
  }
}

TEST_CASE("classification: perturbed instances come back inconclusive") {
  std::vector<SolitonInstance> controls;
  {
    ModelOptions mo;
    mo.perturb_f_cubic = 0.01;
    controls.push_back(gaussian_soliton(3, 0.5, mo));
  }
  {
    ModelOptions mo;
    mo.perturb_g_conformal = 0.01;
    controls.push_back(round_sphere(3, 1.0, mo));
  }
  {
    ModelOptions mo;
    mo.perturb_f_cubic = 0.005;
    controls.push_back(sphere_cylinder(3, 1.0, mo));
  }
  for (const SolitonInstance& inst : controls) {
    SampleGrid grid = make_sample_grid(inst, {12, 35u, 2e-3});
    const ClassificationResult res = classify(inst, grid);
    CAPTURE(inst.label);
    CHECK(res.label == "inconclusive");
  }
}

TEST_CASE("classification is invariant under metric scaling") {
  for (const auto& info : model_registry()) {
    std::map<std::string, double> params(info.defaults.begin(), info.defaults.end());
    params["metric_scale"] = 2.0;
    const SolitonInstance scaled = build_model(info.name, params);
    SampleGrid grid = make_sample_grid(scaled, {12, 36u, 2e-3});
    const ClassificationResult res = classify(scaled, grid);
    CAPTURE(info.name);
    CHECK(res.label == info.expected_class);
  }
}
