// Curvature kernels against closed-form oracles: polar-chart Christoffel
// symbols, constant-curvature model tensors, scalar curvature of the cigar,
// both Bianchi identities from analytic jets, frame algebra, and the
// covariant stencil operators on fields with known derivatives.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "solgeo/geometry.hpp"
#include "solgeo/models.hpp"
#include "test_support.hpp"

using namespace solgeo;

namespace {

MetricFamily sphere_polar_metric() {
  // unit S^2 in polar coordinates (theta, phi): g = diag(1, sin^2 theta)
  Chart chart;
  chart.dim = 2;
  chart.validity = [](const Eigen::VectorXd& x) {
    return x[0] > 1e-6 && x[0] < M_PI - 1e-6;
  };
  auto g_fun = [](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    out[0] = T(1.0);
    out[1] = T(0.0);
    out[2] = T(0.0);
    out[3] = sin(x[0]) * sin(x[0]);
  };
  auto f_fun = [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    (void)x;
    return T(0.0);
  };
  return make_metric_family(chart, 1.0, g_fun, f_fun);
}

}  // namespace

TEST_CASE("polar-chart Christoffel symbols of the round sphere") {
  const MetricFamily fam = sphere_polar_metric();
  Eigen::VectorXd x(2);
  x << 0.9, 2.1;
  const PointGeometry P = point_geometry(fam, x);
  const double theta = x[0];

  // nonzero symbols: Gamma^theta_{phi phi} = -sin cos, Gamma^phi_{theta phi} = cot
  CHECK(P.gamma(0, 1, 1) ==
        doctest::Approx(-std::sin(theta) * std::cos(theta)).epsilon(1e-13));
  CHECK(P.gamma(1, 0, 1) ==
        doctest::Approx(std::cos(theta) / std::sin(theta)).epsilon(1e-13));
  CHECK(P.gamma(1, 1, 0) == P.gamma(1, 0, 1));
  CHECK(P.gamma(0, 0, 0) == doctest::Approx(0.0));
  CHECK(P.gamma(0, 0, 1) == doctest::Approx(0.0));
  CHECK(P.gamma(1, 0, 0) == doctest::Approx(0.0));
  CHECK(P.gamma(1, 1, 1) == doctest::Approx(0.0));

  CHECK(P.scal == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sectional_curvature(frame_components(P.riemann, P.frame), 0, 1) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stereographic round spheres: scal, Ricci, frame curvature") {
  for (int n : {2, 3, 4}) {
    const SolitonInstance inst = round_sphere(n);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) x[i] = 0.1 + 0.13 * i;
    const PointGeometry P = point_geometry(inst.family, x);

    CHECK(P.scal == doctest::Approx(double(n) * (n - 1)).epsilon(1e-11));

    // Ric = (n-1) g
    const Eigen::MatrixXd ric_f = frame_components(P.ricci, P.frame);
    CHECK((ric_f - (n - 1.0) * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <
          1e-11);

    // R(X,Y,Z,W) = g(Y,Z)g(X,W) - g(X,Z)g(Y,W), i.e. all sectional curvatures +1
    const TensorField R_f = frame_components(P.riemann, P.frame);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double expected = (j == k ? 1.0 : 0.0) * (i == l ? 1.0 : 0.0) -
                                    (i == k ? 1.0 : 0.0) * (j == l ? 1.0 : 0.0);
            worst = std::max(worst, std::abs(R_f(i, j, k, l) - expected));
          }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("cigar scalar curvature is 4 sech^2 r") {
  const SolitonInstance inst = cigar_soliton();
  for (double r : {0.3, 0.8, 1.5, 2.4}) {
    Eigen::VectorXd x(2);
    x << r, 1.0;
    const PointGeometry P = point_geometry(inst.family, x);
    const double sech = 1.0 / std::cosh(r);
    CHECK(P.scal == doctest::Approx(4.0 * sech * sech).epsilon(1e-12));
  }
}

TEST_CASE("curvature symmetries and both Bianchi identities (generic metric)") {
  const MetricFamily fam = solgeo_test::wavy_metric(3);
  Eigen::VectorXd x(3);
  x << 0.23, -0.31, 0.47;
  const PointGeometry P = point_geometry(fam, x);
  const int n = 3;

  CHECK(symmetry_defect(P.riemann, 0, 1, -1.0) < 1e-12);
  CHECK(symmetry_defect(P.riemann, 2, 3, -1.0) < 1e-12);
  CHECK((P.ricci - P.ricci.transpose()).cwiseAbs().maxCoeff() < 1e-12);

  double pair_interchange = 0.0, first_bianchi = 0.0, second_bianchi = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          pair_interchange = std::max(
              pair_interchange, std::abs(P.riemann(i, j, k, l) - P.riemann(k, l, i, j)));
        }
  CHECK(pair_interchange < 1e-12);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          first_bianchi = std::max(
              first_bianchi, std::abs(P.riemann(i, j, k, l) + P.riemann(j, k, i, l) +
                                      P.riemann(k, i, j, l)));
          for (int p = 0; p < n; ++p) {
            second_bianchi =
                std::max(second_bianchi,
                         std::abs(P.nabla_riemann(p, i, j, k, l) +
                                  P.nabla_riemann(i, j, p, k, l) +
                                  P.nabla_riemann(j, p, i, k, l)));
          }
        }
  CHECK(first_bianchi < 1e-12);
  CHECK(second_bianchi < 1e-10);
}

TEST_CASE("g-orthonormal frame: completeness relations") {
  const MetricFamily fam = solgeo_test::wavy_metric(4);
  Eigen::VectorXd x(4);
  x << 0.15, -0.2, 0.33, 0.08;
  const PointGeometry P = point_geometry(fam, x);
  const Eigen::MatrixXd& E = P.frame;

  CHECK((E.transpose() * P.mj.g * E - Eigen::MatrixXd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() < 1e-13);
  CHECK((E * E.transpose() - P.ginv).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("covariant stencil derivative: metric is parallel, Ricci derivative matches") {
  const MetricFamily fam = solgeo_test::wavy_metric(3);
  Eigen::VectorXd x(3);
  x << 0.12, 0.41, -0.33;
  const PointGeometry P = point_geometry(fam, x);

  FieldOracle metric_field = [&fam](const Eigen::VectorXd& y) {
    TensorField t = from_matrix(fam.jets(y, 0).g, {2, 0});
    t.set_base_point(y);
    return t;
  };
  CHECK(covariant_derivative(fam, P, metric_field).max_abs() < 1e-9);

  FieldOracle ricci_field = [&fam](const Eigen::VectorXd& y) {
    PointGeometry Q = point_geometry(fam, y);
    TensorField t = from_matrix(Q.ricci, {2, 0});
    t.set_base_point(y);
    return t;
  };
  const TensorField numeric = covariant_derivative(fam, P, ricci_field);
  CHECK((numeric - P.nabla_ricci).max_abs() < 1e-8);
}

TEST_CASE("f-Laplacian of a rank-0 field against the flat closed form") {
  const SolitonInstance inst = gaussian_soliton(3, 0.5);
  Eigen::VectorXd x(3);
  x << 0.4, -0.7, 0.9;
  const PointGeometry P = point_geometry(inst.family, x);

  FieldOracle u_field = [](const Eigen::VectorXd& y) {
    TensorField t(3, Valence{0, 0});
    t.data()[0] = y[0] * y[0];
    t.set_base_point(y);
    return t;
  };
  // Delta u = 2, grad f . grad u = lambda y . (2 y0 e0) = 2 lambda y0^2
  const double expected = 2.0 - 2.0 * 0.5 * x[0] * x[0];
  const TensorField lap = f_laplacian(inst.family, P, u_field);
  CHECK(lap.data()[0] == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("soliton residual: zero on catalog models, visible on perturbations") {
  const SolitonInstance good = gaussian_soliton(3, 0.5);
  ModelOptions opt;
  opt.perturb_f_cubic = 0.01;
  const SolitonInstance bad = gaussian_soliton(3, 0.5, opt);
  CHECK(bad.perturbed);

  Eigen::VectorXd x(3);
  x << 0.8, -0.5, 1.1;
  CHECK(soliton_residual(good.family, point_geometry(good.family, x)) < 1e-12);
  CHECK(soliton_residual(bad.family, point_geometry(bad.family, x)) > 1e-3);
}

TEST_CASE("cylinder sectional curvatures split by factor") {
  const SolitonInstance inst = sphere_cylinder(3);
  Eigen::VectorXd x(3);
  x << 1.1, 2.0, 0.7;  // (theta, phi, t)
  const PointGeometry P = point_geometry(inst.family, x);
  const TensorField R_f = frame_components(P.riemann, P.frame);
  CHECK(sectional_curvature(R_f, 0, 1) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(sectional_curvature(R_f, 0, 2) == doctest::Approx(0.0));
  CHECK(sectional_curvature(R_f, 1, 2) == doctest::Approx(0.0));
}
