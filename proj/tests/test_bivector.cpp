// The 2-form machinery: pair-basis algebra, structure constants, curvature
// operator conventions, the two routes to the quadratic sharp, Weyl
// decomposition, and the trace identity that ties the operator picture back
// to the Ricci tensor.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "solgeo/bivector.hpp"
#include "solgeo/geometry.hpp"
#include "solgeo/models.hpp"
#include "solgeo/verify.hpp"
#include "test_support.hpp"

using namespace solgeo;

TEST_CASE("pair basis is orthonormal under tr(A^T B)/2") {
  for (int n : {2, 3, 4, 5}) {
    const BivectorBasis basis = bivector_basis(n);
    CHECK(basis.size == n * (n - 1) / 2);
    for (int a = 0; a < basis.size; ++a) {
      const Eigen::MatrixXd A = bivector_matrix(basis, a);
      CHECK((A + A.transpose()).cwiseAbs().maxCoeff() == 0.0);
      for (int b = 0; b < basis.size; ++b) {
        const double ip = bivector_inner(A, bivector_matrix(basis, b));
        CHECK(ip == doctest::Approx(a == b ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("structure constants: antisymmetric and matching the brackets") {
  for (int n : {3, 4}) {
    const BivectorBasis basis = bivector_basis(n);
    const int N = basis.size;
    const std::vector<double> C = structure_constants(basis);
    auto at = [&](int a, int b, int c) { return C[(a * N + b) * N + c]; };

    double worst = 0.0;
    for (int a = 0; a < N; ++a) {
      const Eigen::MatrixXd A = bivector_matrix(basis, a);
      for (int b = 0; b < N; ++b) {
        const Eigen::MatrixXd B = bivector_matrix(basis, b);
        const Eigen::MatrixXd bracket = A * B - B * A;
        for (int c = 0; c < N; ++c) {
          const double expected = bivector_inner(bracket, bivector_matrix(basis, c));
          worst = std::max(worst, std::abs(at(a, b, c) - expected));
          // total antisymmetry (orthonormal basis of so(n))
          worst = std::max(worst, std::abs(at(a, b, c) + at(b, a, c)));
          worst = std::max(worst, std::abs(at(a, b, c) + at(a, c, b)));
        }
      }
    }
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("unit spheres map to the identity operator") {
  for (int n : {3, 4}) {
    const SolitonInstance inst = round_sphere(n);
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 0.17);
    const PointGeometry P = point_geometry(inst.family, x);
    const Eigen::MatrixXd M = curvature_operator(frame_components(P.riemann, P.frame));
    const int N = n * (n - 1) / 2;
    CHECK((M - Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("operator <-> tensor round trip") {
  std::mt19937_64 rng(611);
  for (int n : {3, 4, 5}) {
    for (int trial = 0; trial < 5; ++trial) {
      const TensorField R = solgeo_test::random_curvature_tensor(n, rng);
      const Eigen::MatrixXd M = curvature_operator(R);
      CHECK((M - M.transpose()).cwiseAbs().maxCoeff() < 1e-12);
      const TensorField back = operator_to_tensor(M, n);
      CHECK((back - R).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("sharp of the identity is the so(n) Casimir constant") {
  for (int n : {3, 4, 5}) {
    const int N = n * (n - 1) / 2;
    const Eigen::MatrixXd S = sharp_operator(Eigen::MatrixXd::Identity(N, N));
    CHECK((S - (n - 2.0) * Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("sharp via brackets agrees with sharp via the quadratic tensor") {
  // catalog curvature operators
  for (const SolitonInstance& inst : default_catalog()) {
    const int n = inst.family.dim();
    if (n < 3) continue;
    SampleGrid grid = make_sample_grid(inst, {8, 20240817u, 2e-3});
    for (const auto& x : grid.points) {
      const PointGeometry P = point_geometry(inst.family, x);
      const TensorField R_f = frame_components(P.riemann, P.frame);
      const Eigen::MatrixXd via_brackets = sharp_operator(curvature_operator(R_f));
      const Eigen::MatrixXd via_tensor = sharp_from_curvature(R_f);
      CHECK((via_brackets - via_tensor).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  // seeded random algebraic curvature tensors
  std::mt19937_64 rng(4243);
  for (int n : {3, 4, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      const TensorField R = solgeo_test::random_curvature_tensor(n, rng);
      const Eigen::MatrixXd via_brackets = sharp_operator(curvature_operator(R));
      const Eigen::MatrixXd via_tensor = sharp_from_curvature(R);
      CHECK((via_brackets - via_tensor).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("Kulkarni-Nomizu of the metric with itself is twice the identity") {
  for (int n : {3, 4}) {
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd M = curvature_operator(kulkarni_nomizu(I, I));
    const int N = n * (n - 1) / 2;
    CHECK((M - 2.0 * Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("Weyl tensor: zero where conformal flatness demands, trace-free always") {
  for (const SolitonInstance& inst : default_catalog()) {
    const int n = inst.family.dim();
    if (n < 3) continue;
    SampleGrid grid = make_sample_grid(inst, {6, 99u, 2e-3});
    // n=3, constant curvature, and (hyper)sphere/hyperbolic cylinders are
    // conformally flat; the S^2 x R^2 product is the one catalog model with
    // genuine Weyl curvature.
    const bool conformally_flat = inst.label.rfind("einstein_product", 0) != 0;
    for (const auto& x : grid.points) {
      const PointGeometry P = point_geometry(inst.family, x);
      const TensorField R_f = frame_components(P.riemann, P.frame);
      const WeylDecomposition dec =
          weyl_decompose(R_f, frame_components(P.ricci, P.frame), P.scal);

      // reconstruction
      TensorField recon = dec.weyl;
      recon += dec.ricci_part;
      recon += dec.scalar_part;
      CHECK((recon - R_f).max_abs() < 1e-11);

      // trace-free in every contraction that matters: sum_i W(i,j,k,i) = 0
      const Eigen::MatrixXd tr = solgeo_test::ricci_of(dec.weyl);
      CHECK(tr.cwiseAbs().maxCoeff() < 1e-9);

      if (conformally_flat) {
        CHECK(dec.weyl.max_abs() < 1e-9);
      } else {
        CHECK(dec.weyl.max_abs() > 0.05);
      }
    }
  }
}

TEST_CASE("tracing the quadratic operator terms reproduces the Ricci contraction") {
  // For genuine curvature tensors, sum_i Q(i,j,k,i) with Q = tensor(M^2 + M#)
  // equals K(j,k) = Ric^{ab} R(j,a,b,k).  This is the algebraic fact that
  // makes the operator equation trace down to the Ricci equation.
  std::mt19937_64 rng(777);
  for (int n : {3, 4, 5}) {
    for (int trial = 0; trial < 10; ++trial) {
      const TensorField R = solgeo_test::random_curvature_tensor(n, rng);
      const Eigen::MatrixXd M = curvature_operator(R);
      const Eigen::MatrixXd Q = M * M + sharp_operator(M);
      const Eigen::MatrixXd traced = solgeo_test::ricci_of(operator_to_tensor(Q, n));
      const Eigen::MatrixXd K = contract_curvature_sym(R, solgeo_test::ricci_of(R));
      CHECK((traced - K).cwiseAbs().maxCoeff() < 1e-11);
    }
  }

  // Non-vacuity: the identity needs the first Bianchi symmetry.  A generic
  // symmetric operator on 2-forms (n >= 4) extends to a tensor with the pair
  // symmetries but a Bianchi defect, and the trace identity visibly fails.
  std::mt19937_64 rng2(778);
  const int n = 4;
  const Eigen::MatrixXd M = solgeo_test::random_symmetric(6, rng2);
  const TensorField T = operator_to_tensor(M, n);
  double bianchi_defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          bianchi_defect = std::max(
              bianchi_defect, std::abs(T(i, j, k, l) + T(j, k, i, l) + T(k, i, j, l)));
  REQUIRE(bianchi_defect > 0.1);
  const Eigen::MatrixXd Q = M * M + sharp_operator(M);
  const Eigen::MatrixXd traced = solgeo_test::ricci_of(operator_to_tensor(Q, n));
  const Eigen::MatrixXd K = contract_curvature_sym(T, solgeo_test::ricci_of(T));
  CHECK((traced - K).cwiseAbs().maxCoeff() > 1e-3);
}
