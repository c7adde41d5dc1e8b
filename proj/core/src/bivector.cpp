/// @file bivector.cpp
/// @brief Implementation of the 2-form curvature algebra.

#include "solgeo/bivector.hpp"

#include <cmath>

#include "solgeo/errors.hpp"

namespace solgeo {

int BivectorBasis::index(int i, int j) const {
  if (!(0 <= i && i < j && j < n)) fail(ErrorKind::internal, "bad bivector pair");
  // pairs are lexicographic: (0,1),(0,2),...,(0,n-1),(1,2),...
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

BivectorBasis bivector_basis(int n) {
  if (n < 2) fail(ErrorKind::unsupported_dimension, "2-form basis needs n >= 2");
  BivectorBasis b;
  b.n = n;
  b.size = n * (n - 1) / 2;
  b.pairs.reserve(b.size);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.pairs.emplace_back(i, j);
  return b;
}

Eigen::MatrixXd bivector_matrix(const BivectorBasis& basis, int a) {
  const auto [i, j] = basis.pairs.at(a);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(basis.n, basis.n);
  // (E_i ^ E_j) z = <E_i, z> E_j - <E_j, z> E_i
  A(j, i) = 1.0;
  A(i, j) = -1.0;
  return A;
}

double bivector_inner(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  return 0.5 * (A.transpose() * B).trace();
}

std::vector<double> structure_constants(const BivectorBasis& basis) {
  const int N = basis.size;
  std::vector<Eigen::MatrixXd> A(N);
  for (int a = 0; a < N; ++a) A[a] = bivector_matrix(basis, a);
  std::vector<double> C(static_cast<std::size_t>(N) * N * N, 0.0);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      const Eigen::MatrixXd K = A[a] * A[b] - A[b] * A[a];
      for (int c = 0; c < N; ++c) {
        C[(static_cast<std::size_t>(a) * N + b) * N + c] = bivector_inner(K, A[c]);
      }
    }
  return C;
}

Eigen::MatrixXd curvature_operator(const TensorField& R_frame) {
  const int n = R_frame.dim();
  const BivectorBasis basis = bivector_basis(n);
  Eigen::MatrixXd M(basis.size, basis.size);
  for (int a = 0; a < basis.size; ++a)
    for (int b = 0; b < basis.size; ++b) {
      const auto [i, j] = basis.pairs[a];
      const auto [k, l] = basis.pairs[b];
      M(a, b) = -R_frame(i, j, k, l);
    }
  return M;
}

TensorField operator_to_tensor(const Eigen::MatrixXd& M, int n) {
  const BivectorBasis basis = bivector_basis(n);
  if (M.rows() != basis.size || M.cols() != basis.size)
    fail(ErrorKind::internal, "operator size does not match dimension");
  TensorField T(n, {4, 0});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double s1 = (i < j) ? 1.0 : -1.0;
      const int a = basis.index(std::min(i, j), std::max(i, j));
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (k == l) continue;
          const double s2 = (k < l) ? 1.0 : -1.0;
          const int b = basis.index(std::min(k, l), std::max(k, l));
          T(i, j, k, l) = -s1 * s2 * M(a, b);
        }
    }
  return T;
}

Eigen::MatrixXd sharp_operator(const Eigen::MatrixXd& M) {
  const int N = static_cast<int>(M.rows());
  // recover n from N = n(n-1)/2
  int n = 2;
  while (n * (n - 1) / 2 < N) ++n;
  if (n * (n - 1) / 2 != N) fail(ErrorKind::internal, "operator size is not n(n-1)/2");
  const BivectorBasis basis = bivector_basis(n);

  std::vector<Eigen::MatrixXd> A(N), MA(N);
  for (int a = 0; a < N; ++a) A[a] = bivector_matrix(basis, a);
  for (int a = 0; a < N; ++a) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int b = 0; b < N; ++b) m += M(b, a) * A[b];
    MA[a] = m;
  }

  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      const Eigen::MatrixXd Km = MA[a] * MA[b] - MA[b] * MA[a];
      const Eigen::MatrixXd Kb = A[a] * A[b] - A[b] * A[a];
      for (int u = 0; u < N; ++u) {
        const double cu = bivector_inner(Km, A[u]);
        if (cu == 0.0) continue;
        for (int v = 0; v < N; ++v) {
          S(u, v) += 0.5 * cu * bivector_inner(Kb, A[v]);
        }
      }
    }
  return S;
}

Eigen::MatrixXd sharp_from_curvature(const TensorField& R_frame) {
  const int n = R_frame.dim();
  // B(X,Y,W,Z) = - sum_{i,d} R(X,i,Y,d) R(W,i,Z,d) in the orthonormal frame
  TensorField B(n, {4, 0});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int w = 0; w < n; ++w)
        for (int z = 0; z < n; ++z) {
          double s = 0.0;
          for (int i = 0; i < n; ++i)
            for (int d = 0; d < n; ++d) s += R_frame(x, i, y, d) * R_frame(w, i, z, d);
          B(x, y, w, z) = -s;
        }
  TensorField sharp4(n, {4, 0});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          sharp4(x, y, z, w) = B(x, z, y, w) - B(x, w, y, z);
        }
  return curvature_operator(sharp4);
}

TensorField kulkarni_nomizu(const Eigen::MatrixXd& h, const Eigen::MatrixXd& k) {
  const int n = static_cast<int>(h.rows());
  TensorField T(n, {4, 0});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          T(x, y, z, w) = h(x, w) * k(y, z) + h(y, z) * k(x, w) - h(x, z) * k(y, w) -
                          h(y, w) * k(x, z);
        }
  return T;
}

WeylDecomposition weyl_decompose(const TensorField& R_frame,
                                 const Eigen::MatrixXd& ric_frame, double scal) {
  const int n = R_frame.dim();
  if (n < 3) fail(ErrorKind::unsupported_dimension, "Weyl decomposition needs n >= 3");
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  WeylDecomposition out;
  out.ricci_part = (1.0 / (n - 2)) * kulkarni_nomizu(ric_frame, id);
  out.scalar_part =
      (-scal / (2.0 * (n - 1) * (n - 2))) * kulkarni_nomizu(id, id);
  out.weyl = R_frame - out.ricci_part - out.scalar_part;
  return out;
}

Eigen::MatrixXd contract_curvature_sym(const TensorField& T_frame,
                                       const Eigen::MatrixXd& S) {
  const int n = T_frame.dim();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += S(a, b) * T_frame(y, a, b, z);
      out(y, z) = s;
    }
  return out;
}

}  // namespace solgeo
