/// @file bivector.hpp
/// @brief Curvature as an operator on 2-forms: ascending-pair basis, the
///        matrix of the curvature operator, its quadratic sharp, and the
///        Kulkarni-Nomizu / Weyl decomposition in an orthonormal frame.
///
/// Conventions (fixed once, everything else is tested against them):
///  * the basis of so(n) is {E_i ^ E_j}_{i<j} in lexicographic order, with
///    (E_i ^ E_j) z = <E_i, z> E_j - <E_j, z> E_i as a skew matrix,
///  * the inner product on skew matrices is <A, B> = tr(A^T B) / 2, making
///    the basis orthonormal,
///  * the matrix of the curvature operator is M_{ab} = R(E_i,E_j,E_l,E_k)
///    = -R(i,j,k,l) for a = (i,j), b = (k,l); the round unit sphere then
///    maps to the identity matrix,
///  * sharp(M)(u,v) = 1/2 sum_{a,b} <[M A_a, M A_b], A_u> <[A_a, A_b], A_v>,
///    so sharp(Id) = (n-2) Id (the Casimir of so(n)).

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "solgeo/tensor.hpp"

namespace solgeo {

/// Ascending-pair index bookkeeping for the 2-form bundle in dimension n.
struct BivectorBasis {
  int n = 0;                               ///< ambient dimension
  int size = 0;                            ///< n(n-1)/2
  std::vector<std::pair<int, int>> pairs;  ///< lexicographic (i,j), i<j

  /// Position of the ascending pair (i,j), i < j, in the basis.
  int index(int i, int j) const;
};

BivectorBasis bivector_basis(int n);

/// Skew matrix of basis element a; e.g. for a = (0,1) in n = 3 this is
/// [[0,-1,0],[1,0,0],[0,0,0]].
Eigen::MatrixXd bivector_matrix(const BivectorBasis& basis, int a);

/// <A, B> = tr(A^T B) / 2 on skew matrices.
double bivector_inner(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// Structure constants C[a][b][c] = <[A_a, A_b], A_c>, flattened as
/// a * size^2 + b * size + c.
std::vector<double> structure_constants(const BivectorBasis& basis);

/// Matrix of the curvature operator on 2-forms from orthonormal-frame
/// components of the (0,4) curvature tensor.
Eigen::MatrixXd curvature_operator(const TensorField& R_frame);

/// Inverse of curvature_operator: the (0,4) frame tensor whose operator
/// matrix is M (extended by the bivector antisymmetries).
TensorField operator_to_tensor(const Eigen::MatrixXd& M, int n);

/// Quadratic sharp of a symmetric operator on 2-forms via the Lie bracket
/// of so(n); sharp(Id) = (n-2) Id.
Eigen::MatrixXd sharp_operator(const Eigen::MatrixXd& M);

/// The same sharp computed directly from frame curvature components through
/// the auxiliary quadratic tensor
///   B(X,Y,W,Z) = - sum_{i,d} R(X,i,Y,d) R(W,i,Z,d),
/// assembled as sharp4(X,Y,Z,W) = B(X,Z,Y,W) - B(X,W,Y,Z) and converted to
/// an operator matrix.  Must agree with sharp_operator(curvature_operator).
Eigen::MatrixXd sharp_from_curvature(const TensorField& R_frame);

/// Kulkarni-Nomizu product of symmetric 2-tensors (frame components):
/// (h o k)(X,Y,Z,W) = h(X,W)k(Y,Z) + h(Y,Z)k(X,W) - h(X,Z)k(Y,W) - h(Y,W)k(X,Z).
TensorField kulkarni_nomizu(const Eigen::MatrixXd& h, const Eigen::MatrixXd& k);

/// R = weyl + ricci_part + scalar_part with
///   ricci_part  =  (1/(n-2)) Ric o g,
///   scalar_part = -(scal/(2(n-1)(n-2))) g o g,
/// all in orthonormal-frame components (g = identity).  Requires n >= 3.
struct WeylDecomposition {
  TensorField weyl;
  TensorField ricci_part;
  TensorField scalar_part;
};

WeylDecomposition weyl_decompose(const TensorField& R_frame,
                                 const Eigen::MatrixXd& ric_frame, double scal);

/// Contraction of a curvature-type tensor against a symmetric 2-tensor:
/// out(y,z) = sum_{a,b} S(a,b) T(y,a,b,z)  (frame components).
Eigen::MatrixXd contract_curvature_sym(const TensorField& T_frame,
                                       const Eigen::MatrixXd& S);

}  // namespace solgeo
