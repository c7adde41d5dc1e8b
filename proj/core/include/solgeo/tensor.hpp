/// @file tensor.hpp
/// @brief Dense little tensors attached to a point of a chart.
///
/// Components are stored row-major over slots; dimensions here are tiny
/// (n <= 6, rank <= 5), so a flat std::vector plus computed strides is both
/// simple and fast.  Valence is carried for interface clarity; the numeric
/// kernels mostly work with fully covariant components plus the metric.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace solgeo {

struct Valence {
  int covariant = 0;
  int contravariant = 0;
  int rank() const { return covariant + contravariant; }
};

class TensorField {
public:
  TensorField() = default;
  TensorField(int dim, Valence valence);

  int dim() const { return dim_; }
  int rank() const { return valence_.rank(); }
  const Valence& valence() const { return valence_; }

  const Eigen::VectorXd& base_point() const { return base_point_; }
  void set_base_point(const Eigen::VectorXd& x) { base_point_ = x; }

  double& operator()(std::initializer_list<int> idx) { return data_[offset(idx)]; }
  double operator()(std::initializer_list<int> idx) const { return data_[offset(idx)]; }

  // Variadic accessors: T(i,j,k) etc.  The pack length must equal rank().
  template <class... I>
  double& operator()(I... idx) { return data_[offset({static_cast<int>(idx)...})]; }
  template <class... I>
  double operator()(I... idx) const { return data_[offset({static_cast<int>(idx)...})]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double max_abs() const;
  double frobenius() const;  // plain euclidean norm of the component array

  TensorField& operator+=(const TensorField& other);
  TensorField& operator-=(const TensorField& other);
  TensorField& operator*=(double c);

private:
  std::size_t offset(std::initializer_list<int> idx) const;

  int dim_ = 0;
  Valence valence_{};
  std::vector<double> data_;
  Eigen::VectorXd base_point_;
};

TensorField operator+(TensorField a, const TensorField& b);
TensorField operator-(TensorField a, const TensorField& b);
TensorField operator*(double c, TensorField a);

/// Matrix <-> rank-2 tensor conversions (the geometry kernels use Eigen for
/// anything that sees linear algebra, TensorField for rank >= 3).
TensorField from_matrix(const Eigen::MatrixXd& m, Valence v);
Eigen::MatrixXd to_matrix(const TensorField& t);

/// Max |T(idx) - T(idx')| over the swap of two slots; used to assert declared
/// symmetries after construction.
double symmetry_defect(const TensorField& t, int slot_a, int slot_b, double sign);

}  // namespace solgeo
