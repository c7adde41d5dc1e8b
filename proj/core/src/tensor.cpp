/// @file tensor.cpp
/// @brief TensorField storage and small utilities.

#include "solgeo/tensor.hpp"

#include <cmath>
#include <cstdlib>

#include "solgeo/errors.hpp"

namespace solgeo {

TensorField::TensorField(int dim, Valence valence) : dim_(dim), valence_(valence) {
  if (dim < 1) fail(ErrorKind::internal, "tensor dimension must be positive");
  std::size_t size = 1;
  for (int r = 0; r < valence.rank(); ++r) size *= static_cast<std::size_t>(dim);
  data_.assign(size, 0.0);
}

std::size_t TensorField::offset(std::initializer_list<int> idx) const {
  std::size_t off = 0;
  for (int i : idx) off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  return off;
}

double TensorField::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

double TensorField::frobenius() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

TensorField& TensorField::operator+=(const TensorField& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

TensorField& TensorField::operator-=(const TensorField& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

TensorField& TensorField::operator*=(double c) {
  for (double& x : data_) x *= c;
  return *this;
}

TensorField operator+(TensorField a, const TensorField& b) { a += b; return a; }
TensorField operator-(TensorField a, const TensorField& b) { a -= b; return a; }
TensorField operator*(double c, TensorField a) { a *= c; return a; }

TensorField from_matrix(const Eigen::MatrixXd& m, Valence v) {
  TensorField t(static_cast<int>(m.rows()), v);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
  return t;
}

Eigen::MatrixXd to_matrix(const TensorField& t) {
  Eigen::MatrixXd m(t.dim(), t.dim());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) m(i, j) = t(i, j);
  return m;
}

double symmetry_defect(const TensorField& t, int slot_a, int slot_b, double sign) {
  const int n = t.dim();
  const int r = t.rank();
  std::vector<int> idx(r, 0);
  double worst = 0.0;
  // odometer over all index tuples
  while (true) {
    std::vector<int> swapped = idx;
    std::swap(swapped[slot_a], swapped[slot_b]);
    std::size_t oa = 0, ob = 0;
    for (int s = 0; s < r; ++s) {
      oa = oa * n + idx[s];
      ob = ob * n + swapped[s];
    }
    worst = std::max(worst, std::abs(t.data()[oa] - sign * t.data()[ob]));
    int s = r - 1;
    for (; s >= 0; --s) {
      if (++idx[s] < n) break;
      idx[s] = 0;
    }
    if (s < 0) break;
  }
  return worst;
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_point: return "invalid-point";
    case ErrorKind::degenerate_metric: return "degenerate-metric";
    case ErrorKind::unsupported_dimension: return "unsupported-dimension";
    case ErrorKind::invalid_profile: return "invalid-profile";
    case ErrorKind::soliton_residual_failed: return "soliton-residual-failed";
    case ErrorKind::hypothesis_violated: return "hypothesis-violated";
    case ErrorKind::unknown_model: return "unknown-model";
    case ErrorKind::builder_error: return "builder-error";
    case ErrorKind::bad_manifest: return "bad-manifest";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

}  // namespace solgeo
