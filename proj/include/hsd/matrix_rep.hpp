#pragma once

#include "hsd/algebra.hpp"
#include "hsd/hypercomplex.hpp"

#include <Eigen/Core>

#include <vector>

namespace hsd {

using Quat = Quaternion<double>;
using Octo = Octonion<double>;

/// Square matrix with quaternion entries, row-major.
struct QuatMatrix {
  int n = 0;
  std::vector<Quat> entries;

  explicit QuatMatrix(int side = 0) : n(side), entries(static_cast<std::size_t>(side * side)) {}

  Quat& operator()(int i, int j) { return entries[static_cast<std::size_t>(i * n + j)]; }
  const Quat& operator()(int i, int j) const { return entries[static_cast<std::size_t>(i * n + j)]; }

  QuatMatrix adjoint() const;

  friend QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b);
  friend QuatMatrix operator+(const QuatMatrix& a, const QuatMatrix& b);
  friend QuatMatrix operator*(double s, const QuatMatrix& a);
};

/// 3x3 octonionic matrix, row-major.
struct OctoMatrix {
  std::array<Octo, 9> entries{};

  Octo& operator()(int i, int j) { return entries[static_cast<std::size_t>(3 * i + j)]; }
  const Octo& operator()(int i, int j) const { return entries[static_cast<std::size_t>(3 * i + j)]; }

  friend OctoMatrix operator*(const OctoMatrix& a, const OctoMatrix& b);
};

// Coordinate layout shared by the matrix families: the n diagonal entries first,
// then, for each pair i < j in row-major order, the real components of the
// off-diagonal entry scaled by 1/sqrt(2) (1 component for real, 2 for complex,
// 4 for quaternionic, 8 for the Albert algebra).

/// RealSym or ComplexHerm element as a hermitian complex matrix.
Eigen::MatrixXcd to_complex_matrix(const Element& x);
/// Hermitian part of `m` expressed in canonical coordinates of a RealSym/ComplexHerm algebra.
Element from_complex_matrix(const Algebra& a, const Eigen::MatrixXcd& m);

QuatMatrix to_quat_matrix(const Element& x);
/// Hermitian part of `m` in QuatHerm canonical coordinates.
Element from_quat_matrix(const Algebra& a, const QuatMatrix& m);

/// Complex 2n x 2n image of a quaternionic matrix: q = z + w j -> [[z, w], [-conj(w), conj(z)]].
Eigen::MatrixXcd complex_embedding(const QuatMatrix& m);
/// Inverse of complex_embedding on matrices of quaternionic form.
QuatMatrix from_complex_embedding(const Eigen::MatrixXcd& m);

OctoMatrix to_octo_matrix(const Element& x);
Element from_octo_matrix(const Algebra& a, const OctoMatrix& m);

}  // namespace hsd
