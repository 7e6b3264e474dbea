#pragma once

#include "hsd/algebra.hpp"
#include "hsd/matrix_rep.hpp"

#include <Eigen/Core>

#include <vector>

namespace hsd::detail {

/// Ascending eigenvalues with their (merged) spectral projections.
struct RawSpectrum {
  std::vector<double> values;
  std::vector<Eigen::VectorXd> projections;
};

class AlgebraImpl {
 public:
  AlgebraImpl(Family family, int size, int dim, int rank);
  virtual ~AlgebraImpl() = default;

  Family family;
  int size;
  int dim;
  int rank;
  std::vector<Algebra> summands;
  Eigen::VectorXd metric;

  virtual Eigen::VectorXd product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const = 0;
  virtual Eigen::VectorXd unit() const = 0;
  virtual RawSpectrum spectrum(const Eigen::VectorXd& a, double merge_tol) const;
  virtual std::vector<Eigen::VectorXd> canonical_frame() const = 0;
};

/// Spectral decomposition through the minimal polynomial of `a` (Jordan powers,
/// companion-matrix roots, Lagrange idempotents). Works in every family.
RawSpectrum minimal_polynomial_spectrum(const AlgebraImpl& algebra, const Eigen::VectorXd& a,
                                        double merge_tol);

/// Groups ascending eigenvalues closer than merge_tol; returns group boundaries.
std::vector<std::pair<int, int>> group_eigenvalues(const Eigen::VectorXd& ascending,
                                                   double merge_tol);

std::shared_ptr<const AlgebraImpl> make_real_sym(int n);
std::shared_ptr<const AlgebraImpl> make_complex_herm(int n);
std::shared_ptr<const AlgebraImpl> make_quat_herm(int n);
std::shared_ptr<const AlgebraImpl> make_spin_factor(int n);
std::shared_ptr<const AlgebraImpl> make_albert();
std::shared_ptr<const AlgebraImpl> make_direct_sum(const std::vector<Algebra>& parts);

inline int pair_count(int n) { return n * (n - 1) / 2; }

}  // namespace hsd::detail

namespace hsd::detail {

// Raw coordinate <-> matrix conversions used by the family tables.
Eigen::MatrixXcd herm_from_coords(int n, bool complex, const Eigen::VectorXd& x);
Eigen::VectorXd coords_from_herm(int n, bool complex, const Eigen::MatrixXcd& m);
QuatMatrix quat_from_coords(int n, const Eigen::VectorXd& x);
Eigen::VectorXd coords_from_quat(const QuatMatrix& m);
OctoMatrix octo_from_coords(const Eigen::VectorXd& x);
Eigen::VectorXd coords_from_octo(const OctoMatrix& m);

}  // namespace hsd::detail
