#pragma once

#include <Eigen/Core>

namespace hsd {

/// exp(X) by scaling and squaring with a fixed-order [6/6] Pade approximant.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& x);

/// Number of singular values at or above rel_tol * sigma_max.
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol);

/// Orthonormal basis (columns) of the numerical column space of m.
Eigen::MatrixXd orthonormal_column_basis(const Eigen::MatrixXd& m, double rel_tol);

/// sigma_max / sigma_min; infinity for rank-deficient or non-square input.
double condition_number(const Eigen::MatrixXd& m);

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace hsd
