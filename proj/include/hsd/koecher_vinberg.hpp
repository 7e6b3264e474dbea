#pragma once

#include "hsd/certificate.hpp"
#include "hsd/jordan.hpp"

#include <cstdint>
#include <vector>

namespace hsd {

/// Orthonormal bases (operator trace metric) of a Lie algebra of operators on E
/// and of its trace-symmetric and trace-skew parts.
struct LieAlgebraBasis {
  Algebra algebra;
  std::vector<LinearOperator> generators;  // spans g
  std::vector<LinearOperator> sym_part;    // p
  std::vector<LinearOperator> skew_part;   // k
  double tol = 1e-8;
  int rounds = 0;
  /// Distance of the symmetric/skew parts of g from g itself; 0 when g is self-adjoint.
  double split_residual = 0.0;

  int dim() const { return static_cast<int>(generators.size()); }
};

/// {L_b : b canonical basis} together with all commutators [L_a, L_b].
std::vector<LinearOperator> group_lie_generators(const Algebra& A);

/// Adjoins commutators until the numerical rank (singular values >= tol * sigma_max)
/// stops growing, then splits the result into symmetric and skew parts.
/// Throws std::runtime_error when the span exceeds dim(E)^2 or 10 rounds do not suffice.
LieAlgebraBasis lie_closure(const Algebra& A, const std::vector<LinearOperator>& generators,
                            double tol = 1e-8);

/// Matrix of X -> X u on p, columns indexed by sym_part.
struct PToEMap {
  LinearOperator matrix;
  double condition_number = 0.0;
  bool invertible = false;
  /// max |X u| over the skew basis.
  double skew_kernel_residual = 0.0;
};

PToEMap p_to_E_isomorphism(const LieAlgebraBasis& basis, double max_condition = 1e6);

struct ReconstructedProduct {
  Algebra algebra;
  /// product_table[i] is L_{b_i}; column j holds the coordinates of b_i o b_j.
  std::vector<LinearOperator> product_table;
  double max_deviation_from_native = 0.0;
  double commutativity_residual = 0.0;  // max |[L_x, L_y] u|
  double unit_residual = 0.0;           // max |L_x u - x|
  double jordan_residual = 0.0;         // sampled Jordan identity, reconstructed product
  double associativity_residual = 0.0;  // max |L_x - L_x^*|
  double condition_number = 0.0;

  Element product(const Element& a, const Element& b) const;
};

/// a o b = L_a b with L_a the unique element of p sending u to a.
/// Throws std::runtime_error when X -> X u is not invertible on p.
ReconstructedProduct reconstruct_product(const LieAlgebraBasis& basis, std::uint64_t seed = 0,
                                         int samples = 100);

/// Sampled structure checks on a closed Lie algebra:
/// "kv-k-kernel", "kv-p-bracket", "kv-exp-consistency".
std::vector<ConeCertificate> check_lie_structure(const LieAlgebraBasis& basis, int samples,
                                                 std::uint64_t seed, double tol = 1e-8);

/// Machine-readable summary of a full reconstruction run.
struct ReconstructionReport {
  int g_dim = 0;
  int p_dim = 0;
  int k_dim = 0;
  double condition_number = 0.0;
  std::vector<ConeCertificate> certificates;
};

/// Generators, closure, isomorphism, reconstruction and every check, as certificates.
ReconstructionReport run_koecher_vinberg(const Algebra& A, int samples, std::uint64_t seed,
                                         double deviation_tol = 1e-6);

}  // namespace hsd
