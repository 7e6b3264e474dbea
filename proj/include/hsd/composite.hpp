#pragma once

#include "hsd/certificate.hpp"
#include "hsd/prob_model.hpp"

#include <cstdint>
#include <vector>

namespace hsd {

/// Candidate composite of two models over a matrix-Kronecker carrier.
///
/// `embed` maps the coordinate tensor space (column index i * dimB + j for
/// basis_i (x) basis_j) into carrier coordinates.
struct CompositeSystem {
  ProbModel partA;
  ProbModel partB;
  Algebra carrier;
  LinearOperator embed;
  int embed_rank = 0;
  bool locally_tomographic = false;

  /// Carrier coordinates of a (x) b.
  Element tensor(const Element& a, const Element& b) const;
  /// Coordinates of a (x) b in the tensor space.
  Eigen::VectorXd tensor_coords(const Element& a, const Element& b) const;
};

/// Same-family Kronecker candidate: RealSym(m) x RealSym(n) -> RealSym(mn), likewise for
/// ComplexHerm; QuatHerm uses the hermitian part of the quaternionic Kronecker product.
/// A rank-one part (RealSym 1, ComplexHerm 1, QuatHerm 1) pairs with any supported family.
/// Throws std::invalid_argument for other pairs.
CompositeSystem candidate_composite(const ProbModel& A, const ProbModel& B);

/// dim carrier = dimA dimB and embed has that rank.
ConeCertificate local_tomography_audit(const CompositeSystem& c);

State product_state(const CompositeSystem& c, const State& alpha, const State& beta);
Element product_effect(const CompositeSystem& c, const Element& a, const Element& b);

/// Product frames E (x) F are tests of the carrier: they sum to u_AB and consist of effects.
ConeCertificate check_product_tests(const CompositeSystem& c, double tol = kDefaultTol);

/// (alpha (x) beta)(a (x) b) = alpha(a) beta(b) on sampled states and effects.
ConeCertificate check_product_states(const CompositeSystem& c, int samples, std::uint64_t seed,
                                     double tol = 1e-10);

/// Marginals of omega do not depend on the test summed over, for both parts.
/// Throws std::invalid_argument when omega is not a state of the carrier.
ConeCertificate nonsignaling_check(const CompositeSystem& c, const State& omega,
                                   double tol = kDefaultTol);

/// nonsignaling_check over `samples` random carrier states.
ConeCertificate nonsignaling_sampled(const CompositeSystem& c, int samples, std::uint64_t seed,
                                     double tol = kDefaultTol);

/// <a(x)b, c(x)d>_AB = <a,c>_A <b,d>_B on sampled quadruples.
ConeCertificate factorization_check(const CompositeSystem& c, int samples, std::uint64_t seed,
                                    double tol = 1e-10);

/// (g (x) 1)^dagger = g^dagger (x) 1 in the carrier metric, and g^dagger (x) 1 preserves the
/// carrier cone. Skipped unless the composite is locally tomographic.
ConeCertificate tensor_adjoint_check(const CompositeSystem& c, int samples, std::uint64_t seed,
                                     double tol = kDefaultTol);

/// L_{a (x) u} = L_a (x) 1 and L_{u (x) v} = 1 (x) L_v on the embedded tensor space.
ConeCertificate tensor_Lmap_check(const CompositeSystem& c, int samples, std::uint64_t seed,
                                  double tol = kDefaultTol);

/// (a (x) u) o (b (x) v) = (a o b) (x) v and (u (x) v) o (a (x) w) = a (x) (v o w) in the
/// carrier product.
ConeCertificate hanche_olsen_check(const CompositeSystem& c, int samples, std::uint64_t seed,
                                   double tol = kDefaultTol);

/// Rank-one projection onto sum_i e_i (x) e_i / sqrt(n); real or complex parts of equal size.
State maximally_entangled_state(const CompositeSystem& c);

/// Coordinate map (t, x) -> t I + x . sigma from the spin factor V3 to ComplexHerm 2.
LinearOperator spin_to_qubit_map();

/// The map above is a Jordan isomorphism: products, unit and trace agree.
ConeCertificate spin_qubit_isomorphism(int samples, std::uint64_t seed, double tol = 1e-9);

/// Some model is a qubit: ComplexHerm 2, or a spin factor V3 with a verified isomorphism.
bool qubit_witness(const std::vector<ProbModel>& theory);

}  // namespace hsd
