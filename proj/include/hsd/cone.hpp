#pragma once

#include "hsd/certificate.hpp"
#include "hsd/jordan.hpp"

#include <cstdint>
#include <optional>

namespace hsd {

/// Cone of squares membership: min eigenvalue >= -tol.
bool cone_contains(const Algebra& A, const Element& a, double tol = kDefaultTol);

/// Primitive idempotent e with <a, e> < -tol, if the search finds one.
///
/// Pairs `a` against every idempotent of `frame_count` random Jordan frames and
/// then refines the best candidate by the power iteration e <- P(c u - a) e / tr(...),
/// which moves along extreme rays toward the smallest pairing. Never consults the
/// spectral decomposition of `a`.
std::optional<Element> dual_cone_witness(const Algebra& A, const Element& a, int frame_count,
                                         std::uint64_t seed, double tol = kDefaultTol);

/// Sampled dual-cone membership: <a, e> >= -tol on all sampled extreme rays.
bool dual_cone_contains(const Algebra& A, const Element& a, int frame_count, std::uint64_t seed,
                        double tol = kDefaultTol);

ConeCertificate check_self_duality(const Algebra& A, int samples, std::uint64_t seed,
                                   double tol = kDefaultTol);

/// Self-duality of the linear image T(E_+) under the trace form of A.
ConeCertificate check_self_duality_of_image(const Algebra& A, const LinearOperator& T, int samples,
                                            std::uint64_t seed, double tol = kDefaultTol);

/// Spectral and sampled-dual membership verdicts agree on random elements.
ConeCertificate check_dual_agreement(const Algebra& A, int samples, std::uint64_t seed,
                                     int frame_count = 8, double tol = kDefaultTol);

/// min eigenvalue > 1e-8 (1 + |w|).
bool is_interior(const Algebra& A, const Element& w);

/// g = P(w^{1/2}), the order-automorphism with g u = w. Throws std::domain_error off the interior.
LinearOperator automorphism_to_point(const Algebra& A, const Element& w);
/// P(w^{-1/2}), the inverse of automorphism_to_point(A, w).
LinearOperator inverse_automorphism_to_point(const Algebra& A, const Element& w);

/// Trace-metric adjoint.
LinearOperator adjoint(const Algebra& A, const LinearOperator& g);

/// g maps sampled cone elements (random squares and primitive idempotents) into the cone.
ConeCertificate check_cone_preserving(const Algebra& A, const LinearOperator& g,
                                      const std::string& name, int samples, std::uint64_t seed,
                                      double tol = kDefaultTol);

/// The adjoint of an order-automorphism is again cone preserving.
ConeCertificate check_adjoint_automorphism(const Algebra& A, const LinearOperator& g, int samples,
                                           std::uint64_t seed, double tol = kDefaultTol);

/// 0 <= a <= u.
bool effect_interval_check(const Algebra& A, const Element& a, double tol = kDefaultTol);

/// |P(w^{1/2}) u - w| over random interior w (absolute tolerance, default 1e-8).
ConeCertificate check_homogeneity_transport(const Algebra& A, int samples, std::uint64_t seed,
                                            double tol = 1e-8);
/// P(w^{1/2}) and its inverse preserve the cone, over `points` interior w and
/// `samples` cone elements each.
ConeCertificate check_homogeneity_preservation(const Algebra& A, int points, int samples,
                                               std::uint64_t seed, double tol = kDefaultTol);

/// Products P(w2^{1/2}) P(w1^{1/2}) stay cone preserving.
ConeCertificate check_automorphism_closure(const Algebra& A, int samples, std::uint64_t seed,
                                           double tol = kDefaultTol);

/// Adjoints of random products of P-maps preserve the cone.
ConeCertificate check_adjoint_of_products(const Algebra& A, int samples, std::uint64_t seed,
                                          double tol = kDefaultTol);

/// For cone elements a, t a <= u with t = 1 / max eigenvalue.
ConeCertificate check_order_unit(const Algebra& A, int samples, std::uint64_t seed,
                                 double tol = kDefaultTol);

}  // namespace hsd
