#pragma once

#include "hsd/certificate.hpp"
#include "hsd/jordan.hpp"

#include <cstdint>

namespace hsd {

/// Jordan identity, commutativity and the unit law over random pairs.
ConeCertificate check_jordan_axioms(const Algebra& A, int samples, std::uint64_t seed,
                                    double tol = kDefaultTol);

/// Sums of squares are zero only when every term is: tr(a^2 + b^2) = |a|^2 + |b|^2
/// and the sum keeps a norm proportional to that mass.
ConeCertificate check_formal_reality(const Algebra& A, int samples, std::uint64_t seed);

/// Spectral decompositions reconstruct their element and yield orthogonal idempotents.
ConeCertificate check_spectral(const Algebra& A, int samples, std::uint64_t seed,
                               double tol = kDefaultTol);

/// Random frames have rank-many primitive, pairwise orthogonal idempotents summing to u.
ConeCertificate check_frames(const Algebra& A, int samples, std::uint64_t seed,
                             double tol = kDefaultTol);

}  // namespace hsd
