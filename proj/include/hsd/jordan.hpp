#pragma once

#include "hsd/algebra.hpp"
#include "hsd/random.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace hsd {

inline constexpr double kDefaultTol = 1e-9;

Element jordan_product(const Algebra& A, const Element& a, const Element& b);
Element jordan_square(const Algebra& A, const Element& a);

/// Matrix of b -> a o b in canonical coordinates.
LinearOperator left_mult_operator(const Algebra& A, const Element& a);

/// P(a) = 2 L_a^2 - L_{a^2}.
LinearOperator quadratic_representation(const Algebra& A, const Element& a);

/// Trace inner product <a, b> = tr(a o b).
double trace_form(const Algebra& A, const Element& a, const Element& b);
double trace(const Algebra& A, const Element& a);
double norm(const Algebra& A, const Element& a);

/// Adjoint of an operator with respect to the trace form.
LinearOperator trace_adjoint(const Algebra& A, const LinearOperator& op);

struct SpectralPair {
  double eigenvalue;
  Element idempotent;
};

/// a = sum_i eigenvalue_i * idempotent_i, eigenvalues ascending and distinct.
///
/// Eigenvalues closer than the merge tolerance are merged; `degenerate` is set
/// when a returned idempotent is not primitive (trace above one).
struct SpectralDecomposition {
  std::vector<SpectralPair> pairs;
  bool degenerate = false;

  double min_eigenvalue() const { return pairs.front().eigenvalue; }
  double max_eigenvalue() const { return pairs.back().eigenvalue; }
  Element reconstruct() const;
};

double default_merge_tol(const Algebra& A, const Element& a);

SpectralDecomposition spectral_decompose(const Algebra& A, const Element& a);
SpectralDecomposition spectral_decompose(const Algebra& A, const Element& a, double merge_tol);
/// Minimal-polynomial route (Jordan powers and Lagrange idempotents), valid in every family.
SpectralDecomposition spectral_decompose_generic(const Algebra& A, const Element& a);

double min_eigenvalue(const Algebra& A, const Element& a);
double max_eigenvalue(const Algebra& A, const Element& a);

/// f applied through the spectral decomposition, sum_i f(l_i) e_i.
Element spectral_function(const Algebra& A, const Element& a, const std::function<double(double)>& f);
Element jordan_sqrt(const Algebra& A, const Element& a);
Element jordan_inverse(const Algebra& A, const Element& a);

bool is_idempotent(const Algebra& A, const Element& p, double tol = kDefaultTol);
bool is_primitive(const Algebra& A, const Element& p, double tol = kDefaultTol);

/// Standard-normal coordinates.
Element random_element(const Algebra& A, Rng& rng);
/// a^2 for a random a.
Element random_square(const Algebra& A, Rng& rng);
/// sum_i exp(g_i) e_i over a random frame; well inside the cone interior.
Element random_interior_point(const Algebra& A, Rng& rng);
Element random_primitive_idempotent(const Algebra& A, Rng& rng);

/// Rank-many pairwise orthogonal primitive idempotents summing to u, obtained
/// from a random element with a well separated spectrum (at most 20 draws).
std::vector<Element> random_jordan_frame(const Algebra& A, Rng& rng);
std::vector<Element> random_jordan_frame(const Algebra& A, std::uint64_t seed);

/// The frame of diagonal units (matrix families, Albert) or (1, +-e_1)/2 (spin factors).
std::vector<Element> canonical_frame(const Algebra& A);

/// |a^2 o (a o b) - a o (a^2 o b)| / (1 + |a|^3 |b|).
double check_jordan_identity(const Algebra& A, const Element& a, const Element& b);

/// Quantitative form of a^2 + b^2 = 0 => a = b = 0: tr(a^2 + b^2) = <a,a> + <b,b>
/// and |a^2 + b^2| >= (|a|^2 + |b|^2) / (2 sqrt(rank)).
bool check_formal_reality(const Algebra& A, const Element& a, const Element& b);

}  // namespace hsd
