#pragma once

#include "hsd/certificate.hpp"
#include "hsd/jordan.hpp"

#include <cstdint>
#include <vector>

namespace hsd {

/// A test: outcomes summing to the unit.
using Test = std::vector<Element>;

/// Test space of Jordan frames over an algebra.
///
/// `outcome_pool` is the union of all tests with duplicates (within 1e-9)
/// removed, in first-seen order.
struct ProbModel {
  Algebra algebra;
  std::vector<Test> tests;
  std::vector<Element> outcome_pool;
  Element unit;

  int pool_span_rank() const;
};

/// Canonical frame followed by `count - 1` random frames. Throws std::invalid_argument for count < 1.
ProbModel make_model(const Algebra& A, int count, std::uint64_t seed);

/// Model over explicit tests. Each test must sum to u and contain only effects.
ProbModel make_model(const Algebra& A, std::vector<Test> tests, double tol = kDefaultTol);

/// Normalized positive functional a -> <representer, a>.
struct State {
  Algebra algebra;
  Element representer;

  double probability(const Element& outcome) const;
};

/// Validates cone membership and <w, u> = 1. Throws std::invalid_argument.
State make_state(const Algebra& A, const Element& representer, double tol = kDefaultTol);

State uniform_state(const ProbModel& model);

/// State with representer e. Throws std::invalid_argument unless e is primitive.
State pure_state_of(const ProbModel& model, const Element& e, double tol = kDefaultTol);

/// Outcome probabilities of one test.
Eigen::VectorXd evaluate(const State& state, const Test& test);

/// Every test sums to u and every outcome is an effect.
ConeCertificate check_test_normalization(const ProbModel& model, double tol = kDefaultTol);

/// The outcome pool spans E.
ConeCertificate check_outcome_span(const ProbModel& model);

/// The uniform state takes the value 1/|E| on every outcome of every test E.
ConeCertificate check_uniform(const ProbModel& model, double tol = kDefaultTol);

/// Probabilities of a state are in [0, 1] and sum to one on every test.
ConeCertificate check_state(const ProbModel& model, const State& state, double tol = 1e-10);

/// alpha_e(e) = 1 and 0 <= alpha_e(f) <= 1 on sampled primitive idempotents f.
ConeCertificate check_pure_state(const ProbModel& model, const Element& e, int samples,
                                 std::uint64_t seed, double tol = kDefaultTol);

/// Every pooled outcome reaches probability one in some state, and for
/// primitive outcomes that state is unique: states with alpha(x) = 1 - d lie
/// within sqrt(2 d) of x. Unital non-primitive outcomes are noted as not
/// certifiable here rather than failed.
ConeCertificate certify_unital_sharp(const ProbModel& model, int samples, std::uint64_t seed,
                                     double tol = kDefaultTol);

/// Unital outcomes are primitive idempotents, over the pool and `samples`
/// further random frames. Non-unital outcomes are counted in a note and are not
/// counterexamples. Skipped when the model is not uniform.
ConeCertificate check_unital_primitive(const ProbModel& model, int samples, std::uint64_t seed,
                             double tol = kDefaultTol);

/// g u = u exactly when g is trace-orthogonal, over exponentials of derivations,
/// maps P(w^{1/2}) with tr w = rank, and their products.
ConeCertificate check_unit_stabilizer(const Algebra& A, int samples, std::uint64_t seed,
                                      double tol = 1e-8);

}  // namespace hsd
