#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsd/composite.hpp"
#include "oracles.hpp"

#include <Eigen/Dense>

using namespace hsd;

namespace {

ProbModel model_of(Family f, int n, std::uint64_t seed = 1, int count = 6) {
  return make_model(make_algebra(f, n), count, seed);
}

CompositeSystem pair_of(Family f, int m, int n) { return candidate_composite(model_of(f, m, 1), model_of(f, n, 2)); }

}  // namespace

TEST_CASE("candidate carriers and embedding ranks") {
  const CompositeSystem qubits = pair_of(Family::ComplexHerm, 2, 2);
  CHECK(qubits.carrier == make_algebra(Family::ComplexHerm, 4));
  CHECK(qubits.embed_rank == 16);
  CHECK(qubits.locally_tomographic);

  const CompositeSystem rebits = pair_of(Family::RealSym, 2, 2);
  CHECK(rebits.carrier.dim() == 10);
  CHECK(rebits.embed_rank == 9);
  CHECK_FALSE(rebits.locally_tomographic);

  const CompositeSystem quabits = pair_of(Family::QuatHerm, 2, 2);
  CHECK(quabits.carrier.dim() == 28);
  CHECK(quabits.embed.cols() == 36);
  CHECK(quabits.embed_rank <= 28);
  CHECK_FALSE(quabits.locally_tomographic);

  const CompositeSystem mixed = pair_of(Family::ComplexHerm, 2, 3);
  CHECK(mixed.carrier == make_algebra(Family::ComplexHerm, 6));
  CHECK(mixed.locally_tomographic);

  const ProbModel trivial = model_of(Family::RealSym, 1);
  for (const auto& B : {model_of(Family::ComplexHerm, 2), model_of(Family::SpinFactor, 3), model_of(Family::Albert, 0)}) {
    const CompositeSystem left = candidate_composite(trivial, B);
    CHECK(left.carrier == B.algebra);
    CHECK(left.embed.isApprox(Eigen::MatrixXd::Identity(B.algebra.dim(), B.algebra.dim())));
    CHECK(left.locally_tomographic);
    CHECK(candidate_composite(B, trivial).carrier == B.algebra);
  }

  CHECK_THROWS_AS(candidate_composite(model_of(Family::SpinFactor, 3), model_of(Family::SpinFactor, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(candidate_composite(model_of(Family::RealSym, 2), model_of(Family::ComplexHerm, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(candidate_composite(model_of(Family::Albert, 0), model_of(Family::Albert, 0)), std::invalid_argument);
}

TEST_CASE("embedding is the matrix Kronecker product") {
  for (const auto& [f, per_pair] : {std::pair{Family::RealSym, 1}, std::pair{Family::ComplexHerm, 2}}) {
    const CompositeSystem c = pair_of(f, 2, 3);
    Rng rng = make_rng(3);
    for (int t = 0; t < 20; ++t) {
      const Element a = random_element(c.partA.algebra, rng);
      const Element b = random_element(c.partB.algebra, rng);
      const Eigen::MatrixXcd expected =
          oracle::kron(oracle::hermitian(2, per_pair, a.coords), oracle::hermitian(3, per_pair, b.coords));
      CHECK((oracle::hermitian(6, per_pair, c.tensor(a, b).coords) - expected).norm() < 1e-12);
    }
  }
  const CompositeSystem q = pair_of(Family::QuatHerm, 2, 2);
  CHECK((q.tensor(unit(q.partA.algebra), unit(q.partB.algebra)).coords - unit(q.carrier).coords).norm() < 1e-12);
}

TEST_CASE("local tomography audit") {
  const ConeCertificate complex_audit = local_tomography_audit(pair_of(Family::ComplexHerm, 2, 2));
  CHECK(complex_audit.passed);
  CHECK(complex_audit.notes[0] == "dim A = 4, dim B = 4, dim AB = 16, embed rank = 16");
  const ConeCertificate real_audit = local_tomography_audit(pair_of(Family::RealSym, 2, 2));
  CHECK_FALSE(real_audit.passed);
  CHECK(real_audit.notes[0].find("dim AB = 10") != std::string::npos);
  CHECK_FALSE(local_tomography_audit(pair_of(Family::QuatHerm, 2, 2)).passed);
}

TEST_CASE("product states and effects") {
  const CompositeSystem c = pair_of(Family::ComplexHerm, 2, 3);
  const State uniform = product_state(c, uniform_state(c.partA), uniform_state(c.partB));
  CHECK((uniform.representer.coords - unit(c.carrier).coords / 6.0).norm() < 1e-12);
  for (const auto& x : c.partA.outcome_pool)
    for (const auto& y : c.partB.outcome_pool)
      CHECK(uniform.probability(product_effect(c, x, y)) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  const Element e = c.partA.tests[1][0];
  const Element f = c.partB.tests[2][1];
  const State pure = product_state(c, pure_state_of(c.partA, e), pure_state_of(c.partB, f));
  CHECK(pure.probability(product_effect(c, e, f)) == doctest::Approx(1.0));
  CHECK(is_primitive(c.carrier, pure.representer));

  CHECK(check_product_tests(c).passed);
  CHECK(check_product_states(c, 200, 4).passed);
  CHECK(check_product_states(pair_of(Family::RealSym, 2, 2), 200, 4).passed);
  CHECK_THROWS_AS(product_state(c, uniform_state(c.partB), uniform_state(c.partA)), std::invalid_argument);

  const ProbModel trivial = model_of(Family::RealSym, 1);
  const CompositeSystem copy = candidate_composite(c.partA, trivial);
  const State alpha = pure_state_of(c.partA, e);
  CHECK(product_state(copy, alpha, uniform_state(trivial)).representer.coords.isApprox(alpha.representer.coords));
}

TEST_CASE("non-signaling") {
  const CompositeSystem c = pair_of(Family::ComplexHerm, 2, 2);
  const State product = product_state(c, uniform_state(c.partA), pure_state_of(c.partB, c.partB.tests[0][0]));
  CHECK(nonsignaling_check(c, product).passed);

  const State bell = maximally_entangled_state(c);
  CHECK(is_primitive(c.carrier, bell.representer));
  const Eigen::MatrixXcd rho = oracle::hermitian(4, 2, bell.representer.coords);
  CHECK((oracle::partial_trace_second(rho, 2, 2) - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
  CHECK((oracle::partial_trace_first(rho, 2, 2) - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
  CHECK(nonsignaling_check(c, bell).passed);
  for (const auto& x : c.partA.outcome_pool) {
    double marginal = 0.0;
    for (const auto& y : c.partB.tests[3]) marginal += bell.probability(c.tensor(x, y));
    CHECK(marginal == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK_THROWS_AS(maximally_entangled_state(pair_of(Family::ComplexHerm, 2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(maximally_entangled_state(pair_of(Family::QuatHerm, 2, 2)), std::invalid_argument);

  State corrupt = bell;
  corrupt.representer.coords(0) -= 1.0;
  corrupt.representer.coords(5) += 1.0;
  CHECK_THROWS_AS(nonsignaling_check(c, corrupt), std::invalid_argument);

  const CompositeSystem wide = candidate_composite(model_of(Family::ComplexHerm, 2, 1, 12), model_of(Family::ComplexHerm, 2, 2, 12));
  const ConeCertificate sampled = nonsignaling_sampled(wide, 100, 9);
  CHECK(sampled.passed);
  CHECK(sampled.samples >= 100);
  CHECK(nonsignaling_sampled(pair_of(Family::RealSym, 2, 2), 100, 9).passed);
  CHECK(nonsignaling_check(pair_of(Family::RealSym, 2, 2), maximally_entangled_state(pair_of(Family::RealSym, 2, 2))).passed);
}

TEST_CASE("trace form factorization") {
  CHECK(factorization_check(pair_of(Family::ComplexHerm, 2, 2), 500, 1).passed);
  CHECK(factorization_check(pair_of(Family::ComplexHerm, 2, 3), 500, 1).passed);
  CHECK(factorization_check(pair_of(Family::RealSym, 2, 2), 500, 1).passed);
  CHECK(factorization_check(pair_of(Family::RealSym, 3, 2), 500, 1).passed);

  const CompositeSystem c = pair_of(Family::ComplexHerm, 2, 2);
  Rng rng = make_rng(2);
  const Element cA = random_element(c.partA.algebra, rng);
  const Element dB = random_element(c.partB.algebra, rng);
  CHECK(trace_form(c.carrier, c.tensor(unit(c.partA.algebra), unit(c.partB.algebra)), c.tensor(cA, dB)) ==
        doctest::Approx(trace(c.partA.algebra, cA) * trace(c.partB.algebra, dB)).epsilon(1e-12));
}

TEST_CASE("tensor adjoint") {
  const ConeCertificate complex_cert = tensor_adjoint_check(pair_of(Family::ComplexHerm, 2, 2), 100, 5, 1e-9);
  CHECK(complex_cert.passed);
  CHECK_FALSE(complex_cert.skipped);
  CHECK(tensor_adjoint_check(pair_of(Family::ComplexHerm, 2, 3), 20, 5, 1e-9).passed);
  CHECK(tensor_adjoint_check(pair_of(Family::RealSym, 2, 2), 20, 5).skipped);
  CHECK(tensor_adjoint_check(pair_of(Family::QuatHerm, 2, 2), 20, 5).skipped);
}

TEST_CASE("left multiplication by a (x) u") {
  CHECK(tensor_Lmap_check(pair_of(Family::ComplexHerm, 2, 2), 50, 6, 1e-9).passed);
  const ConeCertificate real_cert = tensor_Lmap_check(pair_of(Family::RealSym, 2, 2), 50, 6, 1e-9);
  CHECK(real_cert.passed);
  REQUIRE(real_cert.notes.size() == 1);

  // oracle: the carrier product is the anticommutator of Kronecker products
  const CompositeSystem c = pair_of(Family::ComplexHerm, 2, 2);
  Rng rng = make_rng(7);
  const Element a = random_element(c.partA.algebra, rng);
  const Element b = random_element(c.partA.algebra, rng);
  const Element v = random_element(c.partB.algebra, rng);
  const Eigen::MatrixXcd A = oracle::hermitian(2, 2, a.coords), B = oracle::hermitian(2, 2, b.coords);
  const Eigen::MatrixXcd V = oracle::hermitian(2, 2, v.coords), I = Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::MatrixXcd expected = oracle::kron(oracle::anticommutator(A, B), V);
  const Element got = jordan_product(c.carrier, c.tensor(a, unit(c.partB.algebra)), c.tensor(b, v));
  CHECK((oracle::hermitian(4, 2, got.coords) - expected).norm() < 1e-12);
  CHECK((oracle::anticommutator(oracle::kron(A, I), oracle::kron(B, V)) - expected).norm() < 1e-12);
}

TEST_CASE("Hanche-Olsen condition") {
  CHECK(hanche_olsen_check(pair_of(Family::ComplexHerm, 2, 2), 200, 8, 1e-9).passed);
  CHECK(hanche_olsen_check(pair_of(Family::ComplexHerm, 3, 2), 200, 8, 1e-9).passed);
  CHECK(hanche_olsen_check(pair_of(Family::RealSym, 2, 2), 200, 8, 1e-9).passed);

  const CompositeSystem c = pair_of(Family::RealSym, 2, 2);
  const Element uA = unit(c.partA.algebra), uB = unit(c.partB.algebra);
  Rng rng = make_rng(8);
  const Element b = random_element(c.partA.algebra, rng);
  CHECK((jordan_product(c.carrier, c.tensor(uA, uB), c.tensor(b, uB)).coords - c.tensor(b, uB).coords).norm() < 1e-12);
}

TEST_CASE("only the complex candidate passes every audit") {
  for (Family f : {Family::RealSym, Family::ComplexHerm, Family::QuatHerm}) {
    CAPTURE(to_string(f));
    const CompositeSystem c = pair_of(f, 2, 2);
    const bool all = local_tomography_audit(c).passed && factorization_check(c, 200, 1).passed &&
                     hanche_olsen_check(c, 200, 1).passed;
    CHECK(all == (f == Family::ComplexHerm));
  }
}

TEST_CASE("qubit witness") {
  CHECK(qubit_witness({model_of(Family::ComplexHerm, 2)}));
  CHECK_FALSE(qubit_witness({model_of(Family::RealSym, 3)}));
  CHECK_FALSE(qubit_witness({model_of(Family::ComplexHerm, 3), model_of(Family::SpinFactor, 4)}));
  CHECK(qubit_witness({model_of(Family::RealSym, 2), model_of(Family::SpinFactor, 3)}));
  CHECK(spin_qubit_isomorphism(200, 3).passed);

  // oracle: (t, x) -> t I + x . sigma
  const LinearOperator phi = spin_to_qubit_map();
  const Eigen::Vector4d tx(0.3, -1.0, 2.0, 0.5);
  const Eigen::MatrixXcd expected = 0.3 * Eigen::MatrixXcd::Identity(2, 2) - 1.0 * oracle::sigma_x() +
                                    2.0 * oracle::sigma_y() + 0.5 * oracle::sigma_z();
  CHECK((oracle::hermitian(2, 2, phi * tx) - expected).norm() < 1e-12);
}
