#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsd/algebra_checks.hpp"
#include "hsd/jordan.hpp"
#include "hsd/matrix_rep.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

using namespace hsd;

namespace {

std::vector<Algebra> property_algebras() {
  return {make_algebra(Family::RealSym, 1),    make_algebra(Family::RealSym, 3),
          make_algebra(Family::ComplexHerm, 2), make_algebra(Family::ComplexHerm, 3),
          make_algebra(Family::QuatHerm, 2),    make_algebra(Family::QuatHerm, 3),
          make_algebra(Family::SpinFactor, 1),  make_algebra(Family::SpinFactor, 4),
          make_algebra(Family::Albert),
          direct_sum(make_algebra(Family::ComplexHerm, 2), make_algebra(Family::SpinFactor, 3))};
}

Element complex_elem(const Algebra& A, const Eigen::MatrixXcd& m) {
  return Element(A, oracle::hermitian_coords(A.size(), 2, m));
}

}  // namespace

TEST_CASE("make_algebra dimensions and ranks") {
  CHECK(make_algebra(Family::ComplexHerm, 2).dim() == 4);
  CHECK(make_algebra(Family::ComplexHerm, 2).rank() == 2);
  CHECK(make_algebra(Family::RealSym, 1).dim() == 1);
  CHECK(make_algebra(Family::RealSym, 1).rank() == 1);
  CHECK(make_algebra(Family::QuatHerm, 2).dim() == 6);
  CHECK(make_algebra(Family::QuatHerm, 2).rank() == 2);
  for (int n = 1; n <= 5; ++n) {
    CHECK(make_algebra(Family::RealSym, n).dim() == n * (n + 1) / 2);
    CHECK(make_algebra(Family::ComplexHerm, n).dim() == n * n);
    CHECK(make_algebra(Family::QuatHerm, n).dim() == n * (2 * n - 1));
    CHECK(make_algebra(Family::SpinFactor, n).dim() == n + 1);
    CHECK(make_algebra(Family::SpinFactor, n).rank() == 2);
  }
  CHECK(make_algebra(Family::Albert).dim() == 27);
  CHECK(make_algebra(Family::Albert, 7).rank() == 3);
  CHECK_THROWS_AS(make_algebra(Family::RealSym, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_algebra(Family::DirectSum, 2), std::invalid_argument);
}

TEST_CASE("direct sums add dimensions and ranks") {
  const Algebra r1 = make_algebra(Family::RealSym, 1);
  const Algebra bit = direct_sum(r1, r1);
  CHECK(bit.dim() == 2);
  CHECK(bit.rank() == 2);
  const Algebra mixed = direct_sum(make_algebra(Family::ComplexHerm, 2), make_algebra(Family::SpinFactor, 3));
  CHECK(mixed.dim() == 8);
  CHECK(mixed.rank() == 4);
  CHECK_THROWS_AS(direct_sum(std::vector<Algebra>{}), std::invalid_argument);
  // products are blockwise
  const Element a(bit, Eigen::Vector2d(2.0, -3.0));
  const Element b(bit, Eigen::Vector2d(5.0, 7.0));
  CHECK(jordan_product(bit, a, b).coords.isApprox(Eigen::Vector2d(10.0, -21.0)));
}

TEST_CASE("descriptor text records round-trip") {
  for (const auto& A : property_algebras()) CHECK(parse_algebra(A.to_string()) == A);
  CHECK(parse_algebra(" sum( real 1 , sum(real 1, spin 2)) ").to_string() == "sum(real 1, real 1, spin 2)");
  CHECK(parse_algebra("albert 3") == make_algebra(Family::Albert));
  CHECK_THROWS_WITH_AS(parse_algebra("octonion 3"), doctest::Contains("octonion"), std::invalid_argument);
  CHECK_THROWS_AS(parse_algebra("real 0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_algebra("sum(real 1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_algebra("complex 2 x"), std::invalid_argument);
}

TEST_CASE("Pauli matrices anticommute under the Jordan product") {
  const Algebra A = make_algebra(Family::ComplexHerm, 2);
  const Element sx = complex_elem(A, oracle::sigma_x());
  const Element sy = complex_elem(A, oracle::sigma_y());
  CHECK(norm(A, jordan_product(A, sx, sy)) < 1e-15);
  CHECK(jordan_product(A, sx, sx).coords.isApprox(unit(A).coords));
}

TEST_CASE("spin factor product in closed form") {
  const Algebra V = make_algebra(Family::SpinFactor, 2);
  const Element a(V, Eigen::Vector3d(1, 1, 0));
  const Element b(V, Eigen::Vector3d(1, 0, 1));
  CHECK(jordan_product(V, a, b).coords.isApprox(Eigen::Vector3d(1, 1, 1)));
  // cross-check with the real Clifford representation t I + x1 sz + x2 sx
  auto clifford = [](const Eigen::VectorXd& v) {
    return Eigen::MatrixXcd(v(0) * Eigen::Matrix2cd::Identity() + v(1) * oracle::sigma_z() + v(2) * oracle::sigma_x());
  };
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Element x = random_element(V, rng), y = random_element(V, rng);
    const Eigen::MatrixXcd expected = oracle::anticommutator(clifford(x.coords), clifford(y.coords));
    CHECK((clifford(jordan_product(V, x, y).coords) - expected).norm() < 1e-12);
  }
}

TEST_CASE("element membership is enforced") {
  const Algebra A = make_algebra(Family::ComplexHerm, 2);
  const Algebra B = make_algebra(Family::SpinFactor, 3);
  CHECK_THROWS_AS(jordan_product(A, unit(A), unit(B)), std::invalid_argument);
  CHECK_THROWS_AS(trace_form(A, unit(B), unit(B)), std::invalid_argument);
  CHECK_THROWS_AS(Element(A, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("left multiplication operator") {
  const Algebra A = make_algebra(Family::ComplexHerm, 2);
  CHECK(left_mult_operator(A, unit(A)).isApprox(Eigen::MatrixXd::Identity(4, 4)));
  const LinearOperator L = left_mult_operator(A, complex_elem(A, oracle::sigma_z()));
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(L).eigenvalues();
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(ev(1) == doctest::Approx(0.0));
  CHECK(ev(2) == doctest::Approx(0.0));
  CHECK(ev(3) == doctest::Approx(1.0));

  for (const auto& B : property_algebras()) {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
      const Element a = random_element(B, rng), b = random_element(B, rng), c = random_element(B, rng);
      const LinearOperator La = left_mult_operator(B, a);
      CHECK((La * b.coords - jordan_product(B, a, b).coords).norm() < 1e-12 * (1 + norm(B, a) * norm(B, b)));
      // trace-metric symmetry
      const double lhs = trace_form(B, Element(B, La * b.coords), c);
      const double rhs = trace_form(B, b, Element(B, La * c.coords));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + norm(B, a) * norm(B, b) * norm(B, c)));
    }
  }
}

TEST_CASE("trace form") {
  for (const auto& A : property_algebras()) {
    CAPTURE(A.to_string());
    CHECK(trace_form(A, unit(A), unit(A)) == doctest::Approx(A.rank()));
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
      const Element e = random_primitive_idempotent(A, rng);
      CHECK(trace_form(A, e, e) == doctest::Approx(1.0).epsilon(1e-9));
      const Element a = random_square(A, rng), b = random_square(A, rng);
      CHECK(trace_form(A, a, b) >= -1e-10);
      // tr equals the sum of spectral eigenvalues with multiplicity
      const Element x = random_element(A, rng);
      double spectral_trace = 0.0;
      for (const auto& p : spectral_decompose(A, x).pairs) spectral_trace += p.eigenvalue * trace(A, p.idempotent);
      CHECK(trace(A, x) == doctest::Approx(spectral_trace).epsilon(1e-9));
      CHECK(trace_form(A, x, x) > 0.0);
    }
  }
}

TEST_CASE("spectral decomposition examples") {
  const Algebra A = make_algebra(Family::ComplexHerm, 2);
  {
    const auto s = spectral_decompose(A, unit(A));
    REQUIRE(s.pairs.size() == 1);
    CHECK(s.pairs[0].eigenvalue == doctest::Approx(1.0));
    CHECK(s.pairs[0].idempotent.coords.isApprox(unit(A).coords));
    CHECK(s.degenerate);
  }
  {
    const auto s = spectral_decompose(A, complex_elem(A, oracle::sigma_z()));
    REQUIRE(s.pairs.size() == 2);
    CHECK(s.pairs[0].eigenvalue == doctest::Approx(-1.0));
    CHECK(s.pairs[1].eigenvalue == doctest::Approx(1.0));
    Eigen::Matrix2cd lower = Eigen::Matrix2cd::Zero(), upper = Eigen::Matrix2cd::Zero();
    lower(1, 1) = 1.0;
    upper(0, 0) = 1.0;
    CHECK((s.pairs[0].idempotent.coords - complex_elem(A, lower).coords).norm() < 1e-12);
    CHECK((s.pairs[1].idempotent.coords - complex_elem(A, upper).coords).norm() < 1e-12);
    CHECK_FALSE(s.degenerate);
  }
  {
    const Algebra V = make_algebra(Family::SpinFactor, 3);
    const Element a(V, Eigen::Vector4d(0.5, 1.0, 2.0, 2.0));
    const auto s = spectral_decompose(V, a);
    REQUIRE(s.pairs.size() == 2);
    CHECK(s.pairs[0].eigenvalue == doctest::Approx(0.5 - 3.0));
    CHECK(s.pairs[1].eigenvalue == doctest::Approx(0.5 + 3.0));
    const Element plus(V, Eigen::Vector4d(0.5, 1.0 / 6, 2.0 / 6, 2.0 / 6));
    CHECK((s.pairs[1].idempotent.coords - plus.coords).norm() < 1e-12);
    for (const auto& p : s.pairs) CHECK(is_primitive(V, p.idempotent));
    CHECK((s.pairs[0].idempotent + s.pairs[1].idempotent).coords.isApprox(unit(V).coords));
  }
}

TEST_CASE("spectral reconstruction property") {
  for (const auto& A : property_algebras()) {
    CAPTURE(A.to_string());
    Rng rng(23);
    for (int t = 0; t < 100; ++t) {
      const Element a = random_element(A, rng);
      const auto s = spectral_decompose(A, a);
      CHECK(norm(A, a - s.reconstruct()) <= 1e-9 * (1 + norm(A, a)));
      Element sum = zero(A);
      for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        sum += s.pairs[i].idempotent;
        for (std::size_t j = 0; j < s.pairs.size(); ++j) {
          const Element prod = jordan_product(A, s.pairs[i].idempotent, s.pairs[j].idempotent);
          const Element expected = i == j ? s.pairs[i].idempotent : zero(A);
          CHECK(norm(A, prod - expected) < 1e-9);
        }
      }
      CHECK(norm(A, sum - unit(A)) < 1e-9);
    }
  }
}

TEST_CASE("minimal polynomial route agrees with direct eigendecomposition") {
  for (const auto& A : property_algebras()) {
    CAPTURE(A.to_string());
    Rng rng(29);
    for (int t = 0; t < 50; ++t) {
      const Element a = random_element(A, rng);
      const auto direct = spectral_decompose(A, a);
      const auto generic = spectral_decompose_generic(A, a);
      REQUIRE(direct.pairs.size() == generic.pairs.size());
      for (std::size_t i = 0; i < direct.pairs.size(); ++i) {
        CHECK(generic.pairs[i].eigenvalue == doctest::Approx(direct.pairs[i].eigenvalue).epsilon(1e-8));
        CHECK(norm(A, generic.pairs[i].idempotent - direct.pairs[i].idempotent) < 1e-7);
      }
    }
  }
}

TEST_CASE("idempotents and primitivity") {
  const Algebra r1 = make_algebra(Family::RealSym, 1);
  CHECK(is_primitive(r1, unit(r1)));
  const Algebra A = make_algebra(Family::ComplexHerm, 2);
  CHECK(is_idempotent(A, unit(A)));
  CHECK_FALSE(is_primitive(A, unit(A)));
  const Element p = (unit(A) + complex_elem(A, oracle::sigma_x())) * 0.5;
  CHECK(is_primitive(A, p));
  CHECK_FALSE(is_idempotent(A, p * 2.0));
}

TEST_CASE("random Jordan frames") {
  const Algebra r1 = make_algebra(Family::RealSym, 1);
  const auto trivial = random_jordan_frame(r1, 1);
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].coords.isApprox(unit(r1).coords));

  for (const auto& A : property_algebras()) {
    CAPTURE(A.to_string());
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto frame = random_jordan_frame(A, seed);
      REQUIRE(static_cast<int>(frame.size()) == A.rank());
      Element sum = zero(A);
      double total_trace = 0.0;
      for (std::size_t i = 0; i < frame.size(); ++i) {
        CHECK(is_primitive(A, frame[i]));
        sum += frame[i];
        total_trace += trace(A, frame[i]);
        for (std::size_t j = i + 1; j < frame.size(); ++j) {
          CHECK(norm(A, jordan_product(A, frame[i], frame[j])) < 1e-9);
          CHECK(std::abs(trace_form(A, frame[i], frame[j])) < 1e-9);
        }
      }
      CHECK(norm(A, sum - unit(A)) < 1e-9);
      CHECK(total_trace == doctest::Approx(A.rank()));
    }
  }
  // deterministic for a fixed seed
  const Algebra O = make_algebra(Family::Albert);
  CHECK(random_jordan_frame(O, 99)[0].coords == random_jordan_frame(O, 99)[0].coords);
}

TEST_CASE("Jordan identity, commutativity and unit law") {
  for (const auto& A : property_algebras()) {
    CAPTURE(A.to_string());
    Rng rng(31);
    CHECK(check_jordan_identity(A, unit(A), random_element(A, rng)) < 1e-15);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const Element a = random_element(A, rng), b = random_element(A, rng);
      worst = std::max(worst, check_jordan_identity(A, a, b));
      CHECK(norm(A, jordan_product(A, a, b) - jordan_product(A, b, a)) <=
            1e-12 * (1 + norm(A, a) * norm(A, b)));
      CHECK(norm(A, jordan_product(A, unit(A), a) - a) <= 1e-12 * (1 + norm(A, a)));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("formal reality") {
  const Algebra A = make_algebra(Family::ComplexHerm, 2);
  CHECK(check_formal_reality(A, zero(A), zero(A)));
  const Element sx = complex_elem(A, oracle::sigma_x()), sy = complex_elem(A, oracle::sigma_y());
  CHECK(check_formal_reality(A, sx, sy));
  CHECK((jordan_square(A, sx) + jordan_square(A, sy)).coords.isApprox(2.0 * unit(A).coords));
  for (const auto& B : property_algebras()) {
    Rng rng(37);
    for (int t = 0; t < 1000; ++t) CHECK(check_formal_reality(B, random_element(B, rng), random_element(B, rng)));
  }
}

TEST_CASE("quadratic representation") {
  for (const auto& A : property_algebras()) {
    CAPTURE(A.to_string());
    CHECK(quadratic_representation(A, unit(A)).isApprox(Eigen::MatrixXd::Identity(A.dim(), A.dim())));
    Rng rng(41);
    for (int t = 0; t < 100; ++t) {
      const Element a = random_element(A, rng);
      const LinearOperator P = quadratic_representation(A, a);
      CHECK((P * unit(A).coords - jordan_square(A, a).coords).norm() < 1e-10 * (1 + norm(A, a) * norm(A, a)));
      // P(a) maps the cone into itself for every a
      const Element b = random_square(A, rng);
      CHECK(min_eigenvalue(A, Element(A, P * b.coords)) > -1e-9 * (1 + norm(A, a) * norm(A, a) * norm(A, b)));
      // and is positive semidefinite in the trace metric when a is in the cone, P(c^2) = P(c)^2
      const Element sq = jordan_square(A, a);
      const LinearOperator Psq = quadratic_representation(A, sq);
      const Eigen::VectorXd sw = A.metric().cwiseSqrt();
      const Eigen::MatrixXd sym = sw.asDiagonal() * Psq * sw.cwiseInverse().asDiagonal();
      const double scale = 1 + std::pow(norm(A, sq), 2);
      CHECK((sym - sym.transpose()).norm() < 1e-10 * scale);
      CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (sym + sym.transpose())).eigenvalues().minCoeff() > -1e-9 * scale);
    }
  }
  const Algebra C = make_algebra(Family::ComplexHerm, 3);
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const Element a = random_element(C, rng), b = random_element(C, rng);
    const Eigen::MatrixXcd ma = oracle::hermitian(3, 2, a.coords), mb = oracle::hermitian(3, 2, b.coords);
    const Eigen::VectorXd expected = oracle::hermitian_coords(3, 2, ma * mb * ma);
    CHECK((quadratic_representation(C, a) * b.coords - expected).norm() < 1e-10 * (1 + expected.norm()));
  }
}

TEST_CASE("quaternionic results agree with the complex embedding oracle") {
  for (int n = 1; n <= 3; ++n) {
    const Algebra H = make_algebra(Family::QuatHerm, n);
    Rng rng(47);
    for (int t = 0; t < 100; ++t) {
      const Element a = random_element(H, rng), b = random_element(H, rng);
      const Eigen::MatrixXcd ea = oracle::quaternion_embedding(n, a.coords);
      const Eigen::MatrixXcd eb = oracle::quaternion_embedding(n, b.coords);
      CHECK((oracle::quaternion_embedding(n, jordan_product(H, a, b).coords) - oracle::anticommutator(ea, eb)).norm() < 1e-12 * (1 + ea.norm() * eb.norm()));
      // trace form equals half the embedded real trace
      CHECK(trace_form(H, a, b) == doctest::Approx(0.5 * (ea * eb).trace().real()).epsilon(1e-12));
      // spectrum appears with doubled multiplicity in the embedding
      const Eigen::VectorXd emb = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(ea).eigenvalues();
      const auto s = spectral_decompose(H, a);
      REQUIRE(static_cast<int>(s.pairs.size()) == n);
      for (int i = 0; i < n; ++i) {
        CHECK(emb(2 * i) == doctest::Approx(s.pairs[i].eigenvalue).epsilon(1e-9));
        CHECK(emb(2 * i + 1) == doctest::Approx(s.pairs[i].eigenvalue).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("Albert algebra") {
  const Algebra O = make_algebra(Family::Albert);
  const auto frame = random_jordan_frame(O, 5);
  REQUIRE(frame.size() == 3);
  double total = 0.0;
  for (const auto& e : frame) total += trace(O, e);
  CHECK(total == doctest::Approx(3.0));
  // the product is not the associative matrix product
  Rng rng(53);
  const Element a = random_element(O, rng), b = random_element(O, rng), c = random_element(O, rng);
  const Element ab_c = jordan_product(O, jordan_product(O, a, b), c);
  const Element a_bc = jordan_product(O, a, jordan_product(O, b, c));
  CHECK(norm(O, ab_c - a_bc) > 1e-3);
}

TEST_CASE("algebra certificates") {
  for (const auto& A : property_algebras()) {
    CAPTURE(A.to_string());
    for (const auto& cert : {check_jordan_axioms(A, 50, 1), check_formal_reality(A, 50, 2), check_spectral(A, 50, 3),
                             check_frames(A, 20, 4)}) {
      CAPTURE(cert.check_name);
      CHECK(cert.passed);
      CHECK(cert.samples >= 20);
    }
  }
}
