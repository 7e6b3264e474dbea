#include "hsd/composite.hpp"

#include "hsd/cone.hpp"
#include "hsd/linalg.hpp"
#include "hsd/matrix_rep.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace hsd {
namespace {

bool is_trivial(const Algebra& A) { return A.dim() == 1; }

bool kronecker_family(Family f) {
  return f == Family::RealSym || f == Family::ComplexHerm || f == Family::QuatHerm;
}

QuatMatrix quat_kron(const QuatMatrix& x, const QuatMatrix& y) {
  QuatMatrix z(x.n * y.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      for (int k = 0; k < y.n; ++k)
        for (int l = 0; l < y.n; ++l) z(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
  return z;
}

Element kron_element(const Algebra& carrier, const Element& x, const Element& y) {
  if (carrier.family() == Family::QuatHerm)
    return from_quat_matrix(carrier, quat_kron(to_quat_matrix(x), to_quat_matrix(y)));
  Eigen::MatrixXcd mx = to_complex_matrix(x), my = to_complex_matrix(y);
  Eigen::MatrixXcd z(mx.rows() * my.rows(), mx.cols() * my.cols());
  for (Eigen::Index i = 0; i < mx.rows(); ++i)
    for (Eigen::Index j = 0; j < mx.cols(); ++j) z.block(i * my.rows(), j * my.cols(), my.rows(), my.cols()) = mx(i, j) * my;
  return from_complex_matrix(carrier, z);
}

// Effect drawn as a random square rescaled into [0, u].
Element random_effect(const Algebra& A, Rng& rng) {
  const Element s = random_square(A, rng);
  return s * (1.0 / max_eigenvalue(A, s));
}

Element random_state_representer(const Algebra& A, Rng& rng) {
  const Element w = random_interior_point(A, rng);
  return w * (1.0 / trace(A, w));
}

// Product of two transvections, an order-automorphism that is not self-adjoint.
LinearOperator random_automorphism(const Algebra& A, Rng& rng) {
  return automorphism_to_point(A, random_interior_point(A, rng)) *
         automorphism_to_point(A, random_interior_point(A, rng));
}

Eigen::VectorXd flat(const LinearOperator& m) { return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size()); }

double marginal_spread(const State& omega, const std::vector<Test>& tests,
                       const std::function<Element(const Element&)>& pair_with) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& test : tests) {
    double m = 0.0;
    for (const auto& y : test) m += omega.probability(pair_with(y));
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return hi - lo;
}

}  // namespace

Eigen::VectorXd CompositeSystem::tensor_coords(const Element& a, const Element& b) const {
  require_member(partA.algebra, a);
  require_member(partB.algebra, b);
  return kron(a.coords, b.coords);
}

Element CompositeSystem::tensor(const Element& a, const Element& b) const {
  return Element(carrier, embed * tensor_coords(a, b));
}

CompositeSystem candidate_composite(const ProbModel& A, const ProbModel& B) {
  const Algebra& a = A.algebra;
  const Algebra& b = B.algebra;
  CompositeSystem c{A, B, a, {}, 0, false};
  const int dA = a.dim(), dB = b.dim();
  if (is_trivial(a) || is_trivial(b)) {
    // u (x) x and x (x) u identify the product with the nontrivial part
    c.carrier = is_trivial(a) ? b : a;
    const double scale = (is_trivial(a) ? unit(a) : unit(b)).coords(0);
    c.embed = LinearOperator::Identity(c.carrier.dim(), dA * dB) / scale;
  } else {
    if (a.family() != b.family() || !kronecker_family(a.family()))
      throw std::invalid_argument("candidate_composite: no Kronecker candidate for " + a.to_string() + " x " +
                                  b.to_string());
    c.carrier = make_algebra(a.family(), a.size() * b.size());
    c.embed.resize(c.carrier.dim(), dA * dB);
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dB; ++j)
        c.embed.col(i * dB + j) = kron_element(c.carrier, basis_element(a, i), basis_element(b, j)).coords;
  }
  c.embed_rank = numerical_rank(c.embed, 1e-10);
  c.locally_tomographic = c.carrier.dim() == dA * dB && c.embed_rank == dA * dB;
  return c;
}

ConeCertificate local_tomography_audit(const CompositeSystem& c) {
  ConeCertificate cert("local-tomography", 0.0, 0);
  const int dA = c.partA.algebra.dim(), dB = c.partB.algebra.dim(), dC = c.carrier.dim();
  cert.note("dim A = " + std::to_string(dA) + ", dim B = " + std::to_string(dB) + ", dim AB = " + std::to_string(dC) +
            ", embed rank = " + std::to_string(c.embed_rank));
  cert.observe(std::abs(dC - dA * dB) + std::abs(c.embed_rank - dA * dB));
  return cert.finish();
}

State product_state(const CompositeSystem& c, const State& alpha, const State& beta) {
  if (!(alpha.algebra == c.partA.algebra) || !(beta.algebra == c.partB.algebra))
    throw std::invalid_argument("product_state: states do not belong to the parts");
  return make_state(c.carrier, c.tensor(alpha.representer, beta.representer));
}

Element product_effect(const CompositeSystem& c, const Element& a, const Element& b) {
  return c.tensor(a, b);
}

ConeCertificate check_product_tests(const CompositeSystem& c, double tol) {
  ConeCertificate cert("product-tests", tol, 0);
  const Element u = unit(c.carrier);
  for (const auto& E : c.partA.tests)
    for (const auto& F : c.partB.tests) {
      Element total = zero(c.carrier);
      for (const auto& x : E)
        for (const auto& y : F) {
          const Element xy = c.tensor(x, y);
          total += xy;
          const SpectralDecomposition sd = spectral_decompose(c.carrier, xy);
          cert.observe(std::max({0.0, -sd.min_eigenvalue(), sd.max_eigenvalue() - 1.0}), xy.coords);
        }
      cert.observe(norm(c.carrier, total - u) / c.carrier.rank(), total.coords);
    }
  return cert.finish();
}

ConeCertificate check_product_states(const CompositeSystem& c, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("product-states", tol, seed);
  const Algebra& A = c.partA.algebra;
  const Algebra& B = c.partB.algebra;
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    const State alpha{A, random_state_representer(A, rng)};
    const State beta{B, random_state_representer(B, rng)};
    const State omega{c.carrier, c.tensor(alpha.representer, beta.representer)};
    const Element a = random_effect(A, rng);
    const Element b = random_effect(B, rng);
    cert.observe(std::abs(omega.probability(c.tensor(a, b)) - alpha.probability(a) * beta.probability(b)),
                 c.tensor_coords(a, b));
  }
  return cert.finish();
}

ConeCertificate nonsignaling_check(const CompositeSystem& c, const State& omega, double tol) {
  const State valid = make_state(c.carrier, omega.representer);
  ConeCertificate cert("non-signaling", tol, 0);
  for (const auto& a : c.partA.outcome_pool)
    cert.observe(marginal_spread(valid, c.partB.tests, [&](const Element& y) { return c.tensor(a, y); }), a.coords);
  for (const auto& b : c.partB.outcome_pool)
    cert.observe(marginal_spread(valid, c.partA.tests, [&](const Element& x) { return c.tensor(x, b); }), b.coords);
  return cert.finish();
}

ConeCertificate nonsignaling_sampled(const CompositeSystem& c, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("non-signaling", tol, seed);
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    // alternate mixed and pure carrier states; pure ones are generically entangled
    const Element w = t % 2 == 0 ? random_state_representer(c.carrier, rng)
                                 : random_primitive_idempotent(c.carrier, rng);
    const ConeCertificate one = nonsignaling_check(c, State{c.carrier, w}, tol);
    cert.observe(one.worst_residual, w.coords);
  }
  cert.note(std::to_string(c.partA.tests.size()) + " x " + std::to_string(c.partB.tests.size()) + " tests");
  return cert.finish();
}

ConeCertificate factorization_check(const CompositeSystem& c, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("trace-factorization", tol, seed);
  const Algebra& A = c.partA.algebra;
  const Algebra& B = c.partB.algebra;
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    const Element a = random_element(A, rng), x = random_element(A, rng);
    const Element b = random_element(B, rng), y = random_element(B, rng);
    const double lhs = trace_form(c.carrier, c.tensor(a, b), c.tensor(x, y));
    const double rhs = trace_form(A, a, x) * trace_form(B, b, y);
    cert.observe(std::abs(lhs - rhs), c.tensor_coords(a, b));
  }
  return cert.finish();
}

ConeCertificate tensor_adjoint_check(const CompositeSystem& c, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("tensor-adjoint", tol, seed);
  if (!c.locally_tomographic) return cert.skip("composite is not locally tomographic");
  const Algebra& A = c.partA.algebra;
  const Algebra& B = c.partB.algebra;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(c.embed);
  auto lift = [&](const Eigen::MatrixXd& tensor_op) -> LinearOperator { return c.embed * tensor_op * lu.inverse(); };
  const Eigen::MatrixXd IA = Eigen::MatrixXd::Identity(A.dim(), A.dim());
  const Eigen::MatrixXd IB = Eigen::MatrixXd::Identity(B.dim(), B.dim());

  Rng rng = make_rng(seed);
  int preserving_failures = 0;
  for (int t = 0; t < samples; ++t) {
    const bool left = t % 2 == 0;
    const Algebra& part = left ? A : B;
    const LinearOperator g = t < 2 ? LinearOperator::Identity(part.dim(), part.dim()) : random_automorphism(part, rng);
    const LinearOperator gd = trace_adjoint(part, g);
    const LinearOperator G = lift(left ? kron(g, IB) : kron(IA, g));
    const LinearOperator Gd = lift(left ? kron(gd, IB) : kron(IA, gd));
    const double scale = 1.0 + g.cwiseAbs().maxCoeff();
    cert.observe((trace_adjoint(c.carrier, G) - Gd).cwiseAbs().maxCoeff() / scale, flat(g));
    const ConeCertificate preserving = check_cone_preserving(c.carrier, Gd, "adjoint-lift", 10, rng(), tol);
    if (!preserving.passed) {
      ++preserving_failures;
      cert.observe(preserving.worst_residual, flat(g));
    }
  }
  cert.note(std::to_string(preserving_failures) + " lifted adjoints failed cone preservation");
  return cert.finish();
}

ConeCertificate tensor_Lmap_check(const CompositeSystem& c, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("tensor-Lmap", tol, seed);
  const Algebra& A = c.partA.algebra;
  const Algebra& B = c.partB.algebra;
  const Eigen::MatrixXd IA = Eigen::MatrixXd::Identity(A.dim(), A.dim());
  const Eigen::MatrixXd IB = Eigen::MatrixXd::Identity(B.dim(), B.dim());
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    const Element a = t == 0 ? unit(A) : random_element(A, rng);
    const Element v = t == 0 ? unit(B) : random_element(B, rng);
    const LinearOperator left_lhs = left_mult_operator(c.carrier, c.tensor(a, unit(B))) * c.embed;
    const LinearOperator left_rhs = c.embed * kron(left_mult_operator(A, a), IB);
    cert.observe((left_lhs - left_rhs).cwiseAbs().maxCoeff() / (1.0 + norm(A, a)), a.coords);
    const LinearOperator right_lhs = left_mult_operator(c.carrier, c.tensor(unit(A), v)) * c.embed;
    const LinearOperator right_rhs = c.embed * kron(IA, left_mult_operator(B, v));
    cert.observe((right_lhs - right_rhs).cwiseAbs().maxCoeff() / (1.0 + norm(B, v)), v.coords);
  }
  if (!c.locally_tomographic) cert.note("checked on the embedded tensor subspace only");
  return cert.finish();
}

ConeCertificate hanche_olsen_check(const CompositeSystem& c, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("hanche-olsen", tol, seed);
  const Algebra& A = c.partA.algebra;
  const Algebra& B = c.partB.algebra;
  const Element uA = unit(A), uB = unit(B);
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    const Element a = random_element(A, rng), b = random_element(A, rng);
    const Element v = random_element(B, rng), w = random_element(B, rng);
    const Element lhs1 = jordan_product(c.carrier, c.tensor(a, uB), c.tensor(b, v));
    const Element rhs1 = c.tensor(jordan_product(A, a, b), v);
    cert.observe((lhs1 - rhs1).coords.cwiseAbs().maxCoeff() / (1.0 + norm(A, a) * norm(A, b) * norm(B, v)),
                 c.tensor_coords(a, v));
    const Element lhs2 = jordan_product(c.carrier, c.tensor(uA, v), c.tensor(a, w));
    const Element rhs2 = c.tensor(a, jordan_product(B, v, w));
    cert.observe((lhs2 - rhs2).coords.cwiseAbs().maxCoeff() / (1.0 + norm(A, a) * norm(B, v) * norm(B, w)),
                 c.tensor_coords(a, w));
  }
  return cert.finish();
}

State maximally_entangled_state(const CompositeSystem& c) {
  const Algebra& A = c.partA.algebra;
  const Algebra& B = c.partB.algebra;
  const Family f = c.carrier.family();
  if ((f != Family::RealSym && f != Family::ComplexHerm) || is_trivial(A) || is_trivial(B) ||
      A.family() != B.family() || A.size() != B.size())
    throw std::invalid_argument("maximally_entangled_state: needs real or complex parts of equal size");
  const int n = A.size();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n * n);
  for (int i = 0; i < n; ++i) psi(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  return make_state(c.carrier, from_complex_matrix(c.carrier, psi * psi.adjoint()));
}

LinearOperator spin_to_qubit_map() {
  const Algebra qubit = make_algebra(Family::ComplexHerm, 2);
  using cd = std::complex<double>;
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, cd(0, -1), cd(0, 1), 0;
  sz << 1, 0, 0, -1;
  LinearOperator phi(4, 4);
  phi.col(0) = from_complex_matrix(qubit, Eigen::Matrix2cd::Identity()).coords;
  phi.col(1) = from_complex_matrix(qubit, sx).coords;
  phi.col(2) = from_complex_matrix(qubit, sy).coords;
  phi.col(3) = from_complex_matrix(qubit, sz).coords;
  return phi;
}

ConeCertificate spin_qubit_isomorphism(int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("spin-qubit-isomorphism", tol, seed);
  const Algebra spin = make_algebra(Family::SpinFactor, 3);
  const Algebra qubit = make_algebra(Family::ComplexHerm, 2);
  const LinearOperator phi = spin_to_qubit_map();
  auto map = [&](const Element& x) { return Element(qubit, phi * x.coords); };
  cert.observe((map(unit(spin)) - unit(qubit)).coords.norm());
  cert.observe(condition_number(phi) < 1e6 ? 0.0 : 1.0);
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples + 16; ++t) {
    // all basis pairs first, then random pairs
    const Element a = t < 16 ? basis_element(spin, t / 4) : random_element(spin, rng);
    const Element b = t < 16 ? basis_element(spin, t % 4) : random_element(spin, rng);
    const double scale = 1.0 + norm(spin, a) * norm(spin, b);
    cert.observe((map(jordan_product(spin, a, b)) - jordan_product(qubit, map(a), map(b))).coords.norm() / scale,
                 a.coords);
    cert.observe(std::abs(trace_form(spin, a, b) - trace_form(qubit, map(a), map(b))) / scale, a.coords);
  }
  return cert.finish();
}

bool qubit_witness(const std::vector<ProbModel>& theory) {
  for (const auto& model : theory) {
    const Algebra& A = model.algebra;
    if (A.family() == Family::ComplexHerm && A.size() == 2) return true;
    if (A.family() == Family::SpinFactor && A.size() == 3 && spin_qubit_isomorphism(100, 0).passed) return true;
  }
  return false;
}

}  // namespace hsd
