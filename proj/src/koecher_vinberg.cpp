#include "hsd/koecher_vinberg.hpp"

#include "hsd/cone.hpp"
#include "hsd/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace hsd {
namespace {

// Operators are handled in trace-orthonormal coordinates X~ = S X S^-1 with
// S = diag(sqrt(metric)); there the trace adjoint is the transpose.
struct MetricFrame {
  Eigen::VectorXd s;
  Eigen::VectorXd s_inv;

  explicit MetricFrame(const Algebra& A) : s(A.metric().cwiseSqrt()), s_inv(s.cwiseInverse()) {}

  Eigen::MatrixXd to_ortho(const LinearOperator& x) const {
    return s.asDiagonal() * x * s_inv.asDiagonal();
  }
  LinearOperator from_ortho(const Eigen::MatrixXd& x) const {
    return s_inv.asDiagonal() * x * s.asDiagonal();
  }
};

Eigen::VectorXd vec(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int d) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), d, d);
}

Eigen::MatrixXd columns_of(const std::vector<Eigen::MatrixXd>& ops) {
  if (ops.empty()) return {};
  Eigen::MatrixXd m(ops.front().size(), static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = vec(ops[k]);
  return m;
}

std::vector<Eigen::MatrixXd> operators_of(const Eigen::MatrixXd& cols, int d) {
  std::vector<Eigen::MatrixXd> ops;
  for (Eigen::Index k = 0; k < cols.cols(); ++k) ops.push_back(unvec(cols.col(k), d));
  return ops;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Random unit-norm combination of the given orthonormal operators.
Eigen::MatrixXd random_combination(const std::vector<Eigen::MatrixXd>& ops, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(ops.front().rows(), ops.front().cols());
  for (const auto& op : ops) x += normal(rng) * op;
  return x / x.norm();
}

}  // namespace

std::vector<LinearOperator> group_lie_generators(const Algebra& A) {
  std::vector<LinearOperator> transporters;
  for (int k = 0; k < A.dim(); ++k) transporters.push_back(left_mult_operator(A, basis_element(A, k)));
  std::vector<LinearOperator> gens = transporters;
  for (std::size_t i = 0; i < transporters.size(); ++i)
    for (std::size_t j = i + 1; j < transporters.size(); ++j) {
      LinearOperator c = transporters[i] * transporters[j] - transporters[j] * transporters[i];
      if (c.norm() > 0.0) gens.push_back(std::move(c));
    }
  return gens;
}

LieAlgebraBasis lie_closure(const Algebra& A, const std::vector<LinearOperator>& generators,
                            double tol) {
  const int d = A.dim();
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("lie_closure: tolerance must lie in (0, 1)");
  for (const auto& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw std::invalid_argument("lie_closure: generator does not act on the algebra");
  const MetricFrame frame(A);
  std::vector<Eigen::MatrixXd> ortho;
  for (const auto& g : generators) ortho.push_back(frame.to_ortho(g));

  Eigen::MatrixXd basis = orthonormal_column_basis(columns_of(ortho), tol);
  int rounds = 0;
  constexpr int kMaxRounds = 10;
  for (;;) {
    if (basis.cols() > d * d)
      throw std::runtime_error("lie_closure: span exceeds dim(E)^2; tolerance misconfigured");
    if (rounds == kMaxRounds)
      throw std::runtime_error("lie_closure: span still growing after 10 rounds");
    ++rounds;
    const auto ops = operators_of(basis, d);
    std::vector<Eigen::MatrixXd> candidates = ops;
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (std::size_t j = i + 1; j < ops.size(); ++j)
        candidates.push_back(ops[i] * ops[j] - ops[j] * ops[i]);
    Eigen::MatrixXd grown = orthonormal_column_basis(columns_of(candidates), tol);
    if (grown.cols() > d * d)
      throw std::runtime_error("lie_closure: span exceeds dim(E)^2; tolerance misconfigured");
    if (grown.cols() == basis.cols()) break;
    basis = std::move(grown);
  }

  const auto ops = operators_of(basis, d);
  std::vector<Eigen::MatrixXd> sym, skew;
  for (const auto& op : ops) {
    sym.push_back(0.5 * (op + op.transpose()));
    skew.push_back(0.5 * (op - op.transpose()));
  }
  const Eigen::MatrixXd sym_basis = orthonormal_column_basis(columns_of(sym), tol);
  const Eigen::MatrixXd skew_basis = orthonormal_column_basis(columns_of(skew), tol);

  LieAlgebraBasis out{A, {}, {}, {}, tol, rounds, 0.0};
  // parts of a self-adjoint g lie in g again
  for (const Eigen::MatrixXd* part : {&sym_basis, &skew_basis}) {
    if (part->cols() == 0) continue;
    const Eigen::MatrixXd outside = *part - basis * (basis.transpose() * *part);
    out.split_residual = std::max(out.split_residual, outside.colwise().norm().maxCoeff());
  }
  if (sym_basis.cols() + skew_basis.cols() != basis.cols())
    out.split_residual = std::max(out.split_residual, 1.0);
  for (const auto& op : ops) out.generators.push_back(frame.from_ortho(op));
  for (const auto& op : operators_of(sym_basis, d)) out.sym_part.push_back(frame.from_ortho(op));
  for (const auto& op : operators_of(skew_basis, d)) out.skew_part.push_back(frame.from_ortho(op));
  return out;
}

PToEMap p_to_E_isomorphism(const LieAlgebraBasis& basis, double max_condition) {
  const Algebra& A = basis.algebra;
  const Eigen::VectorXd u = unit(A).coords;
  PToEMap out;
  out.matrix.resize(A.dim(), static_cast<Eigen::Index>(basis.sym_part.size()));
  for (std::size_t k = 0; k < basis.sym_part.size(); ++k)
    out.matrix.col(static_cast<Eigen::Index>(k)) = basis.sym_part[k] * u;
  for (const auto& x : basis.skew_part)
    out.skew_kernel_residual = std::max(out.skew_kernel_residual, norm(A, Element(A, x * u)));
  out.condition_number = condition_number(out.matrix);
  out.invertible = out.condition_number < max_condition;
  return out;
}

Element ReconstructedProduct::product(const Element& a, const Element& b) const {
  require_member(algebra, a);
  require_member(algebra, b);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(algebra.dim());
  for (int i = 0; i < algebra.dim(); ++i) r += a.coords(i) * (product_table[static_cast<std::size_t>(i)] * b.coords);
  return Element(algebra, std::move(r));
}

ReconstructedProduct reconstruct_product(const LieAlgebraBasis& basis, std::uint64_t seed,
                                         int samples) {
  const Algebra& A = basis.algebra;
  const PToEMap iso = p_to_E_isomorphism(basis);
  if (!iso.invertible)
    throw std::runtime_error("reconstruct_product: X -> Xu is not invertible on p (condition " +
                             fmt(iso.condition_number) + ")");
  const int d = A.dim();
  const Eigen::VectorXd u = unit(A).coords;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(iso.matrix);

  ReconstructedProduct out{A, {}, 0, 0, 0, 0, 0, iso.condition_number};
  for (int i = 0; i < d; ++i) {
    const Eigen::VectorXd c = lu.solve(Eigen::VectorXd::Unit(d, i));
    LinearOperator L = LinearOperator::Zero(d, d);
    for (std::size_t k = 0; k < basis.sym_part.size(); ++k) L += c(static_cast<Eigen::Index>(k)) * basis.sym_part[k];
    out.product_table.push_back(std::move(L));
  }

  for (int i = 0; i < d; ++i) {
    const LinearOperator& Li = out.product_table[static_cast<std::size_t>(i)];
    const LinearOperator native = left_mult_operator(A, basis_element(A, i));
    out.max_deviation_from_native =
        std::max(out.max_deviation_from_native, (Li - native).cwiseAbs().maxCoeff());
    out.unit_residual = std::max(out.unit_residual, (Li * u - Eigen::VectorXd::Unit(d, i)).norm());
    out.associativity_residual =
        std::max(out.associativity_residual, (Li - trace_adjoint(A, Li)).cwiseAbs().maxCoeff());
    for (int j = i + 1; j < d; ++j) {
      const LinearOperator& Lj = out.product_table[static_cast<std::size_t>(j)];
      out.commutativity_residual =
          std::max(out.commutativity_residual, ((Li * Lj - Lj * Li) * u).norm());
    }
  }

  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    const Element a = random_element(A, rng);
    const Element b = random_element(A, rng);
    const Element a2 = out.product(a, a);
    const Element lhs = out.product(a2, out.product(a, b));
    const Element rhs = out.product(a, out.product(a2, b));
    const double na = norm(A, a);
    out.jordan_residual =
        std::max(out.jordan_residual, norm(A, lhs - rhs) / (1.0 + na * na * na * norm(A, b)));
  }
  return out;
}

std::vector<ConeCertificate> check_lie_structure(const LieAlgebraBasis& basis, int samples,
                                                 std::uint64_t seed, double tol) {
  const Algebra& A = basis.algebra;
  const int d = A.dim();
  const MetricFrame frame(A);
  const Eigen::VectorXd u = unit(A).coords;
  Rng rng = make_rng(seed);

  std::vector<Eigen::MatrixXd> g, p, k;
  for (const auto& x : basis.generators) g.push_back(frame.to_ortho(x));
  for (const auto& x : basis.sym_part) p.push_back(frame.to_ortho(x));
  for (const auto& x : basis.skew_part) k.push_back(frame.to_ortho(x));
  auto apply_u = [&](const Eigen::MatrixXd& ortho) { return Element(A, frame.from_ortho(ortho) * u); };

  ConeCertificate k_kernel("kv-k-kernel", tol, seed);
  if (!k.empty()) {
    for (int t = 0; t < samples; ++t) {
      const Eigen::MatrixXd x = random_combination(k, rng);
      k_kernel.observe(norm(A, apply_u(x)), vec(x));
    }
  }
  // converse: the kernel of X -> Xu inside g is skew
  if (!g.empty()) {
    Eigen::MatrixXd action(d, static_cast<Eigen::Index>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) action.col(static_cast<Eigen::Index>(i)) = apply_u(g[i]).coords;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(action, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const int rank = sv.size() == 0 || sv(0) == 0.0 ? 0 : static_cast<int>((sv.array() >= tol * sv(0)).count());
    const Eigen::MatrixXd kernel = svd.matrixV().rightCols(static_cast<Eigen::Index>(g.size()) - rank);
    k_kernel.note("dim ker(X -> Xu) = " + std::to_string(kernel.cols()) + ", dim k = " + std::to_string(k.size()));
    if (static_cast<std::size_t>(kernel.cols()) != k.size()) k_kernel.observe(1.0, Eigen::VectorXd::Zero(1));
    std::normal_distribution<double> normal;
    for (int t = 0; t < samples && kernel.cols() > 0; ++t) {
      Eigen::VectorXd coeff(kernel.cols());
      for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) = normal(rng);
      const Eigen::VectorXd c = kernel * coeff;
      Eigen::MatrixXd x = Eigen::MatrixXd::Zero(d, d);
      for (std::size_t i = 0; i < g.size(); ++i) x += c(static_cast<Eigen::Index>(i)) * g[i];
      x /= x.norm();
      k_kernel.observe((0.5 * (x + x.transpose())).norm(), vec(x));
    }
  }
  k_kernel.finish();

  ConeCertificate bracket("kv-p-bracket", tol, seed);
  for (int t = 0; t < samples && !p.empty(); ++t) {
    const Eigen::MatrixXd x = random_combination(p, rng);
    const Eigen::MatrixXd y = random_combination(p, rng);
    const Eigen::MatrixXd c = x * y - y * x;
    bracket.observe((0.5 * (c + c.transpose())).norm(), vec(c));
  }
  bracket.finish();

  ConeCertificate exp_check("kv-exp-consistency", kDefaultTol, seed);
  for (int t = 0; t < samples && !p.empty(); ++t) {
    const LinearOperator g_exp = matrix_exp(frame.from_ortho(0.5 * random_combination(p, rng)));
    const Element c = (t % 2 == 0) ? random_square(A, rng) : random_primitive_idempotent(A, rng);
    const Element image(A, g_exp * c.coords);
    exp_check.observe(std::max(0.0, -min_eigenvalue(A, image)) / (1.0 + norm(A, image)), c.coords);
  }
  exp_check.finish();
  return {k_kernel, bracket, exp_check};
}

ReconstructionReport run_koecher_vinberg(const Algebra& A, int samples, std::uint64_t seed,
                                         double deviation_tol) {
  ReconstructionReport report;
  const LieAlgebraBasis basis = lie_closure(A, group_lie_generators(A));
  report.g_dim = basis.dim();
  report.p_dim = static_cast<int>(basis.sym_part.size());
  report.k_dim = static_cast<int>(basis.skew_part.size());

  ConeCertificate split("kv-symmetric-split", basis.tol, seed);
  split.observe(basis.split_residual, Eigen::VectorXd::Zero(1));
  split.note("dim g = " + std::to_string(report.g_dim) + ", dim p = " + std::to_string(report.p_dim) +
             ", dim k = " + std::to_string(report.k_dim) + ", closure rounds = " + std::to_string(basis.rounds));
  report.certificates.push_back(split.finish());

  const PToEMap iso = p_to_E_isomorphism(basis);
  report.condition_number = iso.condition_number;
  ConeCertificate iso_cert("kv-isomorphism", 1e6, seed);
  iso_cert.observe(iso.condition_number, Eigen::VectorXd::Constant(1, static_cast<double>(report.p_dim)));
  iso_cert.note("condition number of X -> Xu on p; dim p = " + std::to_string(report.p_dim) +
                ", dim E = " + std::to_string(A.dim()));
  iso_cert.finish();
  // a non-square map is never an isomorphism
  if (report.p_dim != A.dim()) {
    iso_cert.passed = false;
    if (iso_cert.witnesses.empty()) iso_cert.add_witness(Eigen::VectorXd::Constant(1, report.p_dim));
  }
  report.certificates.push_back(iso_cert);

  for (auto& c : check_lie_structure(basis, samples, seed)) report.certificates.push_back(std::move(c));

  if (!iso_cert.passed) return report;
  const ReconstructedProduct rec = reconstruct_product(basis, seed, samples);
  ConeCertificate deviation("kv-reconstruction", deviation_tol, seed);
  deviation.observe(rec.max_deviation_from_native, Eigen::VectorXd::Zero(1));
  deviation.note("max |reconstructed - native| over the product table");
  report.certificates.push_back(deviation.finish());

  ConeCertificate steps("kv-product-axioms", 1e-8, seed);
  steps.observe(rec.commutativity_residual, Eigen::VectorXd::Constant(1, 1.0));
  steps.observe(rec.unit_residual, Eigen::VectorXd::Constant(1, 2.0));
  steps.observe(rec.jordan_residual, Eigen::VectorXd::Constant(1, 3.0));
  steps.observe(rec.associativity_residual, Eigen::VectorXd::Constant(1, 4.0));
  steps.note("commutativity " + fmt(rec.commutativity_residual) + ", unit " +
             fmt(rec.unit_residual) + ", jordan " + fmt(rec.jordan_residual) + ", associativity " +
             fmt(rec.associativity_residual));
  report.certificates.push_back(steps.finish());
  return report;
}

}  // namespace hsd
