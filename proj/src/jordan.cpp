#include "hsd/jordan.hpp"

#include "families.hpp"

#include <cmath>
#include <stdexcept>

namespace hsd {

Element jordan_product(const Algebra& A, const Element& a, const Element& b) {
  require_member(A, a);
  require_member(A, b);
  return Element(A, A.impl().product(a.coords, b.coords));
}

Element jordan_square(const Algebra& A, const Element& a) { return jordan_product(A, a, a); }

LinearOperator left_mult_operator(const Algebra& A, const Element& a) {
  require_member(A, a);
  const int d = A.dim();
  LinearOperator L(d, d);
  for (int j = 0; j < d; ++j) L.col(j) = A.impl().product(a.coords, Eigen::VectorXd::Unit(d, j));
  return L;
}

LinearOperator quadratic_representation(const Algebra& A, const Element& a) {
  const LinearOperator L = left_mult_operator(A, a);
  return 2.0 * L * L - left_mult_operator(A, jordan_square(A, a));
}

double trace_form(const Algebra& A, const Element& a, const Element& b) {
  require_member(A, a);
  require_member(A, b);
  return a.coords.cwiseProduct(A.metric()).dot(b.coords);
}

double trace(const Algebra& A, const Element& a) { return trace_form(A, a, unit(A)); }

double norm(const Algebra& A, const Element& a) { return std::sqrt(trace_form(A, a, a)); }

LinearOperator trace_adjoint(const Algebra& A, const LinearOperator& op) {
  const Eigen::VectorXd& w = A.metric();
  return w.cwiseInverse().asDiagonal() * op.transpose() * w.asDiagonal();
}

Element SpectralDecomposition::reconstruct() const {
  Element sum = pairs.front().idempotent * pairs.front().eigenvalue;
  for (std::size_t i = 1; i < pairs.size(); ++i) sum += pairs[i].idempotent * pairs[i].eigenvalue;
  return sum;
}

double default_merge_tol(const Algebra& A, const Element& a) { return 1e-8 * (1.0 + norm(A, a)); }

namespace {

SpectralDecomposition wrap(const Algebra& A, detail::RawSpectrum raw) {
  SpectralDecomposition out;
  const Eigen::VectorXd& w = A.metric();
  const Eigen::VectorXd u = A.impl().unit();
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    if (raw.projections[i].cwiseProduct(w).dot(u) > 1.5) out.degenerate = true;
    out.pairs.push_back({raw.values[i], Element(A, std::move(raw.projections[i]))});
  }
  return out;
}

}  // namespace

SpectralDecomposition spectral_decompose(const Algebra& A, const Element& a, double merge_tol) {
  require_member(A, a);
  return wrap(A, A.impl().spectrum(a.coords, merge_tol));
}

SpectralDecomposition spectral_decompose(const Algebra& A, const Element& a) {
  return spectral_decompose(A, a, default_merge_tol(A, a));
}

SpectralDecomposition spectral_decompose_generic(const Algebra& A, const Element& a) {
  require_member(A, a);
  return wrap(A, detail::minimal_polynomial_spectrum(A.impl(), a.coords, default_merge_tol(A, a)));
}

double min_eigenvalue(const Algebra& A, const Element& a) {
  return spectral_decompose(A, a).min_eigenvalue();
}

double max_eigenvalue(const Algebra& A, const Element& a) {
  return spectral_decompose(A, a).max_eigenvalue();
}

Element spectral_function(const Algebra& A, const Element& a,
                          const std::function<double(double)>& f) {
  const SpectralDecomposition s = spectral_decompose(A, a);
  Element out = zero(A);
  for (const auto& p : s.pairs) out += p.idempotent * f(p.eigenvalue);
  return out;
}

Element jordan_sqrt(const Algebra& A, const Element& a) {
  return spectral_function(A, a, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

Element jordan_inverse(const Algebra& A, const Element& a) {
  return spectral_function(A, a, [](double x) {
    if (x == 0.0) throw std::domain_error("jordan_inverse: element is not invertible");
    return 1.0 / x;
  });
}

bool is_idempotent(const Algebra& A, const Element& p, double tol) {
  return norm(A, jordan_square(A, p) - p) <= tol * (1.0 + norm(A, p));
}

bool is_primitive(const Algebra& A, const Element& p, double tol) {
  return is_idempotent(A, p, tol) && std::abs(trace(A, p) - 1.0) <= tol * A.rank();
}

Element random_element(const Algebra& A, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(A.dim());
  for (int i = 0; i < A.dim(); ++i) x(i) = normal(rng);
  return Element(A, std::move(x));
}

Element random_square(const Algebra& A, Rng& rng) { return jordan_square(A, random_element(A, rng)); }

Element random_interior_point(const Algebra& A, Rng& rng) {
  std::normal_distribution<double> normal;
  Element w = zero(A);
  for (const auto& e : random_jordan_frame(A, rng)) w += e * std::exp(normal(rng));
  return w;
}

Element random_primitive_idempotent(const Algebra& A, Rng& rng) {
  auto frame = random_jordan_frame(A, rng);
  std::uniform_int_distribution<std::size_t> pick(0, frame.size() - 1);
  return frame[pick(rng)];
}

std::vector<Element> random_jordan_frame(const Algebra& A, Rng& rng) {
  constexpr int kMaxAttempts = 20;
  constexpr double kSeparation = 1e-6;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const Element a = random_element(A, rng);
    const SpectralDecomposition s = spectral_decompose(A, a);
    if (s.degenerate || static_cast<int>(s.pairs.size()) != A.rank()) continue;
    bool ok = true;
    for (std::size_t i = 1; i < s.pairs.size() && ok; ++i)
      ok = s.pairs[i].eigenvalue - s.pairs[i - 1].eigenvalue >= kSeparation;
    for (std::size_t i = 0; i < s.pairs.size() && ok; ++i)
      ok = is_primitive(A, s.pairs[i].idempotent, 1e-8);
    if (!ok) continue;
    std::vector<Element> frame;
    for (const auto& p : s.pairs) frame.push_back(p.idempotent);
    return frame;
  }
  throw std::runtime_error("random_jordan_frame: no well separated spectrum after 20 draws in " +
                           A.to_string());
}

std::vector<Element> random_jordan_frame(const Algebra& A, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_jordan_frame(A, rng);
}

std::vector<Element> canonical_frame(const Algebra& A) {
  std::vector<Element> frame;
  for (auto& x : A.impl().canonical_frame()) frame.emplace_back(A, std::move(x));
  return frame;
}

double check_jordan_identity(const Algebra& A, const Element& a, const Element& b) {
  const Element a2 = jordan_square(A, a);
  const Element lhs = jordan_product(A, a2, jordan_product(A, a, b));
  const Element rhs = jordan_product(A, a, jordan_product(A, a2, b));
  const double na = norm(A, a);
  return norm(A, lhs - rhs) / (1.0 + na * na * na * norm(A, b));
}

bool check_formal_reality(const Algebra& A, const Element& a, const Element& b) {
  const double mass = trace_form(A, a, a) + trace_form(A, b, b);
  if (mass <= 1e-300) return true;
  const Element s = jordan_square(A, a) + jordan_square(A, b);
  const bool trace_ok = std::abs(trace(A, s) - mass) <= 1e-9 * (1.0 + mass);
  return trace_ok && norm(A, s) >= mass / (2.0 * std::sqrt(static_cast<double>(A.rank())));
}

}  // namespace hsd
