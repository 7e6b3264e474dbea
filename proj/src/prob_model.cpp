#include "hsd/prob_model.hpp"

#include "hsd/cone.hpp"
#include "hsd/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace hsd {
namespace {

constexpr double kDedupTol = 1e-9;

std::vector<Element> pool_of(const std::vector<Test>& tests) {
  std::vector<Element> pool;
  for (const auto& test : tests)
    for (const auto& x : test) {
      bool seen = false;
      for (const auto& y : pool)
        if ((x.coords - y.coords).cwiseAbs().maxCoeff() <= kDedupTol) {
          seen = true;
          break;
        }
      if (!seen) pool.push_back(x);
    }
  return pool;
}

Element sum_of(const Algebra& A, const Test& test) {
  Element s = zero(A);
  for (const auto& x : test) s += x;
  return s;
}

double sum_residual(const Algebra& A, const Test& test) {
  return norm(A, sum_of(A, test) - unit(A));
}

// Distance of an outcome from the effect interval [0, u].
double effect_violation(const Algebra& A, const Element& x) {
  const SpectralDecomposition sd = spectral_decompose(A, x);
  return std::max({0.0, -sd.min_eigenvalue(), sd.max_eigenvalue() - 1.0});
}

Element random_state_representer(const Algebra& A, Rng& rng) {
  const Element w = random_interior_point(A, rng);
  return w * (1.0 / trace(A, w));
}

}  // namespace

int ProbModel::pool_span_rank() const {
  if (outcome_pool.empty()) return 0;
  Eigen::MatrixXd m(algebra.dim(), static_cast<Eigen::Index>(outcome_pool.size()));
  for (std::size_t k = 0; k < outcome_pool.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = outcome_pool[k].coords;
  return numerical_rank(m, 1e-9);
}

ProbModel make_model(const Algebra& A, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("make_model: test count must be at least 1");
  std::vector<Test> tests{canonical_frame(A)};
  Rng rng = make_rng(seed);
  for (int k = 1; k < count; ++k) tests.push_back(random_jordan_frame(A, rng));
  return make_model(A, std::move(tests));
}

ProbModel make_model(const Algebra& A, std::vector<Test> tests, double tol) {
  if (tests.empty()) throw std::invalid_argument("make_model: no tests");
  for (std::size_t t = 0; t < tests.size(); ++t) {
    if (tests[t].empty()) throw std::invalid_argument("make_model: test " + std::to_string(t) + " is empty");
    for (const auto& x : tests[t]) {
      require_member(A, x);
      if (effect_violation(A, x) > tol)
        throw std::invalid_argument("make_model: test " + std::to_string(t) + " has an outcome outside [0, u]");
    }
    if (sum_residual(A, tests[t]) > tol * A.rank())
      throw std::invalid_argument("make_model: test " + std::to_string(t) + " does not sum to u");
  }
  std::vector<Element> pool = pool_of(tests);
  return ProbModel{A, std::move(tests), std::move(pool), unit(A)};
}

double State::probability(const Element& outcome) const {
  return trace_form(algebra, representer, outcome);
}

State make_state(const Algebra& A, const Element& representer, double tol) {
  require_member(A, representer);
  if (!cone_contains(A, representer, tol)) throw std::invalid_argument("make_state: representer outside the cone");
  if (std::abs(trace(A, representer) - 1.0) > tol)
    throw std::invalid_argument("make_state: representer not normalized, <w, u> = " +
                                std::to_string(trace(A, representer)));
  return State{A, representer};
}

State uniform_state(const ProbModel& model) {
  return State{model.algebra, model.unit * (1.0 / model.algebra.rank())};
}

State pure_state_of(const ProbModel& model, const Element& e, double tol) {
  require_member(model.algebra, e);
  if (!is_primitive(model.algebra, e, tol))
    throw std::invalid_argument("pure_state_of: element is not a primitive idempotent");
  return State{model.algebra, e};
}

Eigen::VectorXd evaluate(const State& state, const Test& test) {
  Eigen::VectorXd p(static_cast<Eigen::Index>(test.size()));
  for (std::size_t k = 0; k < test.size(); ++k) p(static_cast<Eigen::Index>(k)) = state.probability(test[k]);
  return p;
}

ConeCertificate check_test_normalization(const ProbModel& model, double tol) {
  ConeCertificate cert("test-normalization", tol, 0);
  const Algebra& A = model.algebra;
  for (const auto& test : model.tests) cert.observe(sum_residual(A, test) / A.rank(), sum_of(A, test).coords);
  for (const auto& x : model.outcome_pool) cert.observe(effect_violation(A, x), x.coords);
  return cert.finish();
}

ConeCertificate check_outcome_span(const ProbModel& model) {
  ConeCertificate cert("outcome-span", 0.0, 0);
  const int r = model.pool_span_rank();
  cert.note("span rank " + std::to_string(r) + " of dim " + std::to_string(model.algebra.dim()) + " from " +
            std::to_string(model.outcome_pool.size()) + " pooled outcomes");
  cert.observe(static_cast<double>(model.algebra.dim() - r));
  return cert.finish();
}

ConeCertificate check_uniform(const ProbModel& model, double tol) {
  ConeCertificate cert("uniform", tol, 0);
  const State mu = uniform_state(model);
  for (const auto& test : model.tests) {
    const double target = 1.0 / static_cast<double>(test.size());
    for (const auto& x : test) cert.observe(std::abs(mu.probability(x) - target), x.coords);
  }
  return cert.finish();
}

ConeCertificate check_state(const ProbModel& model, const State& state, double tol) {
  ConeCertificate cert("state-normalization", tol, 0);
  for (const auto& test : model.tests) {
    const Eigen::VectorXd p = evaluate(state, test);
    const double range = std::max({0.0, -p.minCoeff(), p.maxCoeff() - 1.0});
    cert.observe(std::max(range, std::abs(p.sum() - 1.0)), p);
  }
  return cert.finish();
}

ConeCertificate check_pure_state(const ProbModel& model, const Element& e, int samples,
                                 std::uint64_t seed, double tol) {
  ConeCertificate cert("pure-state", tol, seed);
  const State alpha = pure_state_of(model, e, tol);
  cert.observe(std::abs(alpha.probability(e) - 1.0), e.coords);
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    const Element f = random_primitive_idempotent(model.algebra, rng);
    const double p = alpha.probability(f);
    cert.observe(std::max({0.0, -p, p - 1.0}), f.coords);
  }
  for (const auto& f : model.outcome_pool) {
    const double p = alpha.probability(f);
    cert.observe(std::max({0.0, -p, p - 1.0}), f.coords);
  }
  return cert.finish();
}

ConeCertificate certify_unital_sharp(const ProbModel& model, int samples, std::uint64_t seed,
                                     double tol) {
  ConeCertificate cert("unital-sharp", tol, seed);
  const Algebra& A = model.algebra;
  Rng rng = make_rng(seed);
  int uncertifiable = 0;
  for (const auto& x : model.outcome_pool) {
    // the largest probability any state assigns to x
    const double reach = max_eigenvalue(A, x);
    if (reach < 1.0 - tol) {
      cert.observe(1.0 - reach, x.coords);
      cert.note("outcome not unital: largest probability " + std::to_string(reach));
      continue;
    }
    cert.observe(0.0);
    if (!is_primitive(A, x, tol)) {
      ++uncertifiable;
      continue;
    }
    const State at_x = pure_state_of(model, x, tol);
    cert.observe(std::abs(at_x.probability(x) - 1.0), x.coords);
    for (int t = 0; t < samples; ++t) {
      // states approaching x along random directions
      const double mix = std::pow(10.0, -1.0 - 8.0 * static_cast<double>(t) / std::max(1, samples - 1));
      const Element w = (1.0 - mix) * x + mix * random_state_representer(A, rng);
      const double deficit = std::max(0.0, 1.0 - trace_form(A, w, x));
      cert.observe(std::max(0.0, norm(A, w - x) - std::sqrt(2.0 * deficit) - tol), w.coords);
    }
  }
  if (uncertifiable > 0)
    cert.note(std::to_string(uncertifiable) +
              " unital non-primitive outcome(s): sharpness not certifiable by this method");
  return cert.finish();
}

ConeCertificate check_unital_primitive(const ProbModel& model, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("unital-primitive", tol, seed);
  const ConeCertificate uniform = check_uniform(model, tol);
  if (!uniform.passed) return cert.skip("model is not uniform");
  const Algebra& A = model.algebra;
  std::vector<Element> outcomes = model.outcome_pool;
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t)
    for (auto& x : random_jordan_frame(A, rng)) outcomes.push_back(std::move(x));

  int non_unital = 0;
  for (const auto& x : outcomes) {
    if (max_eigenvalue(A, x) < 1.0 - tol) {
      ++non_unital;
      continue;
    }
    cert.observe(is_primitive(A, x, tol) ? 0.0 : 1.0, x.coords);
  }
  if (non_unital > 0)
    cert.note(std::to_string(non_unital) + " non-unital outcome(s), not counted");
  return cert.finish();
}

ConeCertificate check_unit_stabilizer(const Algebra& A, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("unit-stabilizer", tol, seed);
  const int d = A.dim();
  const Eigen::VectorXd u = unit(A).coords;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);

  std::vector<LinearOperator> transporters;
  for (int k = 0; k < d; ++k) transporters.push_back(left_mult_operator(A, basis_element(A, k)));
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;

  // exp of a random derivation sum c_ij [L_i, L_j]
  auto random_rotation = [&]() -> LinearOperator {
    LinearOperator D = LinearOperator::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        D += normal(rng) * (transporters[i] * transporters[j] - transporters[j] * transporters[i]);
    if (D.norm() == 0.0) return id;
    return matrix_exp(D * (2.0 / D.norm()));
  };
  auto random_transvection = [&]() -> LinearOperator {
    Element w = random_interior_point(A, rng);
    w *= A.rank() / trace(A, w);
    return automorphism_to_point(A, w);
  };

  int fixing = 0;
  for (int t = 0; t < samples; ++t) {
    LinearOperator g;
    switch (t % 4) {
      case 0: g = random_rotation(); break;
      case 1: g = random_transvection(); break;
      case 2: g = random_rotation() * random_transvection(); break;
      default: g = random_transvection() * random_rotation(); break;
    }
    const double orth = (trace_adjoint(A, g) * g - id).cwiseAbs().maxCoeff();
    const double fix = (g * u - u).norm();
    if (fix <= tol) ++fixing;
    cert.observe((orth <= tol) == (fix <= tol) ? 0.0 : 1.0, Eigen::Map<const Eigen::VectorXd>(g.data(), g.size()));
  }
  cert.note(std::to_string(fixing) + " of " + std::to_string(samples) + " sampled maps fix u");
  return cert.finish();
}

}  // namespace hsd
