#include "hsd/cone.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hsd {
namespace {

constexpr int kRefineIterations = 300;

// Relative violation of cone membership, max(0, -min eig) / (1 + |x|).
double cone_violation(const Algebra& A, const Element& x) {
  return std::max(0.0, -min_eigenvalue(A, x)) / (1.0 + norm(A, x));
}

Element random_cone_sample(const Algebra& A, Rng& rng, int i) {
  return (i % 2 == 0) ? random_square(A, rng) : random_primitive_idempotent(A, rng);
}

// sum_i l_i e_i with l_i ~ N(0.7, 1): about half in the cone, many near its boundary.
Element random_mixed_sign(const Algebra& A, Rng& rng) {
  std::normal_distribution<double> normal(0.7, 1.0);
  Element x = zero(A);
  for (const auto& e : random_jordan_frame(A, rng)) x += e * normal(rng);
  return x;
}

Eigen::VectorXd concat(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd r(a.size() + b.size());
  r << a, b;
  return r;
}

}  // namespace

bool cone_contains(const Algebra& A, const Element& a, double tol) {
  return min_eigenvalue(A, a) >= -tol;
}

std::optional<Element> dual_cone_witness(const Algebra& A, const Element& a, int frame_count,
                                         std::uint64_t seed, double tol) {
  require_member(A, a);
  Rng rng = make_rng(seed);
  std::optional<Element> best;
  double best_value = std::numeric_limits<double>::infinity();
  auto consider = [&](const Element& e) {
    const double v = trace_form(A, a, e);
    if (v < best_value) {
      best_value = v;
      best = e;
    }
  };
  for (const auto& e : canonical_frame(A)) consider(e);
  for (int f = 0; f < frame_count; ++f)
    for (const auto& e : random_jordan_frame(A, rng)) consider(e);
  if (best_value < -tol) return best;

  // b = c u - a is positive definite; P(b) maps extreme rays to extreme rays and
  // favours the ray where <a, e> is smallest.
  const Element b = unit(A) * (norm(A, a) + 1.0) - a;
  const Element b2 = jordan_square(A, b);
  Element e = *best;
  double previous = best_value;
  for (int it = 0; it < kRefineIterations; ++it) {
    Element next = jordan_product(A, b, jordan_product(A, b, e)) * 2.0 - jordan_product(A, b2, e);
    next *= 1.0 / trace(A, next);
    e = std::move(next);
    const double v = trace_form(A, a, e);
    if (v < -tol) {
      // report the nearest primitive idempotent as the witness
      const Element ray = spectral_decompose(A, e).pairs.back().idempotent;
      if (trace_form(A, a, ray) < -tol) return ray;
      return e;
    }
    if (std::abs(previous - v) <= 1e-15 * (1.0 + std::abs(v))) break;
    previous = v;
  }
  return std::nullopt;
}

bool dual_cone_contains(const Algebra& A, const Element& a, int frame_count, std::uint64_t seed,
                        double tol) {
  return !dual_cone_witness(A, a, frame_count, seed, tol).has_value();
}

ConeCertificate check_self_duality_of_image(const Algebra& A, const LinearOperator& T, int samples,
                                            std::uint64_t seed, double tol) {
  if (T.rows() != A.dim() || T.cols() != A.dim())
    throw std::invalid_argument("check_self_duality_of_image: operator shape mismatch");
  ConeCertificate cert("self-duality", tol, seed);
  Rng rng = make_rng(seed);
  const LinearOperator T_inv = T.inverse();
  const LinearOperator T_adj = adjoint(A, T);

  // (i) K is contained in its dual: pairings of cone elements are nonnegative.
  for (int i = 0; i < samples; ++i) {
    const Element a(A, T * random_cone_sample(A, rng, i).coords);
    const Element b(A, T * random_cone_sample(A, rng, i + 1).coords);
    const double pairing = trace_form(A, a, b) / (norm(A, a) * norm(A, b));
    cert.observe(std::max(0.0, -pairing), concat(a.coords, b.coords));
  }
  // (ii) the dual is contained in K: elements pairing nonnegatively with every
  // sampled extreme ray of K lie in K. <x, T e> = <T* x, e>.
  for (int i = 0; i < samples; ++i) {
    const Element x(A, T * random_mixed_sign(A, rng).coords);
    const Element pulled(A, T_adj * x.coords);
    if (!dual_cone_contains(A, pulled, 4, derive_seed(seed, static_cast<std::uint64_t>(i)), tol)) {
      cert.observe(0.0);
      continue;
    }
    const Element preimage(A, T_inv * x.coords);
    cert.observe(std::max(0.0, -min_eigenvalue(A, preimage)) / (1.0 + norm(A, preimage)), x.coords);
  }
  return cert.finish();
}

ConeCertificate check_self_duality(const Algebra& A, int samples, std::uint64_t seed, double tol) {
  return check_self_duality_of_image(A, LinearOperator::Identity(A.dim(), A.dim()), samples, seed,
                                     tol);
}

ConeCertificate check_dual_agreement(const Algebra& A, int samples, std::uint64_t seed,
                                     int frame_count, double tol) {
  ConeCertificate cert("dual-agreement", 0.0, seed);
  Rng rng = make_rng(seed);
  int inside = 0;
  int disagreements = 0;
  for (int i = 0; i < samples; ++i) {
    const Element x = (i % 2 == 0) ? random_element(A, rng) : random_mixed_sign(A, rng);
    const bool spectral = cone_contains(A, x, tol);
    const bool dual =
        dual_cone_contains(A, x, frame_count, derive_seed(seed, static_cast<std::uint64_t>(i)), tol);
    inside += spectral ? 1 : 0;
    ++cert.samples;
    if (spectral != dual) {
      ++disagreements;
      cert.add_witness(x.coords);
    }
  }
  // residual counts disagreements
  cert.worst_residual = disagreements;
  cert.note("elements in cone: " + std::to_string(inside) + " of " + std::to_string(samples));
  return cert.finish();
}

bool is_interior(const Algebra& A, const Element& w) {
  return min_eigenvalue(A, w) > 1e-8 * (1.0 + norm(A, w));
}

LinearOperator automorphism_to_point(const Algebra& A, const Element& w) {
  require_member(A, w);
  if (!is_interior(A, w))
    throw std::domain_error("automorphism_to_point: point is not in the cone interior");
  return quadratic_representation(A, jordan_sqrt(A, w));
}

LinearOperator inverse_automorphism_to_point(const Algebra& A, const Element& w) {
  require_member(A, w);
  if (!is_interior(A, w))
    throw std::domain_error("inverse_automorphism_to_point: point is not in the cone interior");
  return quadratic_representation(
      A, spectral_function(A, w, [](double x) { return 1.0 / std::sqrt(x); }));
}

LinearOperator adjoint(const Algebra& A, const LinearOperator& g) { return trace_adjoint(A, g); }

ConeCertificate check_cone_preserving(const Algebra& A, const LinearOperator& g,
                                      const std::string& name, int samples, std::uint64_t seed,
                                      double tol) {
  ConeCertificate cert(name, tol, seed);
  Rng rng = make_rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Element p = random_cone_sample(A, rng, i);
    const Element image(A, g * p.coords);
    cert.observe(cone_violation(A, image), p.coords);
  }
  return cert.finish();
}

ConeCertificate check_adjoint_automorphism(const Algebra& A, const LinearOperator& g, int samples,
                                           std::uint64_t seed, double tol) {
  return check_cone_preserving(A, adjoint(A, g), "adjoint-automorphism", samples, seed, tol);
}

bool effect_interval_check(const Algebra& A, const Element& a, double tol) {
  return cone_contains(A, a, tol) && cone_contains(A, unit(A) - a, tol);
}

ConeCertificate check_homogeneity_transport(const Algebra& A, int samples, std::uint64_t seed,
                                            double tol) {
  ConeCertificate cert("homogeneity-transport", tol, seed);
  Rng rng = make_rng(seed);
  const Eigen::VectorXd u = unit(A).coords;
  for (int i = 0; i < samples; ++i) {
    const Element w = random_interior_point(A, rng);
    const LinearOperator g = automorphism_to_point(A, w);
    cert.observe(norm(A, Element(A, g * u) - w), w.coords);
  }
  return cert.finish();
}

ConeCertificate check_homogeneity_preservation(const Algebra& A, int points, int samples,
                                               std::uint64_t seed, double tol) {
  ConeCertificate cert("homogeneity-cone-preservation", tol, seed);
  Rng rng = make_rng(seed);
  for (int i = 0; i < points; ++i) {
    const Element w = random_interior_point(A, rng);
    const LinearOperator g = automorphism_to_point(A, w);
    const LinearOperator g_inv = inverse_automorphism_to_point(A, w);
    for (int j = 0; j < samples; ++j) {
      const Element p = random_cone_sample(A, rng, j);
      cert.observe(cone_violation(A, Element(A, g * p.coords)), concat(w.coords, p.coords));
      cert.observe(cone_violation(A, Element(A, g_inv * p.coords)), concat(w.coords, p.coords));
    }
  }
  return cert.finish();
}

ConeCertificate check_automorphism_closure(const Algebra& A, int samples, std::uint64_t seed,
                                           double tol) {
  ConeCertificate cert("automorphism-closure", tol, seed);
  Rng rng = make_rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Element w1 = random_interior_point(A, rng);
    const Element w2 = random_interior_point(A, rng);
    const LinearOperator g = automorphism_to_point(A, w2) * automorphism_to_point(A, w1);
    const Element p = random_cone_sample(A, rng, i);
    cert.observe(cone_violation(A, Element(A, g * p.coords)), p.coords);
  }
  return cert.finish();
}

ConeCertificate check_adjoint_of_products(const Algebra& A, int samples, std::uint64_t seed,
                                          double tol) {
  ConeCertificate cert("adjoint-automorphism", tol, seed);
  Rng rng = make_rng(seed);
  for (int i = 0; i < samples; ++i) {
    LinearOperator g = LinearOperator::Identity(A.dim(), A.dim());
    for (int k = 0; k < 3; ++k) g = automorphism_to_point(A, random_interior_point(A, rng)) * g;
    const Element p = random_cone_sample(A, rng, i);
    cert.observe(cone_violation(A, Element(A, adjoint(A, g) * p.coords)), p.coords);
  }
  return cert.finish();
}

ConeCertificate check_order_unit(const Algebra& A, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("order-unit", tol, seed);
  Rng rng = make_rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Element a = random_square(A, rng);
    const double t = 1.0 / max_eigenvalue(A, a);
    cert.observe(cone_violation(A, unit(A) - a * t), a.coords);
  }
  return cert.finish();
}

}  // namespace hsd
