#include "hsd/algebra_checks.hpp"

#include <algorithm>
#include <cmath>

namespace hsd {

ConeCertificate check_jordan_axioms(const Algebra& A, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("jordan-axioms", tol, seed);
  const Element u = unit(A);
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    const Element a = random_element(A, rng);
    const Element b = random_element(A, rng);
    const double scale = 1.0 + norm(A, a) * norm(A, b);
    const double comm = norm(A, jordan_product(A, a, b) - jordan_product(A, b, a)) / scale;
    const double unit_law = norm(A, jordan_product(A, u, a) - a) / (1.0 + norm(A, a));
    cert.observe(std::max({check_jordan_identity(A, a, b), comm, unit_law}), a.coords);
  }
  return cert.finish();
}

ConeCertificate check_formal_reality(const Algebra& A, int samples, std::uint64_t seed) {
  ConeCertificate cert("formal-reality", 0.0, seed);
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    const Element a = random_element(A, rng);
    const Element b = random_element(A, rng);
    cert.observe(hsd::check_formal_reality(A, a, b) ? 0.0 : 1.0, a.coords);
  }
  return cert.finish();
}

ConeCertificate check_spectral(const Algebra& A, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("spectral", tol, seed);
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    const Element a = random_element(A, rng);
    const SpectralDecomposition sd = spectral_decompose(A, a);
    const double scale = 1.0 + norm(A, a);
    double residual = norm(A, sd.reconstruct() - a) / scale;
    for (std::size_t i = 0; i < sd.pairs.size(); ++i) {
      const Element& p = sd.pairs[i].idempotent;
      residual = std::max(residual, norm(A, jordan_square(A, p) - p));
      for (std::size_t j = i + 1; j < sd.pairs.size(); ++j)
        residual = std::max(residual, norm(A, jordan_product(A, p, sd.pairs[j].idempotent)));
    }
    cert.observe(residual, a.coords);
  }
  return cert.finish();
}

ConeCertificate check_frames(const Algebra& A, int samples, std::uint64_t seed, double tol) {
  ConeCertificate cert("jordan-frames", tol, seed);
  Rng rng = make_rng(seed);
  for (int t = 0; t < samples; ++t) {
    const std::vector<Element> frame = t == 0 ? canonical_frame(A) : random_jordan_frame(A, rng);
    Element total = zero(A);
    double residual = static_cast<int>(frame.size()) == A.rank() ? 0.0 : 1.0;
    for (std::size_t i = 0; i < frame.size(); ++i) {
      total += frame[i];
      if (!is_primitive(A, frame[i], tol)) residual = std::max(residual, 1.0);
      for (std::size_t j = i + 1; j < frame.size(); ++j)
        residual = std::max(residual, norm(A, jordan_product(A, frame[i], frame[j])));
    }
    residual = std::max(residual, norm(A, total - unit(A)));
    cert.observe(residual, total.coords);
  }
  return cert.finish();
}

}  // namespace hsd
