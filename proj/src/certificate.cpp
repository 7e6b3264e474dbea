#include "hsd/certificate.hpp"

#include <cmath>
#include <sstream>

namespace hsd {
namespace {
constexpr std::size_t kMaxWitnesses = 3;
}

void ConeCertificate::observe(double residual) {
  ++samples;
  if (std::isnan(residual) || residual > worst_residual) worst_residual = residual;
}

void ConeCertificate::observe(double residual, const Eigen::VectorXd& witness) {
  observe(residual);
  if (!(residual <= tolerance)) add_witness(witness);
}

void ConeCertificate::add_witness(const Eigen::VectorXd& witness) {
  if (witnesses.size() >= kMaxWitnesses) return;
  witnesses.emplace_back(witness.data(), witness.data() + witness.size());
}

ConeCertificate& ConeCertificate::finish() {
  passed = worst_residual <= tolerance;
  return *this;
}

ConeCertificate& ConeCertificate::skip(std::string reason) {
  skipped = true;
  passed = true;
  notes.push_back("skipped: " + std::move(reason));
  return *this;
}

std::string to_text(const ConeCertificate& cert) {
  std::ostringstream out;
  out.precision(6);
  out << (cert.skipped ? "SKIP" : cert.passed ? "PASS" : "FAIL") << "  " << cert.check_name
      << "  residual=" << cert.worst_residual << " tol=" << cert.tolerance
      << " samples=" << cert.samples << " seed=" << cert.seed << "\n";
  for (const auto& n : cert.notes) out << "      note: " << n << "\n";
  for (const auto& w : cert.witnesses) {
    out << "      witness: [";
    for (std::size_t i = 0; i < w.size(); ++i) out << (i ? ", " : "") << w[i];
    out << "]\n";
  }
  return out.str();
}

}  // namespace hsd
