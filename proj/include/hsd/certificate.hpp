#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace hsd {

/// Pass/fail record of one sampled check.
///
/// `passed` holds exactly when `worst_residual <= tolerance`; a failing
/// certificate carries at least one witness (coordinates of a counterexample).
/// Skipped certificates record a check whose hypothesis did not hold.
struct ConeCertificate {
  std::string check_name;
  bool passed = false;
  bool skipped = false;
  int samples = 0;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> witnesses;
  std::vector<std::string> notes;

  ConeCertificate() = default;
  ConeCertificate(std::string name, double tol, std::uint64_t seed_value)
      : check_name(std::move(name)), tolerance(tol), seed(seed_value) {}

  /// Records one sample; `witness` is kept when the residual exceeds the tolerance.
  void observe(double residual, const Eigen::VectorXd& witness);
  void observe(double residual);
  void add_witness(const Eigen::VectorXd& witness);
  void note(std::string text) { notes.push_back(std::move(text)); }

  /// Sets `passed` from the worst residual and returns *this.
  ConeCertificate& finish();
  ConeCertificate& skip(std::string reason);
};

/// Multi-line human-readable rendering.
std::string to_text(const ConeCertificate& cert);

}  // namespace hsd
