#pragma once

#include "hsd/certificate.hpp"
#include "hsd/model_file.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hsd {

enum class OutputFormat { Text, Structured };

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> suites{"algebra", "cone", "kv", "model", "composite"};
  return suites;
}

struct RunConfig {
  std::string input_path;  // file path, or "demo:<name>"
  std::vector<std::string> suites = all_suites();
  double tol = 1e-9;
  int samples = 100;
  std::uint64_t seed = 1;
  OutputFormat output_format = OutputFormat::Text;
};

/// Throws std::invalid_argument unless samples >= 1, tol > 0 and the suites are a
/// nonempty subset of all_suites().
void validate(const RunConfig& config);

struct CheckResult {
  std::string suite;
  ConeCertificate certificate;
  std::optional<bool> expected_pass;

  bool as_expected() const { return certificate.passed == expected_pass.value_or(true); }
};

/// Certificates of one system or composite, in execution order.
struct SystemReport {
  std::string kind;  // "system" or "composite"
  std::string name;
  std::string algebra;
  int dim = 0;
  int rank = 0;
  int tests = 0;
  int outcomes = 0;
  // composites only
  int dim_a = 0, dim_b = 0, embed_rank = 0;
  bool locally_tomographic = false;
  std::vector<CheckResult> checks;
  std::vector<std::string> unmatched_expectations;
};

struct Report {
  static constexpr int kSchemaVersion = 1;
  RunConfig config;
  std::vector<SystemReport> systems;
  bool qubit_witness = false;

  int certificate_count() const;
  int unexpected_count() const;
  /// 0 when every certificate matches its expectation, 1 otherwise.
  int exit_code() const { return unexpected_count() == 0 ? 0 : 1; }
};

/// Runs the configured suites on every system, then every composite, in file order.
/// Invalid model content (bad coordinates, non-frames) throws std::invalid_argument.
Report run(const RunConfig& config, const ModelFile& file);

std::string to_text(const Report& report);
/// Versioned JSON document; byte-identical for identical inputs.
std::string to_structured(const Report& report);

std::vector<std::string> demo_names();
/// Model file text of a bundled demo. Throws std::invalid_argument for unknown names.
std::string demo_model(const std::string& name);

/// Reads config.input_path, accepting "demo:<name>" for bundled demos.
ModelFile load_input(const RunConfig& config);

}  // namespace hsd
