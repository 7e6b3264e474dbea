#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hsd {

/// A parse failure, positioned at 1-based line and column.
class ModelFileError : public std::runtime_error {
 public:
  ModelFileError(std::string source, int line, int column, const std::string& message);

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string source_;
  int line_;
  int column_;
};

/// "expect <check> pass|fail": the outcome a named certificate should have.
struct Expectation {
  std::string check;
  bool pass = true;

  bool operator==(const Expectation&) const = default;
};

using Coordinates = std::vector<double>;

struct SystemSpec {
  std::string name;
  std::string algebra;  // canonical descriptor
  bool sampled = true;
  int count = 1;
  std::optional<std::uint64_t> seed;  // derived from the run seed when absent
  std::vector<std::vector<Coordinates>> frames;  // explicit tests
  std::vector<Coordinates> states;
  bool uniform_state = false;
  std::vector<Expectation> expectations;

  bool operator==(const SystemSpec&) const = default;
};

struct CompositeSpec {
  std::string name;
  std::string part_a;
  std::string part_b;
  bool maximally_entangled = false;
  std::vector<Coordinates> states;  // carrier representers
  std::vector<Expectation> expectations;

  bool operator==(const CompositeSpec&) const = default;
};

/// Systems and composites in input order.
struct ModelFile {
  int version = 1;
  std::vector<SystemSpec> systems;
  std::vector<CompositeSpec> composites;

  const SystemSpec* find_system(std::string_view name) const;
  bool operator==(const ModelFile&) const = default;
};

/// Parses the line-based format:
///
///     hsdcert-model 1
///     system <name>
///       algebra <descriptor>
///       tests sampled <count> [seed <n>]  |  tests explicit
///       frame [x, ...] [x, ...] ...
///       state [x, ...]  |  state uniform
///       expect <check> pass|fail
///     end
///     composite <name>
///       parts <system> <system>
///       carrier candidate
///       state maximally-entangled  |  state [x, ...]
///       expect <check> pass|fail
///     end
///
/// '#' starts a comment. Throws ModelFileError.
ModelFile parse_model_file(std::string_view text, const std::string& source = "<input>");
ModelFile read_model_file(const std::filesystem::path& path);

/// Canonical text; parse(serialize(m)) == m.
std::string serialize(const ModelFile& file);

}  // namespace hsd
