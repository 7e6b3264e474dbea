#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsd/runner.hpp"

#include <regex>

using namespace hsd;

namespace {

const char* kMinimal = R"(hsdcert-model 1
system q
  algebra complex 2
  tests sampled 4 seed 9
end
)";

const char* kFull = R"(hsdcert-model 1
# comment line
system left   # trailing comment
  algebra   sum( real 1 ,spin 2 )
  tests explicit
  frame [1, 0, 0, 0] [0, 0.5, 0.5, 0] [0, 0.5, -0.5, 0]
  frame [1,0,0,0] [0,0.5,0,0.5] [0,0.5,0,-0.5]
  state uniform
  state [0.5, 0.25, 0, 0]
  expect outcome-span pass
end

system right
  algebra complex 2
  tests sampled 5
end

composite both
  parts right right
  carrier candidate
  state maximally-entangled
  state [0.25, 0.25, 0.25, 0.25, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]
  expect local-tomography pass
end
)";

ModelFile parse(const std::string& text) { return parse_model_file(text, "test"); }

void check_error(const std::string& text, int line, int column, const std::string& fragment) {
  CAPTURE(text);
  try {
    parse(text);
    FAIL("no error");
  } catch (const ModelFileError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
    CHECK(std::string(e.what()).find(fragment) != std::string::npos);
  }
}

RunConfig config_for(const std::string& input) {
  RunConfig cfg;
  cfg.input_path = input;
  cfg.samples = 20;
  return cfg;
}

}  // namespace

TEST_CASE("minimal file") {
  const ModelFile f = parse(kMinimal);
  REQUIRE(f.systems.size() == 1);
  CHECK(f.systems[0].name == "q");
  CHECK(f.systems[0].algebra == "complex 2");
  CHECK(f.systems[0].sampled);
  CHECK(f.systems[0].count == 4);
  CHECK(f.systems[0].seed == 9u);
  CHECK(f.composites.empty());
}

TEST_CASE("full file and round trip") {
  const ModelFile f = parse(kFull);
  REQUIRE(f.systems.size() == 2);
  const SystemSpec& left = f.systems[0];
  CHECK(left.algebra == "sum(real 1, spin 2)");
  CHECK_FALSE(left.sampled);
  CHECK(left.count == 2);
  REQUIRE(left.frames.size() == 2);
  CHECK(left.frames[0][1] == Coordinates{0, 0.5, 0.5, 0});
  CHECK(left.uniform_state);
  CHECK(left.states.size() == 1);
  CHECK(left.expectations == std::vector<Expectation>{{"outcome-span", true}});
  CHECK_FALSE(f.systems[1].seed.has_value());
  REQUIRE(f.composites.size() == 1);
  CHECK(f.composites[0].part_a == "right");
  CHECK(f.composites[0].maximally_entangled);
  CHECK(f.composites[0].states[0].size() == 16);

  const std::string once = serialize(f);
  CHECK(parse(once) == f);
  CHECK(serialize(parse(once)) == once);

  // numbers survive exactly
  ModelFile g = f;
  g.systems[0].states[0] = {0.1, 1.0 / 3.0, -2.5e-17, 6.02e23};
  CHECK(parse(serialize(g)) == g);
}

TEST_CASE("diagnostics carry line and column") {
  check_error("", 1, 1, "empty input");
  check_error("hsdcert-model 2\n", 1, 15, "unsupported format version");
  check_error("model 1\n", 1, 1, "expected 'hsdcert-model 1'");
  check_error("hsdcert-model 1\nsystem a\n  algebra quux 2\n  tests sampled 1\nend\n", 3, 11, "unknown family tag 'quux'");
  check_error("hsdcert-model 1\nsystem a\n  algebra sum(real 2, octo 3)\n  tests sampled 1\nend\n", 3, 23, "'octo'");
  check_error("hsdcert-model 1\nsystem a\n  algebra real 2\n  tests sampled 0\nend\n", 4, 17, "invalid test count");
  check_error("hsdcert-model 1\nsystem a\n  algebra real 2\n  tests sampled 3 sed 4\nend\n", 4, 19, "expected 'seed'");
  check_error("hsdcert-model 1\nsystem a\n  algebra real 2\n  tests guessed\nend\n", 4, 9, "unknown test mode 'guessed'");
  check_error("hsdcert-model 1\nsystem a\n  algebra real 2\n  tests explicit\n  frame [1, 0, x]\nend\n", 5, 16,
              "invalid number");
  check_error("hsdcert-model 1\nsystem a\n  algebra real 2\n  tests explicit\n  frame [1, 0 0]\nend\n", 5, 15,
              "expected ',' or ']'");
  check_error("hsdcert-model 1\nsystem a\n  algebra real 2\n  tests explicit\n  frame [1, 0\nend\n", 5, 9,
              "unterminated");
  check_error("hsdcert-model 1\nsystem a\n  algebra real 2\n  tests sampled 2\n  colour red\nend\n", 5, 3,
              "unknown system directive 'colour'");
  check_error("hsdcert-model 1\nsystem a\n  algebra real 2\n  tests sampled 2\n", 2, 1, "missing 'end'");
  check_error("hsdcert-model 1\nsystem a\n  tests sampled 2\nend\n", 2, 1, "no 'algebra'");
  check_error("hsdcert-model 1\nsystem a\n  algebra real 2\n  tests sampled 2\nend\nsystem a\n", 6, 8, "duplicate name");
  check_error(std::string(kMinimal) + "composite c\n  parts q r\n  carrier candidate\nend\n", 7, 11, "unknown system 'r'");
  check_error(std::string(kMinimal) + "composite c\n  parts q q\n  carrier naive\nend\n", 8, 11, "unknown carrier");
  check_error(std::string(kMinimal) + "composite c\n  parts q q\n  carrier candidate\n  expect hanche-olsen maybe\nend\n",
              9, 23, "expected 'pass' or 'fail'");
  check_error(std::string(kMinimal) + "widget w\n", 6, 1, "expected 'system' or 'composite'");
}

TEST_CASE("configuration validation") {
  RunConfig cfg = config_for("demo:qubit-pair");
  CHECK_NOTHROW(validate(cfg));
  cfg.suites.clear();
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = config_for("demo:qubit-pair");
  cfg.samples = 0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = config_for("demo:qubit-pair");
  cfg.tol = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = config_for("demo:qubit-pair");
  cfg.suites = {"algebra", "astrology"};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  CHECK_THROWS_AS(load_input(config_for("demo:none")), std::invalid_argument);
  CHECK_THROWS_AS(load_input(config_for("/nonexistent/model.txt")), std::runtime_error);
}

TEST_CASE("bundled demos meet their expectations") {
  CHECK(demo_names() == std::vector<std::string>{"quabit-pair", "qubit-pair", "rebit-pair", "spin-vs-qubit"});
  for (const auto& name : demo_names()) {
    CAPTURE(name);
    const RunConfig cfg = config_for("demo:" + name);
    const Report report = run(cfg, load_input(cfg));
    CHECK(report.exit_code() == 0);
    CHECK(report.certificate_count() > 40);
    for (const auto& s : report.systems) CHECK(s.unmatched_expectations.empty());
  }
  const RunConfig spin = config_for("demo:spin-vs-qubit");
  CHECK(run(spin, load_input(spin)).qubit_witness);
  const RunConfig rebit = config_for("demo:rebit-pair");
  CHECK_FALSE(run(rebit, load_input(rebit)).qubit_witness);
}

TEST_CASE("structured reports are deterministic") {
  const RunConfig cfg = config_for("demo:qubit-pair");
  const std::string first = to_structured(run(cfg, load_input(cfg)));
  const std::string second = to_structured(run(cfg, load_input(cfg)));
  CHECK(first == second);
  CHECK(first.find("\"schema_version\": 1") != std::string::npos);

  RunConfig other = cfg;
  other.seed = 2;
  CHECK(to_structured(run(other, load_input(other))) != first);
}

TEST_CASE("removing an expectation exposes exactly that failure") {
  std::string text = demo_model("rebit-pair");
  const std::string line = "  expect local-tomography fail\n";
  text.erase(text.find(line), line.size());
  const Report report = run(config_for("edited"), parse(text));
  CHECK(report.exit_code() == 1);
  CHECK(report.unexpected_count() == 1);
  for (const auto& s : report.systems)
    for (const auto& c : s.checks)
      if (!c.as_expected()) CHECK(c.certificate.check_name == "local-tomography");
}

TEST_CASE("report contents") {
  const ModelFile f = parse(kFull);
  RunConfig cfg = config_for("full");
  cfg.suites = {"model", "composite"};
  const Report report = run(cfg, f);
  REQUIRE(report.systems.size() == 3);
  const SystemReport& left = report.systems[0];
  CHECK(left.algebra == "sum(real 1, spin 2)");
  CHECK(left.tests == 2);
  int states = 0;
  for (const auto& c : left.checks) {
    if (c.certificate.check_name == "outcome-span") {
      CHECK(c.certificate.passed);
      CHECK(c.expected_pass == true);
    }
    if (c.certificate.check_name == "state-normalization") ++states;
  }
  CHECK(states == 2);
  const SystemReport& both = report.systems[2];
  CHECK(both.kind == "composite");
  CHECK(both.dim_a == 4);
  CHECK(both.embed_rank == 16);
  CHECK(both.locally_tomographic);
  int nonsignaling = 0;
  for (const auto& c : both.checks) nonsignaling += c.certificate.check_name == "non-signaling";
  CHECK(nonsignaling == 3);
  CHECK(report.exit_code() == 0);

  const std::string text = to_text(report);
  CHECK(text.find("composite both: complex 4 (dim 16, rank 4, dim A 4 x dim B 4, embed rank 16, locally tomographic)") !=
        std::string::npos);
  CHECK(text.find("[expected pass]") != std::string::npos);

  // expecting a failure that does not happen is itself unexpected
  ModelFile flipped = f;
  flipped.systems[1].expectations.push_back({"uniform", false});
  const Report flipped_report = run(cfg, flipped);
  CHECK(flipped_report.exit_code() == 1);
  CHECK(flipped_report.unexpected_count() == 1);
  CHECK(to_text(flipped_report).find("[expected fail]  <-- UNEXPECTED") != std::string::npos);

  ModelFile unmatched = f;
  unmatched.systems[1].expectations.push_back({"no-such-check", true});
  const Report warned = run(cfg, unmatched);
  CHECK(warned.systems[1].unmatched_expectations == std::vector<std::string>{"no-such-check"});
  CHECK(to_text(warned).find("warning: expectation for 'no-such-check'") != std::string::npos);
}

TEST_CASE("invalid model content is rejected") {
  RunConfig cfg = config_for("bad");
  cfg.suites = {"model"};
  ModelFile f = parse(kFull);
  f.systems[0].states[0] = {0.5, 0.5, 0.5, 0};
  CHECK_THROWS_WITH_AS(run(cfg, f), doctest::Contains("system 'left' state 1"), std::invalid_argument);
  f = parse(kFull);
  f.systems[0].frames[0].pop_back();
  CHECK_THROWS_WITH_AS(run(cfg, f), doctest::Contains("does not sum to u"), std::invalid_argument);
  f = parse(kFull);
  f.systems[0].frames[0][0] = {1, 0};
  CHECK_THROWS_WITH_AS(run(cfg, f), doctest::Contains("expected 4 coordinates"), std::invalid_argument);
  f = parse(kFull);
  f.composites[0].part_a = "left";
  CHECK_THROWS_WITH_AS(run(cfg, f), doctest::Contains("no Kronecker candidate"), std::invalid_argument);
}
