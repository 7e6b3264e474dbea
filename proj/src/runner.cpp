#include "hsd/runner.hpp"

#include "hsd/algebra_checks.hpp"
#include "hsd/composite.hpp"
#include "hsd/cone.hpp"
#include "hsd/koecher_vinberg.hpp"
#include "hsd/prob_model.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hsd {
namespace {

bool wants(const RunConfig& config, const std::string& suite) {
  return std::find(config.suites.begin(), config.suites.end(), suite) != config.suites.end();
}

Element element_from(const Algebra& A, const Coordinates& xs, const std::string& where) {
  if (static_cast<int>(xs.size()) != A.dim())
    throw std::invalid_argument(where + ": expected " + std::to_string(A.dim()) + " coordinates for " + A.to_string() +
                                ", found " + std::to_string(xs.size()));
  return Element(A, Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size())));
}

// Collects certificates for one block, assigning seeds by position and
// converting exceptions into failing certificates.
class Block {
 public:
  Block(SystemReport& report, std::uint64_t seed) : report_(report), seed_(seed) {}

  std::uint64_t next_seed() { return derive_seed(seed_, counter_++); }

  void add(const std::string& suite, const std::string& name, const std::function<ConeCertificate(std::uint64_t)>& check) {
    const std::uint64_t seed = next_seed();
    ConeCertificate cert;
    try {
      cert = check(seed);
    } catch (const std::exception& e) {
      cert = ConeCertificate(name, 0.0, seed);
      cert.note(std::string("error: ") + e.what());
      cert.observe(std::numeric_limits<double>::infinity());
      cert.finish();
    }
    report_.checks.push_back({suite, std::move(cert), std::nullopt});
  }

  void apply(const std::vector<Expectation>& expectations) {
    for (const auto& e : expectations) {
      bool matched = false;
      for (auto& c : report_.checks)
        if (c.certificate.check_name == e.check) {
          c.expected_pass = e.pass;
          matched = true;
        }
      if (!matched) report_.unmatched_expectations.push_back(e.check);
    }
  }

 private:
  SystemReport& report_;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

ProbModel build_model(const SystemSpec& spec, std::uint64_t fallback_seed) {
  const Algebra A = parse_algebra(spec.algebra);
  if (spec.sampled) return make_model(A, spec.count, spec.seed.value_or(fallback_seed));
  std::vector<Test> tests;
  for (std::size_t f = 0; f < spec.frames.size(); ++f) {
    Test test;
    for (const auto& x : spec.frames[f])
      test.push_back(element_from(A, x, "system '" + spec.name + "' frame " + std::to_string(f + 1)));
    tests.push_back(std::move(test));
  }
  try {
    return make_model(A, std::move(tests));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("system '" + spec.name + "': " + e.what());
  }
}

std::vector<State> declared_states(const SystemSpec& spec, const ProbModel& model) {
  std::vector<State> states;
  if (spec.uniform_state) states.push_back(uniform_state(model));
  for (std::size_t k = 0; k < spec.states.size(); ++k) {
    const std::string where = "system '" + spec.name + "' state " + std::to_string(k + 1);
    try {
      states.push_back(make_state(model.algebra, element_from(model.algebra, spec.states[k], where)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string(e.what()).find(where) == 0 ? e.what() : where + ": " + e.what());
    }
  }
  return states;
}

SystemReport run_system(const RunConfig& config, const SystemSpec& spec, const ProbModel& model,
                        std::uint64_t seed) {
  const Algebra& A = model.algebra;
  SystemReport r;
  r.kind = "system";
  r.name = spec.name;
  r.algebra = A.to_string();
  r.dim = A.dim();
  r.rank = A.rank();
  r.tests = static_cast<int>(model.tests.size());
  r.outcomes = static_cast<int>(model.outcome_pool.size());
  const std::vector<State> states = declared_states(spec, model);
  const int n = config.samples;
  const double tol = config.tol;
  Block block(r, seed);

  if (wants(config, "algebra")) {
    block.add("algebra", "jordan-axioms", [&](auto s) { return check_jordan_axioms(A, n, s, tol); });
    block.add("algebra", "formal-reality", [&](auto s) { return check_formal_reality(A, n, s); });
    block.add("algebra", "spectral", [&](auto s) { return check_spectral(A, n, s, tol); });
    block.add("algebra", "jordan-frames", [&](auto s) { return check_frames(A, n, s, tol); });
  }
  if (wants(config, "cone")) {
    block.add("cone", "self-duality", [&](auto s) { return check_self_duality(A, n, s, tol); });
    block.add("cone", "dual-agreement", [&](auto s) { return check_dual_agreement(A, n, s, 8, tol); });
    block.add("cone", "homogeneity-transport",
              [&](auto s) { return check_homogeneity_transport(A, n, s, std::max(1e-8, tol)); });
    block.add("cone", "homogeneity-preservation",
              [&](auto s) { return check_homogeneity_preservation(A, n / 10 + 1, 10, s, tol); });
    block.add("cone", "automorphism-closure", [&](auto s) { return check_automorphism_closure(A, n, s, tol); });
    block.add("cone", "adjoint-automorphism", [&](auto s) { return check_adjoint_of_products(A, n, s, tol); });
    block.add("cone", "order-unit", [&](auto s) { return check_order_unit(A, n, s, tol); });
  }
  if (wants(config, "kv")) {
    ReconstructionReport kv;
    const std::uint64_t s = block.next_seed();
    bool ok = true;
    block.add("kv", "kv-closure", [&](auto) {
      ConeCertificate c("kv-closure", 0.0, s);
      try {
        kv = run_koecher_vinberg(A, n, s);
      } catch (...) {
        ok = false;
        throw;
      }
      c.note("dim g = " + std::to_string(kv.g_dim) + ", dim p = " + std::to_string(kv.p_dim) +
             ", dim k = " + std::to_string(kv.k_dim));
      c.observe(0.0);
      return c.finish();
    });
    if (ok)
      for (const auto& cert : kv.certificates) block.add("kv", cert.check_name, [&](auto) { return cert; });
  }
  if (wants(config, "model")) {
    block.add("model", "test-normalization", [&](auto) { return check_test_normalization(model, tol); });
    block.add("model", "outcome-span", [&](auto) { return check_outcome_span(model); });
    block.add("model", "uniform", [&](auto) { return check_uniform(model, std::max(tol, 1e-10)); });
    block.add("model", "unital-sharp", [&](auto s) { return certify_unital_sharp(model, std::min(n, 10), s, tol); });
    block.add("model", "unital-primitive", [&](auto s) { return check_unital_primitive(model, n / 10 + 1, s, tol); });
    if (!model.tests.front().empty() && is_primitive(A, model.tests.front().front(), tol))
      block.add("model", "pure-state",
                [&](auto s) { return check_pure_state(model, model.tests.front().front(), n, s, tol); });
    for (const auto& state : states)
      block.add("model", "state-normalization", [&](auto) { return check_state(model, state, std::max(tol, 1e-10)); });
    block.add("model", "unit-stabilizer", [&](auto s) { return check_unit_stabilizer(A, n, s); });
    if (A.family() == Family::SpinFactor && A.size() == 3)
      block.add("model", "spin-qubit-isomorphism", [&](auto s) { return spin_qubit_isomorphism(n, s); });
  }
  block.apply(spec.expectations);
  return r;
}

SystemReport run_composite(const RunConfig& config, const CompositeSpec& spec, const ProbModel& a, const ProbModel& b,
                           std::uint64_t seed) {
  const CompositeSystem c = [&] {
    try {
      return candidate_composite(a, b);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("composite '" + spec.name + "': " + e.what());
    }
  }();
  SystemReport r;
  r.kind = "composite";
  r.name = spec.name;
  r.algebra = c.carrier.to_string();
  r.dim = c.carrier.dim();
  r.rank = c.carrier.rank();
  r.tests = static_cast<int>(a.tests.size() * b.tests.size());
  r.dim_a = a.algebra.dim();
  r.dim_b = b.algebra.dim();
  r.embed_rank = c.embed_rank;
  r.locally_tomographic = c.locally_tomographic;

  std::vector<std::pair<std::string, State>> states;
  for (std::size_t k = 0; k < spec.states.size(); ++k) {
    const std::string where = "composite '" + spec.name + "' state " + std::to_string(k + 1);
    try {
      states.emplace_back(where, make_state(c.carrier, element_from(c.carrier, spec.states[k], where)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string(e.what()).find(where) == 0 ? e.what() : where + ": " + e.what());
    }
  }
  if (spec.maximally_entangled) {
    try {
      states.emplace_back("maximally entangled", maximally_entangled_state(c));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("composite '" + spec.name + "': " + e.what());
    }
  }

  const int n = config.samples;
  const double tol = config.tol;
  const double fine = tol / 10.0;
  Block block(r, seed);
  if (wants(config, "composite")) {
    block.add("composite", "local-tomography", [&](auto) { return local_tomography_audit(c); });
    block.add("composite", "product-tests", [&](auto) { return check_product_tests(c, tol); });
    block.add("composite", "product-states", [&](auto s) { return check_product_states(c, n, s, fine); });
    block.add("composite", "non-signaling", [&](auto) {
      ConeCertificate cert = nonsignaling_check(c, product_state(c, uniform_state(a), uniform_state(b)), fine);
      cert.note("product of uniform states");
      return cert;
    });
    for (const auto& [label, state] : states)
      block.add("composite", "non-signaling", [&, label = label, state = state](auto) {
        ConeCertificate cert = nonsignaling_check(c, state, fine);
        cert.note(label);
        return cert;
      });
    block.add("composite", "non-signaling-sampled", [&](auto s) {
      ConeCertificate cert = nonsignaling_sampled(c, n, s, fine);
      cert.check_name = "non-signaling-sampled";
      return cert;
    });
    block.add("composite", "trace-factorization", [&](auto s) { return factorization_check(c, n, s, fine); });
    block.add("composite", "tensor-adjoint", [&](auto s) { return tensor_adjoint_check(c, n, s, tol); });
    block.add("composite", "tensor-Lmap", [&](auto s) { return tensor_Lmap_check(c, n, s, tol); });
    block.add("composite", "hanche-olsen", [&](auto s) { return hanche_olsen_check(c, n, s, tol); });
  }
  block.apply(spec.expectations);
  return r;
}

const char* status(const ConeCertificate& c) { return c.skipped ? "skip" : c.passed ? "pass" : "fail"; }

// JSON numbers for residuals; infinities and NaNs become strings so the document stays valid.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (config.suites.empty()) throw std::invalid_argument("no suites selected");
  for (const auto& s : config.suites)
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
      throw std::invalid_argument("unknown suite '" + s + "'");
}

int Report::certificate_count() const {
  int n = 0;
  for (const auto& s : systems) n += static_cast<int>(s.checks.size());
  return n;
}

int Report::unexpected_count() const {
  int n = 0;
  for (const auto& s : systems)
    for (const auto& c : s.checks) n += c.as_expected() ? 0 : 1;
  return n;
}

Report run(const RunConfig& config, const ModelFile& file) {
  validate(config);
  Report report;
  report.config = config;
  std::map<std::string, ProbModel> models;
  std::vector<ProbModel> theory;
  for (std::size_t k = 0; k < file.systems.size(); ++k) {
    const SystemSpec& spec = file.systems[k];
    const std::uint64_t seed = derive_seed(config.seed, k);
    ProbModel model = build_model(spec, derive_seed(seed, 1000));
    report.systems.push_back(run_system(config, spec, model, seed));
    theory.push_back(model);
    models.emplace(spec.name, std::move(model));
  }
  for (std::size_t k = 0; k < file.composites.size(); ++k) {
    const CompositeSpec& spec = file.composites[k];
    const std::uint64_t seed = derive_seed(config.seed, file.systems.size() + k);
    report.systems.push_back(run_composite(config, spec, models.at(spec.part_a), models.at(spec.part_b), seed));
  }
  report.qubit_witness = qubit_witness(theory);
  return report;
}

std::string to_text(const Report& report) {
  std::ostringstream out;
  const RunConfig& cfg = report.config;
  out << "hsdcert report (schema " << Report::kSchemaVersion << ")\n";
  out << "input: " << cfg.input_path << "\nsuites:";
  for (const auto& s : cfg.suites) out << " " << s;
  out << "\ntol=" << cfg.tol << " samples=" << cfg.samples << " seed=" << cfg.seed << "\n";
  for (const auto& s : report.systems) {
    out << "\n" << s.kind << " " << s.name << ": " << s.algebra << " (dim " << s.dim << ", rank " << s.rank;
    if (s.kind == "system")
      out << ", " << s.tests << " tests, " << s.outcomes << " outcomes)\n";
    else
      out << ", dim A " << s.dim_a << " x dim B " << s.dim_b << ", embed rank " << s.embed_rank
          << (s.locally_tomographic ? ", locally tomographic" : ", not locally tomographic") << ")\n";
    for (const auto& c : s.checks) {
      std::string line = to_text(c.certificate);
      if (c.expected_pass) line.insert(line.find('\n'), std::string("  [expected ") + (*c.expected_pass ? "pass" : "fail") + "]");
      if (!c.as_expected()) line.insert(line.find('\n'), "  <-- UNEXPECTED");
      out << "  [" << c.suite << "] " << line;
    }
    for (const auto& e : s.unmatched_expectations) out << "  warning: expectation for '" << e << "' matched no certificate\n";
  }
  out << "\nqubit witness: " << (report.qubit_witness ? "yes" : "no") << "\n";
  out << report.certificate_count() << " certificates, " << report.unexpected_count() << " unexpected\n";
  return out.str();
}

std::string to_structured(const Report& report) {
  using json = nlohmann::ordered_json;
  const RunConfig& cfg = report.config;
  json doc;
  doc["schema_version"] = Report::kSchemaVersion;
  doc["tool"] = "hsdcert";
  doc["input"] = cfg.input_path;
  doc["config"] = {{"suites", cfg.suites}, {"tol", cfg.tol}, {"samples", cfg.samples}, {"seed", cfg.seed}};
  json systems = json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& s : report.systems) {
    json entry{{"kind", s.kind}, {"name", s.name}, {"algebra", s.algebra}, {"dim", s.dim}, {"rank", s.rank}};
    if (s.kind == "system") {
      entry["tests"] = s.tests;
      entry["outcomes"] = s.outcomes;
    } else {
      entry["dimensions"] = {{"dim_a", s.dim_a},
                             {"dim_b", s.dim_b},
                             {"dim_carrier", s.dim},
                             {"tensor_dim", s.dim_a * s.dim_b},
                             {"embed_rank", s.embed_rank},
                             {"locally_tomographic", s.locally_tomographic}};
    }
    json certs = json::array();
    for (const auto& c : s.checks) {
      const ConeCertificate& k = c.certificate;
      (k.skipped ? skipped : k.passed ? passed : failed) += 1;
      json cert{{"suite", c.suite},
                {"check", k.check_name},
                {"status", status(k)},
                {"expected", c.expected_pass ? json(*c.expected_pass ? "pass" : "fail") : json(nullptr)},
                {"as_expected", c.as_expected()},
                {"worst_residual", number(k.worst_residual)},
                {"tolerance", k.tolerance},
                {"samples", k.samples},
                {"seed", k.seed},
                {"notes", k.notes}};
      json witnesses = json::array();
      for (const auto& w : k.witnesses) {
        json coords = json::array();
        for (double x : w) coords.push_back(number(x));
        witnesses.push_back(std::move(coords));
      }
      cert["witnesses"] = std::move(witnesses);
      certs.push_back(std::move(cert));
    }
    entry["certificates"] = std::move(certs);
    entry["unmatched_expectations"] = s.unmatched_expectations;
    systems.push_back(std::move(entry));
  }
  doc["systems"] = std::move(systems);
  doc["qubit_witness"] = report.qubit_witness;
  doc["summary"] = {{"certificates", report.certificate_count()},
                    {"passed", passed},
                    {"failed", failed},
                    {"skipped", skipped},
                    {"unexpected", report.unexpected_count()},
                    {"exit_code", report.exit_code()}};
  return doc.dump(2) + "\n";
}

ModelFile load_input(const RunConfig& config) {
  constexpr std::string_view kDemo = "demo:";
  if (config.input_path.rfind(kDemo, 0) == 0) {
    const std::string name = config.input_path.substr(kDemo.size());
    return parse_model_file(demo_model(name), config.input_path);
  }
  return read_model_file(config.input_path);
}

}  // namespace hsd
