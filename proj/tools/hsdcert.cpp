#include "hsd/runner.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>

namespace {

constexpr int kUsageError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hsdcert: certify Jordan-algebraic models and their composites"};
  hsd::RunConfig config;
  std::string input, demo, format = "text";
  bool list_demos = false;

  auto* input_opt = app.add_option("--input,-i", input, "Model description file");
  auto* demo_opt = app.add_option("--demo", demo, "Run a bundled demo instead of a file");
  input_opt->excludes(demo_opt);
  app.add_option("--suites", config.suites, "Suites to run: algebra, cone, kv, model, composite")
      ->delimiter(',')
      ->envname("HSDCERT_SUITES");
  app.add_option("--tol", config.tol, "Base tolerance")->envname("HSDCERT_TOL");
  app.add_option("--samples", config.samples, "Samples per sampled check")->envname("HSDCERT_SAMPLES");
  app.add_option("--seed", config.seed, "Run seed")->envname("HSDCERT_SEED");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "structured", "json"}))
      ->envname("HSDCERT_FORMAT");
  app.add_flag("--list-demos", list_demos, "Print the bundled demo names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  if (list_demos) {
    for (const auto& name : hsd::demo_names()) std::cout << name << "\n";
    return 0;
  }
  if (input.empty() && demo.empty()) {
    std::cerr << "error: one of --input or --demo is required\n" << app.help();
    return kUsageError;
  }
  std::erase(config.suites, std::string());
  config.input_path = demo.empty() ? input : "demo:" + demo;
  config.output_format = format == "text" ? hsd::OutputFormat::Text : hsd::OutputFormat::Structured;

  try {
    hsd::validate(config);
    const hsd::ModelFile file = hsd::load_input(config);
    const hsd::Report report = hsd::run(config, file);
    std::cout << (config.output_format == hsd::OutputFormat::Text ? hsd::to_text(report) : hsd::to_structured(report));
    return report.exit_code();
  } catch (const hsd::ModelFileError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsageError;
}
