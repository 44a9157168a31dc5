#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tcstab/config.hpp"
#include "tcstab/errors.hpp"
#include "tcstab/floating.hpp"
#include "tcstab/output.hpp"
#include "tcstab/scenarios.hpp"

namespace {

constexpr int kChecksFailed = 3;
constexpr int kBadInput = 2;

void print_result(const tcstab::ScenarioResult& res, const std::string& dir) {
  for (const auto& c : res.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  lhs=" << tcstab::format_number(c.lhs)
              << " rhs=" << tcstab::format_number(c.rhs) << "\n";
  std::cout << res.config.scenario << ": " << res.checks.size() - res.failures() << "/" << res.checks.size()
            << " checks passed, output in " << dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  tcstab::enable_flush_to_zero();
  CLI::App app{"Perturbation simulator and verification harness for exterior Taylor-Couette flow"};
  app.require_subcommand(1);

  std::string config_path, run_output;
  auto* run = app.add_subcommand("run", "Run one scenario from a configuration file");
  run->add_option("config", config_path, "Configuration file (key = value text or JSON)")->required();
  run->add_option("-o,--output", run_output, "Output directory (default <output root>/<scenario>)");

  std::string profile = "full", suite_output;
  std::uint64_t seed = 1;
  auto* suite = app.add_subcommand("suite", "Run every scenario with a built-in profile");
  suite->add_option("-p,--profile", profile, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  suite->add_option("-s,--seed", seed, "Base seed");
  suite->add_option("-o,--output", suite_output, "Output root (default TCSTAB_OUTPUT_ROOT or tcstab-out)");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Summarize the CSV files below a directory");
  report->add_option("dir", report_dir, "Directory holding scenario output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kBadInput;
  }

  try {
    if (*run) {
      tcstab::ScenarioConfig cfg = tcstab::parse_config(config_path);
      if (!run_output.empty()) cfg.output = run_output;
      const std::string dir = tcstab::output_dir(cfg);
      const tcstab::ScenarioResult res = tcstab::run_scenario(cfg);
      tcstab::write_result(res, dir);
      print_result(res, dir);
      return res.failures() == 0 ? 0 : kChecksFailed;
    }
    if (*suite) {
      const std::string root = suite_output.empty() ? tcstab::output_root() : suite_output;
      const tcstab::SuiteSummary sum = tcstab::run_suite(profile, seed, root);
      for (std::size_t i = 0; i < sum.scenarios.size(); ++i)
        std::cout << (sum.failures[i] == 0 ? "PASS " : "FAIL ") << sum.scenarios[i] << "  "
                  << sum.checks[i] - sum.failures[i] << "/" << sum.checks[i] << " checks\n";
      std::cout << "manifest: " << root << "/manifest.json\n";
      return sum.total_failures() == 0 ? 0 : kChecksFailed;
    }
    if (*report) {
      std::cout << tcstab::report_directory(report_dir);
      return 0;
    }
  } catch (const tcstab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kBadInput;
  } catch (const tcstab::DomainError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
