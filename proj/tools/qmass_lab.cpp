// qmass-lab: run one quantum-mass scenario, write its data files and a JSON
// summary into the output directory.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmlab/error.hpp"
#include "qmlab/export.hpp"
#include "qmlab/scenarios.hpp"

namespace sc = qmlab::scenarios;

namespace {

nlohmann::json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qmlab::Error(qmlab::ErrorKind::InvalidConfig, "cannot open config file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw qmlab::Error(qmlab::ErrorKind::InvalidConfig, path + ": " + e.what());
  }
}

void print_metrics(const sc::RunSummary& s) {
  std::cout << s.scenario << '\n';
  for (const auto& [name, m] : s.metrics) {
    std::cout << "  " << (m.pass ? "PASS " : "FAIL ") << name;
    if (m.predicted) std::cout << "  predicted=" << qmlab::format_number(*m.predicted);
    if (m.measured) std::cout << "  measured=" << qmlab::format_number(*m.measured);
    std::cout << "  tol=" << qmlab::format_number(m.tolerance) << '\n';
  }
  for (const auto& w : s.warnings) std::cout << "  warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-mass scenarios: boosted waves, double slit, moving cavity in a box."};
  std::string scenario;
  std::string config;
  std::string out = ".";
  std::vector<std::string> overrides;
  long long seed = 0;

  app.add_option("scenario", scenario, "Scenario to run")
      ->required()
      ->check(CLI::IsMember(sc::scenario_names()));
  app.add_option("--config", config, "JSON parameter file")->required();
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--set", overrides, "Override a parameter, key=value (repeatable)")->allow_extra_args(false);
  app.add_option("--seed", seed, "Reserved; every scenario is deterministic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sc::kUsage;
  }

  sc::ScenarioConfig cfg;
  try {
    cfg = sc::make_config(scenario, load_document(config), overrides, out);
  } catch (const qmlab::Error& e) {
    std::cerr << "qmass-lab: " << e.what() << '\n';
    return sc::kUsage;
  }

  try {
    const auto summary = sc::run(cfg);
    sc::export_summary(summary, cfg.out_dir / "summary.json");
    print_metrics(summary);
    return summary.all_pass() ? sc::kPass : sc::kMetricFailure;
  } catch (const qmlab::Error& e) {
    std::cerr << "qmass-lab: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == qmlab::ErrorKind::InvalidConfig ? sc::kUsage : sc::kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "qmass-lab: " << e.what() << '\n';
    return sc::kRuntime;
  }
}
