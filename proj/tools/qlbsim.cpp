// Command-line front end: validate scenario configs, run them, and render
// reports. Exit codes: 0 success, 1 configuration error, 2 internal fault.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qlb/report.hpp"
#include "qlb/runner.hpp"
#include "qlb/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kInternalFault = 2;

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kInternalFault;
  }
  out << text;
  return kOk;
}

int report_config_problems(const qlb::harness::LoadResult& loaded) {
  if (!loaded.parse_error.empty()) {
    std::cerr << "error: " << loaded.parse_error << "\n";
    return kConfigError;
  }
  for (const auto& issue : loaded.issues)
    std::cerr << "error: " << issue.path << ": " << issue.message << "\n";
  return kConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlbsim: quantum logic-blockchain protocol simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "records", raw_path;
  std::optional<uint64_t> seed_override, batch_override;

  CLI::App* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", config_path, "scenario config file (JSON)")->required();
  run->add_option("--seed", seed_override, "override the config seed");
  run->add_option("--batch", batch_override, "override the run count");
  run->add_option("--out", out_path, "write the report to a file");
  run->add_option("--format", format, "records | human")
      ->check(CLI::IsMember({"records", "human"}));

  CLI::App* validate = app.add_subcommand("validate", "check a scenario config");
  validate->add_option("config", config_path, "scenario config file (JSON)")
      ->required();

  CLI::App* report = app.add_subcommand("report", "re-render a raw record report");
  report->add_option("raw", raw_path, "record-format report file")->required();
  report->add_option("--format", format, "records | human")
      ->check(CLI::IsMember({"records", "human"}));
  report->add_option("--out", out_path, "write the rendering to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      qlb::harness::LoadResult loaded = qlb::harness::load_config_file(config_path);
      if (!loaded.ok()) return report_config_problems(loaded);
      qlb::harness::ScenarioConfig config = *loaded.config;
      if (seed_override) config.seed = *seed_override;
      if (batch_override) config.batch = *batch_override;
      qlb::harness::RunReport result = qlb::harness::run_scenario(config);
      std::string text = format == "human" ? qlb::harness::emit_human(result)
                                           : qlb::harness::emit_records(result);
      return write_output(text, out_path);
    }
    if (validate->parsed()) {
      qlb::harness::LoadResult loaded = qlb::harness::load_config_file(config_path);
      if (!loaded.ok()) return report_config_problems(loaded);
      std::cout << "ok: " << loaded.config->name << " ("
                << qlb::harness::to_string(loaded.config->kind) << ", seed "
                << loaded.config->seed << ", batch " << loaded.config->batch
                << ")\n";
      return kOk;
    }
    if (report->parsed()) {
      std::ifstream in(raw_path, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot open " << raw_path << "\n";
        return kConfigError;
      }
      std::ostringstream buffer;
      buffer << in.rdbuf();
      qlb::harness::ParsedReport parsed = qlb::harness::parse_records(buffer.str());
      if (!parsed.ok) {
        std::cerr << "error: " << parsed.error << "\n";
        return kConfigError;
      }
      std::string text = format == "human" ? qlb::harness::emit_human(parsed.report)
                                           : qlb::harness::emit_records(parsed.report);
      return write_output(text, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "internal fault: " << e.what() << "\n";
    return kInternalFault;
  }
  return kInternalFault;
}
