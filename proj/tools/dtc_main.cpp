// dtc: command-line front end.
//
//   dtc <evolve|spectrum|ensemble|scan|compare> [--config FILE] [--set key=value]...
//       [--output DIR] [--threads N]
//
// The subcommand takes precedence over a `command` key in the file.
// Exit codes: 0 success, 2 configuration error, 3 runtime error, 1 usage error.
// DTC_OUTPUT_DIR supplies the output directory when neither the config nor
// --output sets one.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dtc/commands.hpp"
#include "dtc/config.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet spin-chain simulator for discrete time crystals"};
  app.set_version_flag("--version", std::string(dtc::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  unsigned threads = 0;

  for (auto name : {"evolve", "spectrum", "ensemble", "scan", "compare"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", config_path, "configuration file")->check(CLI::ExistingFile);
    sub->add_option("-s,--set", overrides, "override, key=value (repeatable)");
    sub->add_option("-o,--output", output, "output directory");
    sub->add_option("-j,--threads", threads, "worker threads (0 = all cores)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  dtc::RunConfig config;
  try {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw dtc::ConfigError("cannot read config file " + config_path);
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    std::vector<std::string> all = overrides;
    all.insert(all.begin(), "command=" + command);
    if (!output.empty()) all.push_back("output=" + output);
    const char* env = std::getenv("DTC_OUTPUT_DIR");
    config = dtc::parse_config(text, all, env && *env ? env : ".");
  } catch (const dtc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    for (const auto& path : dtc::execute(config, threads)) std::cout << path.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
