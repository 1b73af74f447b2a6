// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end for the experiment harness.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "tilesamp/lab.hpp"

namespace {

struct FlagOption {
  const char* key;   // configuration key
  const char* flag;  // CLI11 option names
  const char* name;  // primary long name
  const char* help;
};

constexpr FlagOption kOptions[] = {
    {"sets", "--sets,--set", "--sets", "set expressions, comma separated"},
    {"p", "--p", "--p", "exponents, comma separated (1 < p < inf)"},
    {"M", "--M", "--M", "resolutions, comma separated"},
    {"s", "--s", "--s", "oversampling override (0 = automatic)"},
    {"seed", "--seed", "--seed", "root seed"},
    {"output", "--output,-o", "--output", "output file"},
    {"restarts", "--restarts", "--restarts", "optimizer restarts"},
    {"max_iterations", "--max-iterations", "--max-iterations", "optimizer iteration cap"},
    {"omega", "--omega", "--omega", "shannon1d band limit"},
    {"h", "--step", "--step", "shannon1d sampling step h"},
    {"trials", "--trials", "--trials", "poisson-verify fields per mask"},
};

}  // namespace

int main(int argc, char** argv) {
  using tilesamp::ExitCode;
  CLI::App app{"tilesamp: sampling on Z^n of functions with compact spectrum"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tilesamp::kVersion));

  const std::string footer =
      "Configuration keys (file 'key = value', flags override): command, sets, p, M, s, seed, "
      "output, restarts, max_iterations, omega, h (--step), trials.\n"
      "Default output directory: $TILESAMP_OUTPUT_DIR, else the working directory.\n"
      "Exit status: 0 ok, 2 config error, 3 precondition violated, 4 not converged.";
  app.footer(footer);

  std::string config_file;
  std::map<std::string, std::string> flags;
  std::string chosen;

  for (const auto& name : tilesamp::command_names()) {
    CLI::App* sub = app.add_subcommand(name, tilesamp::command_help(name));
    sub->footer(footer);
    sub->add_option("--config", config_file, "key = value configuration file");
    for (const auto& o : kOptions) sub->add_option(o.flag, flags[o.key], o.help);
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::config_error);
  }

  tilesamp::ExperimentConfig config;
  try {
    if (!config_file.empty()) config = tilesamp::load_config_file(config_file);
    config.command = chosen;
    CLI::App* sub = app.get_subcommand(chosen);
    for (const auto& o : kOptions)
      if (sub->get_option(o.name)->count() > 0) tilesamp::set_config_value(config, o.key, flags[o.key]);
  } catch (const tilesamp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::config_error);
  }
  return static_cast<int>(tilesamp::run(config, std::cerr));
}
