// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file lab.hpp
/// \brief Experiment harness: configuration, commands and artifact files.
///
/// A configuration is a key = value document ('#' starts a comment). Flag
/// overrides use the same keys and win over the file. Every artifact embeds
/// the resolved configuration and the library version; the wall-clock time
/// appears on a single line so that reruns differ only there.
///
/// Seeds: all randomness derives from the root `seed` through
/// derive_seed(root, tag, index). Optimizer restart r uses tag "restart";
/// random test fields use tag "trial"; scan cell i uses tag "cell".

#ifndef TILESAMP_LAB_HPP
#define TILESAMP_LAB_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tilesamp/types.hpp"

namespace tilesamp {

/// Invalid configuration; the harness exits with status 2.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct ExperimentConfig {
  std::string command;
  std::vector<std::string> sets;  // set expressions
  std::vector<double> p{2.0};
  std::vector<int> M{16};
  int s = 0;  // oversampling override; 0 picks the smallest admissible
  std::uint64_t seed = 0;
  std::string output;  // empty: <output dir>/<command>.<csv|json>
  int restarts = 8;
  int max_iterations = 500;
  double omega = kPi;  // shannon1d band limit
  double h = 1.0;      // shannon1d step
  int trials = 100;    // poisson-verify fields per mask

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

enum class ExitCode : int { ok = 0, config_error = 2, precondition = 3, not_converged = 4 };

const std::vector<std::string>& command_names();
/// One-paragraph description of a command for --help.
std::string command_help(std::string_view command);
const std::vector<std::string>& config_keys();

/// Parses a key = value document on top of `base`. Unknown keys, repeated
/// keys and malformed values raise ConfigError.
ExperimentConfig parse_config(std::string_view text, const ExperimentConfig& base = {});
/// Sets one key from its text value.
void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);
ExperimentConfig load_config_file(const std::string& path, const ExperimentConfig& base = {});
/// Canonical key = value text; parse_config(format_config(c)) == c.
std::string format_config(const ExperimentConfig& config);
/// Semantic checks that need no computation (parsable sets, 1 < p < inf,
/// M >= 4, command-specific arity).
void validate(const ExperimentConfig& config);

/// Directory from TILESAMP_OUTPUT_DIR, or the working directory.
std::string default_output_dir();
std::string output_path(const ExperimentConfig& config);

/// Recovers the configuration embedded in a CSV or JSON artifact.
ExperimentConfig embedded_config(std::istream& artifact);

/// Runs the experiment and writes its artifact. Progress and errors go to
/// `log`. Never throws for configuration or precondition failures; those
/// map to exit codes.
ExitCode run(const ExperimentConfig& config, std::ostream& log);

}  // namespace tilesamp

#endif  // TILESAMP_LAB_HPP
