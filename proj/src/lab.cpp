// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/lab.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "tilesamp/estimate.hpp"
#include "tilesamp/geometry.hpp"
#include "tilesamp/kernels.hpp"
#include "tilesamp/multiplier.hpp"
#include "tilesamp/random.hpp"
#include "tilesamp/sampling.hpp"
#include "tilesamp/set_expr.hpp"
#include "tilesamp/spectral.hpp"

namespace tilesamp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("configuration key '" + std::string(key) + "': '" + std::string(text) +
                      "' is not an integer");
  return v;
}

double parse_real(std::string_view key, std::string_view text) {
  try {
    return parse_number(trim(text));
  } catch (const InvalidArgument& e) {
    throw ConfigError("configuration key '" + std::string(key) + "': " + e.what());
  }
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  for (const auto& part : split_top_level(text, ','))
    out.emplace_back(trim(part));
  return out;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

OptimizerOptions optimizer_options(const ExperimentConfig& c) {
  OptimizerOptions o;
  o.restarts = c.restarts;
  o.max_iterations = c.max_iterations;
  o.seed = c.seed;
  return o;
}

// CSV artifact: '#' header lines, one column line, rows, '# complete'.
class CsvArtifact {
 public:
  CsvArtifact(const std::string& path, const ExperimentConfig& config,
              const std::vector<std::string>& columns)
      : out_(path) {
    if (!out_) throw ConfigError("cannot open output file '" + path + "'");
    out_ << "# tilesamp " << kVersion << ' ' << config.command << '\n';
    out_ << "# timestamp " << timestamp() << '\n';
    std::istringstream cfg(format_config(config));
    for (std::string line; std::getline(cfg, line);) out_ << "# config " << line << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
    out_.flush();
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
    out_ << '\n';
    out_.flush();
  }
  void note(const std::string& text) { out_ << "# " << text << '\n'; }
  void complete() {
    out_ << "# complete\n";
    out_.flush();
  }

 private:
  std::ofstream out_;
};

void write_json(const std::string& path, const ExperimentConfig& config,
                const nlohmann::ordered_json& results) {
  nlohmann::ordered_json j;
  j["tilesamp"] = kVersion;
  j["command"] = config.command;
  j["timestamp"] = timestamp();
  j["config"] = format_config(config);
  j["results"] = results;
  j["complete"] = true;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << j.dump(2) << '\n';
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string s;
  for (const auto& f : flags) s += (s.empty() ? "" : "|") + f;
  return s.empty() ? "ok" : s;
}

std::string iterations_text(const ConstantEstimate& e) {
  int m = 0;
  for (int i : e.iterations) m = std::max(m, i);
  return std::to_string(m);
}

// ---------------------------------------------------------------------------
// Commands. Each returns true when every estimate converged.

bool cmd_tiling(const ExperimentConfig& c, const std::string& path) {
  CsvArtifact csv(path, c,
                  {"set_name", "M", "measure", "overlap_total", "max_overlap", "coverage_gap",
                   "overlap_rate", "gap_rate", "boundary_length", "verdict"});
  for (const auto& text : c.sets) {
    const SetSpec spec = parse_set(text);
    const TilingReport r = classify_tiling(spec, c.M);
    for (const auto& level : r.levels)
      csv.row({quoted(format_set(spec)), std::to_string(level.resolution), fmt(level.measure),
               fmt(level.overlap_total), fmt(level.max_overlap), fmt(level.coverage_gap),
               fmt(r.overlap_rate), fmt(r.gap_rate), fmt(r.boundary_length), to_string(r.verdict)});
  }
  csv.complete();
  return true;
}

enum class ConstantKind { sampling, interpolation, multiplier };

bool cmd_constant(const ExperimentConfig& c, const std::string& path, ConstantKind kind) {
  CsvArtifact csv(path, c,
                  {"set_name", "p", "M", "s", "estimate", "restarts", "spread", "iterations",
                   "converged", "quadrature_error", "flag"});
  const OptimizerOptions opts = optimizer_options(c);
  bool converged = true;
  for (const auto& text : c.sets) {
    const SetSpec spec = parse_set(text);
    for (double p : c.p) {
      for (int M : c.M) {
        const RasterizedSet mask = rasterize(spec, M);
        const TorusModel model = make_model(mask, c.s);
        ConstantEstimate e;
        switch (kind) {
          case ConstantKind::sampling:
            e = estimate_sampling_constant(mask, p, model, opts);
            break;
          case ConstantKind::interpolation:
            e = estimate_interpolation_constant(mask, p, model, opts);
            break;
          case ConstantKind::multiplier:
            e = estimate_multiplier_norm(MultiplierSpec::indicator(mask), p, model, opts);
            break;
        }
        converged = converged && e.converged;
        csv.row({quoted(format_set(spec)), fmt(p), std::to_string(M), std::to_string(model.oversampling),
                 fmt(e.value), std::to_string(e.restarts()), fmt(e.spread()), iterations_text(e),
                 e.converged ? "true" : "false", fmt(e.quadrature_error), join_flags(e.flags)});
      }
    }
  }
  csv.complete();
  return converged;
}

bool cmd_equivalence(const ExperimentConfig& c, const std::string& path) {
  const OptimizerOptions opts = optimizer_options(c);
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  bool converged = true;
  for (const auto& text : c.sets) {
    const SetSpec spec = parse_set(text);
    for (double p : c.p) {
      for (int M : c.M) {
        const EquivalenceReport r = equivalence_experiment(spec, p, M, opts, c.s);
        for (const auto* e : {&r.sampling, &r.interpolation, &r.multiplier, &r.interpolation_dual})
          if (e->restarts() > 0) converged = converged && e->converged;
        reports.push_back(to_json(r));
      }
    }
  }
  write_json(path, c, reports);
  return converged;
}

bool cmd_fefferman(const ExperimentConfig& c, const std::string& path) {
  std::vector<NamedSet> sets;
  for (const auto& text : c.sets) {
    const SetSpec spec = parse_set(text);
    sets.push_back({format_set(spec), spec});
  }
  const FeffermanTable table = fefferman_scan(sets, c.p, c.M, optimizer_options(c), c.s);
  CsvArtifact csv(path, c, {"set_name", "p", "M", "s", "estimate", "restarts", "spread", "flag"});
  bool converged = true;
  for (const auto& r : table.rows) {
    converged = converged && r.flag.find("not_converged") == std::string::npos;
    csv.row({quoted(r.set_name), fmt(r.p), std::to_string(r.M), std::to_string(r.s), fmt(r.estimate),
             std::to_string(r.restarts), fmt(r.spread), r.flag});
  }
  for (const auto& t : table.trends)
    csv.note("trend set_name=" + t.set_name + " p=" + fmt(t.p) + " spearman=" + fmt(t.spearman) +
             " strictly_increasing=" + (t.strictly_increasing ? "true" : "false") +
             " max_over_min=" + fmt(t.max_over_min));
  csv.complete();
  return converged;
}

bool cmd_poisson(const ExperimentConfig& c, const std::string& path) {
  CsvArtifact csv(path, c, {"set_name", "M", "s", "trials", "max_error"});
  for (const auto& text : c.sets) {
    const SetSpec spec = parse_set(text);
    for (int M : c.M) {
      const RasterizedSet mask = rasterize(spec, M);
      const TorusModel model = make_model(mask, c.s);
      const std::size_t count = model.lattice_count();
      // Lattice index of -k for every k.
      std::vector<std::size_t> neg(count);
      for (std::size_t k = 0; k < count; ++k) {
        std::size_t rest = k, flat = 0, stride = 1;
        for (int a = 0; a < model.dim; ++a) {
          const std::size_t ka = rest % static_cast<std::size_t>(M);
          rest /= static_cast<std::size_t>(M);
          flat += ((static_cast<std::size_t>(M) - ka) % static_cast<std::size_t>(M)) * stride;
          stride *= static_cast<std::size_t>(M);
        }
        neg[k] = flat;
      }
      double worst = 0.0;
      for (int t = 0; t < c.trials; ++t) {
        const BandlimitedField f =
            random_bandlimited(derive_seed(c.seed, "trial", static_cast<std::uint64_t>(t)), mask, model);
        const SampleSequence a = sample_lattice(f);
        const PeriodicSpectrum per = periodize(f);
        const double scale = kernels::max_abs(f.spatial());
        double err = 0.0;
        for (std::size_t k = 0; k < count; ++k) err = std::max(err, std::abs(per.c[k] - a.values[neg[k]]));
        if (scale > 0.0) worst = std::max(worst, err / scale);
      }
      csv.row({quoted(format_set(spec)), std::to_string(M), std::to_string(model.oversampling),
               std::to_string(c.trials), fmt(worst)});
    }
  }
  csv.complete();
  return true;
}

bool cmd_shannon(const ExperimentConfig& c, const std::string& path) {
  CsvArtifact csv(path, c,
                  {"omega", "h", "M", "field_norm", "sample_norm", "isometry_error",
                   "reconstruction_error"});
  for (int M : c.M) {
    const ShannonReport r = shannon_1d(c.omega, c.h, M, derive_seed(c.seed, "trial", 0));
    csv.row({fmt(r.omega), fmt(r.h), std::to_string(r.M), fmt(r.field_norm), fmt(r.sample_norm),
             fmt(r.isometry_error), fmt(r.reconstruction_error)});
  }
  csv.complete();
  return true;
}

struct CommandInfo {
  std::string name;
  std::string help;
  bool json;
};

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> list = {
      {"tiling",
       "Rasterize each set at every M and measure the overlap of its 2 pi Z^n translates and the "
       "uncovered part of one period. Verdict: fundamental, overlap_violation, "
       "coverage_violation, both or inconclusive.",
       false},
      {"sampling-constant",
       "Best constant C^(1/p) in ||f||_p^p <= C sum_k |f(k)|^p over fields with spectrum in K "
       "(stable sampling on Z^n). Infinite, flagged aliasing, when two mask nodes share a "
       "residue class mod 2 pi.",
       false},
      {"interpolation-constant",
       "Best constant in min{||f||_p : f(k) = a_k} <= C ||a||_p (stable interpolation on Z^n). "
       "Fails with coverage_violation when the translates of K do not cover R^n.",
       false},
      {"multiplier-norm",
       "Norm of the Fourier multiplier F -> chi_K F on FL^p, one period, Boyd power method.",
       false},
      {"equivalence",
       "On a fundamental domain: the sampling constant, the interpolation constant, the norm of "
       "G -> chi_K G from Fl^p to FL^p, and the interpolation constant recomputed from the "
       "conjugate exponent. Refuses sets that do not tile. Writes JSON.",
       true},
      {"fefferman",
       "Scan the chi_K multiplier norm over sets x p x M and report per (set, p) the Spearman "
       "correlation with M and whether the estimates strictly increase. The ball multiplier is "
       "unbounded on FL^p for p != 2 in dimension >= 2.",
       false},
      {"poisson-verify",
       "For random band-limited fields check that the Fourier coefficients of the periodized "
       "spectrum equal the lattice samples at -k.",
       false},
      {"shannon1d",
       "One-dimensional baseline: sqrt(h) f(kh) is an isometry for spectrum in [-omega, omega] "
       "when h <= pi/omega. Larger h is refused as sub-Nyquist.",
       false},
  };
  return list;
}

const CommandInfo* find_command(std::string_view name) {
  for (const auto& c : commands())
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : commands()) v.push_back(c.name);
    return v;
  }();
  return names;
}

std::string command_help(std::string_view command) {
  const CommandInfo* info = find_command(command);
  if (!info) throw ConfigError("unknown command '" + std::string(command) + "'");
  return info->help;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"command", "sets",    "p",        "M",
                                                "s",       "seed",    "output",   "restarts",
                                                "max_iterations", "omega", "h", "trials"};
  return keys;
}

void set_config_value(ExperimentConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "command") {
    c.command = std::string(value);
  } else if (key == "sets") {
    c.sets = split_list(value);
  } else if (key == "p") {
    c.p.clear();
    for (const auto& t : split_list(value)) c.p.push_back(parse_real(key, t));
  } else if (key == "M") {
    c.M.clear();
    for (const auto& t : split_list(value)) c.M.push_back(parse_integer<int>(key, t));
  } else if (key == "s") {
    c.s = parse_integer<int>(key, value);
  } else if (key == "seed") {
    c.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "output") {
    c.output = std::string(value);
  } else if (key == "restarts") {
    c.restarts = parse_integer<int>(key, value);
  } else if (key == "max_iterations") {
    c.max_iterations = parse_integer<int>(key, value);
  } else if (key == "omega") {
    c.omega = parse_real(key, value);
  } else if (key == "h") {
    c.h = parse_real(key, value);
  } else if (key == "trials") {
    c.trials = parse_integer<int>(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text, const ExperimentConfig& base) {
  ExperimentConfig c = base;
  std::map<std::string, int> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (seen[key]++)
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' given twice");
    set_config_value(c, key, line.substr(eq + 1));
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path, const ExperimentConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

std::string format_config(const ExperimentConfig& c) {
  auto join_real = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + format_number(x);
    return s;
  };
  std::string sets, Ms;
  for (const auto& t : c.sets) sets += (sets.empty() ? "" : ",") + t;
  for (int m : c.M) Ms += (Ms.empty() ? "" : ",") + std::to_string(m);
  std::ostringstream out;
  out << "command = " << c.command << '\n'
      << "sets = " << sets << '\n'
      << "p = " << join_real(c.p) << '\n'
      << "M = " << Ms << '\n'
      << "s = " << c.s << '\n'
      << "seed = " << c.seed << '\n'
      << "output = " << c.output << '\n'
      << "restarts = " << c.restarts << '\n'
      << "max_iterations = " << c.max_iterations << '\n'
      << "omega = " << format_number(c.omega) << '\n'
      << "h = " << format_number(c.h) << '\n'
      << "trials = " << c.trials << '\n';
  return out.str();
}

void validate(const ExperimentConfig& c) {
  if (!find_command(c.command)) {
    std::string list;
    for (const auto& n : command_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown command '" + c.command + "' (expected one of: " + list + ")");
  }
  if (c.command != "shannon1d" && c.sets.empty())
    throw ConfigError("command '" + c.command + "' needs at least one set expression");
  for (const auto& s : c.sets) {
    try {
      (void)parse_set(s);
    } catch (const InvalidArgument& e) {
      throw ConfigError("set expression '" + s + "': " + e.what());
    }
  }
  if (c.p.empty()) throw ConfigError("p list is empty");
  for (double p : c.p)
    if (!(p > 1.0) || !std::isfinite(p))
      throw ConfigError("p = " + fmt(p) + " is outside 1 < p < inf");
  if (c.M.empty()) throw ConfigError("M list is empty");
  for (int m : c.M)
    if (m < 4) throw ConfigError("M = " + std::to_string(m) + " is below the minimum resolution 4");
  if (c.s < 0) throw ConfigError("s must be >= 0 (0 selects it automatically)");
  if (c.restarts < 1) throw ConfigError("restarts must be >= 1");
  if (c.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  if (!(c.omega > 0.0) || !std::isfinite(c.omega)) throw ConfigError("omega must be positive");
  if (!(c.h > 0.0) || !std::isfinite(c.h)) throw ConfigError("h must be positive");
}

std::string default_output_dir() {
  const char* env = std::getenv("TILESAMP_OUTPUT_DIR");
  return env && *env ? std::string(env) : std::string(".");
}

std::string output_path(const ExperimentConfig& c) {
  if (!c.output.empty()) return c.output;
  const CommandInfo* info = find_command(c.command);
  const std::string ext = info && info->json ? ".json" : ".csv";
  return (std::filesystem::path(default_output_dir()) / (c.command + ext)).string();
}

ExperimentConfig embedded_config(std::istream& artifact) {
  std::stringstream ss;
  ss << artifact.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = nlohmann::ordered_json::parse(text);
    return parse_config(j.at("config").get<std::string>());
  }
  std::string cfg;
  std::istringstream lines(text);
  const std::string prefix = "# config ";
  for (std::string line; std::getline(lines, line);)
    if (line.rfind(prefix, 0) == 0) cfg += line.substr(prefix.size()) + '\n';
  if (cfg.empty()) throw ConfigError("artifact carries no embedded configuration");
  return parse_config(cfg);
}

ExitCode run(const ExperimentConfig& config, std::ostream& log) {
  std::string path;
  try {
    validate(config);
    path = output_path(config);
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return ExitCode::config_error;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "config error: " << e.what() << '\n';
    return ExitCode::config_error;
  }

  bool converged = true;
  try {
    const std::string& cmd = config.command;
    if (cmd == "tiling") converged = cmd_tiling(config, path);
    else if (cmd == "sampling-constant") converged = cmd_constant(config, path, ConstantKind::sampling);
    else if (cmd == "interpolation-constant") converged = cmd_constant(config, path, ConstantKind::interpolation);
    else if (cmd == "multiplier-norm") converged = cmd_constant(config, path, ConstantKind::multiplier);
    else if (cmd == "equivalence") converged = cmd_equivalence(config, path);
    else if (cmd == "fefferman") converged = cmd_fefferman(config, path);
    else if (cmd == "poisson-verify") converged = cmd_poisson(config, path);
    else if (cmd == "shannon1d") converged = cmd_shannon(config, path);
  } catch (const PreconditionError& e) {
    log << "precondition violated (" << e.condition() << "): " << e.what() << '\n';
    return ExitCode::precondition;
  } catch (const InvalidArgument& e) {
    log << "config error: " << e.what() << '\n';
    return ExitCode::config_error;
  }
  log << "wrote " << path << '\n';
  if (!converged) {
    log << "warning: some estimates did not converge; they are flagged in the output\n";
    return ExitCode::not_converged;
  }
  return ExitCode::ok;
}

}  // namespace tilesamp
