#include "cli/options.hpp"

#include <cmath>
#include <fstream>

#include "gupspec/errors.hpp"

namespace gupspec::cli {

namespace {

using nlohmann::json;

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("--config: cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config: " + std::string(e.what()));
  }
}

// Flag wins, then config-file key, then the given default.
template <typename T>
T pick(const std::optional<T>& flag, const json& file, const char* key,
       const char* flag_name, T fallback) {
  if (flag) return *flag;
  if (file.contains(key)) {
    try {
      return file.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(std::string(flag_name) + ": bad value for config key '" +
                        key + "'");
    }
  }
  return fallback;
}

std::pair<int, int> parse_levels_text(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    const int from = std::stoi(text.substr(0, dots));
    const int to = std::stoi(text.substr(dots + 2));
    return {from, to};
  } catch (const std::exception&) {
    throw ConfigError("--levels: expected FROM..TO, got '" + text + "'");
  }
}

} // namespace

RunConfig resolve_config(const RawOptions& flags) {
  json file = json::object();
  if (flags.config_path) file = load_config_file(*flags.config_path);

  RunConfig cfg;

  const std::string problem_text = pick<std::string>(
      flags.problem, file, "problem", "--problem", "oscillator");
  if (problem_text == "oscillator")
    cfg.problem = ProblemKind::Oscillator;
  else if (problem_text == "well")
    cfg.problem = ProblemKind::Well;
  else if (problem_text == "custom")
    cfg.problem = ProblemKind::Custom;
  else
    throw ConfigError("--problem: expected oscillator|well|custom, got '" +
                      problem_text + "'");

  cfg.a = pick<double>(flags.a, file, "a", "--a", 1.0);
  cfg.potential_expr = pick<std::string>(flags.potential_expr, file,
                                         "potential-expr", "--potential-expr",
                                         std::string());
  cfg.scan_lo = pick<double>(flags.scan_lo, file, "scan-lo", "--scan-lo", -10.0);
  cfg.scan_hi = pick<double>(flags.scan_hi, file, "scan-hi", "--scan-hi", 10.0);
  cfg.alpha = pick<double>(flags.alpha, file, "alpha", "--alpha", 0.0);
  cfg.beta = pick<double>(flags.beta, file, "beta", "--beta", 0.0);
  cfg.deformation_expr =
      pick<std::string>(flags.deformation_expr, file, "deformation-expr",
                        "--deformation-expr", std::string());
  cfg.hbar = pick<double>(flags.hbar, file, "hbar", "--hbar", 1.0);
  cfg.tol = pick<double>(flags.tol, file, "tol", "--tol", 1e-9);
  cfg.out_path = pick<std::string>(flags.out, file, "out", "--out", std::string());

  const bool is_well = cfg.problem == ProblemKind::Well;
  cfg.delta =
      pick<double>(flags.delta, file, "delta", "--delta", is_well ? 0.0 : 0.5);

  const int default_from = is_well ? 1 : 0;
  cfg.n_from = default_from;
  cfg.n_to = default_from + 9;
  if (flags.levels) {
    std::tie(cfg.n_from, cfg.n_to) = parse_levels_text(*flags.levels);
  } else if (file.contains("levels")) {
    const json& levels = file.at("levels");
    if (levels.is_array() && levels.size() == 2 &&
        levels[0].is_number_integer() && levels[1].is_number_integer()) {
      cfg.n_from = levels[0].get<int>();
      cfg.n_to = levels[1].get<int>();
    } else if (levels.is_string()) {
      std::tie(cfg.n_from, cfg.n_to) =
          parse_levels_text(levels.get<std::string>());
    } else {
      throw ConfigError("--levels: config key 'levels' must be [FROM, TO]");
    }
  }

  if (flags.energy) {
    cfg.energy = *flags.energy;
  } else if (file.contains("energy")) {
    cfg.energy = pick<double>(flags.energy, file, "energy", "--energy", 0.0);
  }

  const std::string format_text =
      pick<std::string>(flags.format, file, "format", "--format", "table");
  if (format_text == "table")
    cfg.format = OutputFormat::Table;
  else if (format_text == "csv")
    cfg.format = OutputFormat::Csv;
  else if (format_text == "json")
    cfg.format = OutputFormat::Json;
  else
    throw ConfigError("--format: expected table|csv|json, got '" + format_text +
                      "'");

  // Cross-field validation.
  if (cfg.problem == ProblemKind::Well && !(cfg.a > 0.0))
    throw ConfigError("--a: well half-width must be positive");
  if (cfg.problem == ProblemKind::Custom && cfg.potential_expr.empty())
    throw ConfigError("--potential-expr: required for --problem custom");
  if (cfg.problem == ProblemKind::Custom && !(cfg.scan_lo < cfg.scan_hi))
    throw ConfigError("--scan-lo/--scan-hi: scan domain requires lo < hi");
  if (!cfg.deformation_expr.empty() && (flags.alpha || flags.beta))
    throw ConfigError(
        "--deformation-expr: conflicts with --alpha/--beta (pick one variant)");
  if (cfg.deformation_expr.empty() && (!(cfg.alpha >= 0.0) || !(cfg.beta >= 0.0)))
    throw ConfigError("--alpha/--beta: deformation parameters must be >= 0");
  if (!(cfg.hbar > 0.0)) throw ConfigError("--hbar: must be positive");
  if (!(cfg.tol > 0.0)) throw ConfigError("--tol: must be positive");
  if (cfg.n_from > cfg.n_to)
    throw ConfigError("--levels: requires FROM <= TO");

  return cfg;
}

Problem make_problem(const RunConfig& config) {
  try {
    switch (config.problem) {
      case ProblemKind::Oscillator:
        return Problem::harmonic(config.hbar);
      case ProblemKind::Well:
        return Problem::square_well(config.a, config.hbar);
      case ProblemKind::Custom: {
        Expression u = Expression::parse(config.potential_expr, {"X"});
        return Problem::custom(std::move(u), config.scan_lo, config.scan_hi,
                               config.hbar);
      }
    }
  } catch (const SyntaxError& e) {
    throw ConfigError("--potential-expr: " + std::string(e.what()));
  } catch (const UnknownIdentifier& e) {
    throw ConfigError("--potential-expr: " + std::string(e.what()));
  } catch (const ParameterDomain& e) {
    throw ConfigError(std::string("--problem: ") + e.what());
  }
  throw ConfigError("--problem: unresolved problem kind");
}

Deformation make_deformation(const RunConfig& config) {
  if (config.deformation_expr.empty()) {
    try {
      return Deformation::quadratic_gup(config.alpha, config.beta);
    } catch (const ParameterDomain& e) {
      throw ConfigError(std::string("--alpha/--beta: ") + e.what());
    }
  }
  try {
    Expression g = Expression::parse(config.deformation_expr, {"X", "P"});
    return Deformation::from_expression(std::move(g));
  } catch (const SyntaxError& e) {
    throw ConfigError("--deformation-expr: " + std::string(e.what()));
  } catch (const UnknownIdentifier& e) {
    throw ConfigError("--deformation-expr: " + std::string(e.what()));
  }
}

nlohmann::json config_json(const RunConfig& config) {
  nlohmann::json j;
  j["problem"] = config.problem == ProblemKind::Oscillator ? "oscillator"
                 : config.problem == ProblemKind::Well     ? "well"
                                                           : "custom";
  if (config.problem == ProblemKind::Well) j["a"] = config.a;
  if (config.problem == ProblemKind::Custom) {
    j["potential-expr"] = config.potential_expr;
    j["scan-lo"] = config.scan_lo;
    j["scan-hi"] = config.scan_hi;
  }
  if (config.deformation_expr.empty()) {
    j["alpha"] = config.alpha;
    j["beta"] = config.beta;
  } else {
    j["deformation-expr"] = config.deformation_expr;
  }
  j["hbar"] = config.hbar;
  j["delta"] = config.delta;
  j["levels"] = {config.n_from, config.n_to};
  if (std::isfinite(config.energy)) j["energy"] = config.energy;
  j["format"] = config.format == OutputFormat::Table ? "table"
                : config.format == OutputFormat::Csv ? "csv"
                                                     : "json";
  return j;
}

} // namespace gupspec::cli
