#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gupspec/deformation.hpp"
#include "gupspec/problem.hpp"

namespace gupspec::cli {

// Invalid flag/config combination; messages name the offending flag.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { Oscillator, Well, Custom };
enum class OutputFormat { Table, Csv, Json };

// Flag values exactly as given on the command line; unset means
// "fall back to the config file, then to the default".
struct RawOptions {
  std::optional<std::string> problem;
  std::optional<double> a;
  std::optional<std::string> potential_expr;
  std::optional<double> scan_lo;
  std::optional<double> scan_hi;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<std::string> deformation_expr;
  std::optional<double> hbar;
  std::optional<double> delta;
  std::optional<std::string> levels; // "FROM..TO"
  std::optional<double> energy;
  std::optional<double> tol;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<std::string> config_path;
};

struct RunConfig {
  ProblemKind problem = ProblemKind::Oscillator;
  double a = 1.0;
  std::string potential_expr;
  double scan_lo = -10.0;
  double scan_hi = 10.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::string deformation_expr;
  double hbar = 1.0;
  double delta = 0.5;
  int n_from = 0;
  int n_to = 9;
  double energy = std::numeric_limits<double>::quiet_NaN();
  double tol = 1e-9;
  OutputFormat format = OutputFormat::Table;
  std::string out_path;
};

// Merges flags over the config file (flags win) over defaults, then
// validates. Throws ConfigError with the flag name on bad input.
RunConfig resolve_config(const RawOptions& flags);

Problem make_problem(const RunConfig& config);
Deformation make_deformation(const RunConfig& config);

// Resolved configuration echoed into JSON reports.
nlohmann::json config_json(const RunConfig& config);

} // namespace gupspec::cli
