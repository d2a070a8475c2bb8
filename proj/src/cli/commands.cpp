#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gupspec/errors.hpp"
#include "gupspec/quantizer.hpp"
#include "gupspec/reference.hpp"
#include "gupspec/version.hpp"

namespace gupspec::cli {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;
constexpr int kCsvDigits = 17;   // lossless
constexpr int kTableDigits = 10; // readable

std::string fmt(double value, int significant_digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
  return buf;
}

json meta_json(const RunConfig& config) {
  json meta;
  meta["tool_version"] = kToolVersion;
  meta["tolerance"] = config.tol;
  return meta;
}

void emit_json(const json& document, std::ostream& out) {
  out << document.dump(2) << '\n';
}

void warn_parity(const Problem& problem, const Deformation& deformation,
                 std::ostream& err) {
  if (!deformation.is_expression_backed()) return;
  const double x_max =
      problem.is_square_well() ? problem.square_well_half_width() : 5.0;
  try {
    if (!deformation.parity_even_sampled(x_max, 5.0))
      err << "warning: deformation is not even in X and P on samples; "
             "the quantization rule assumes that symmetry\n";
  } catch (const PositivityViolation&) {
    // The sampling box can exceed the integration region; positivity there
    // is checked where it matters.
  }
}

// ---------------------------------------------------------------- spectrum

void spectrum_table(const std::vector<SpectrumEntry>& entries,
                    std::ostream& out) {
  out << std::setw(5) << "n" << std::setw(18) << "energy" << std::setw(18)
      << "target_area" << std::setw(18) << "achieved_area" << std::setw(12)
      << "iterations" << std::setw(10) << "status" << '\n';
  for (const SpectrumEntry& entry : entries) {
    out << std::setw(5) << entry.n;
    if (entry.status == LevelStatus::Bound) {
      const LevelResult& level = *entry.level;
      out << std::setw(18) << fmt(level.energy, kTableDigits) << std::setw(18)
          << fmt(level.target_area, kTableDigits) << std::setw(18)
          << fmt(level.achieved_area, kTableDigits) << std::setw(12)
          << level.iterations << std::setw(10) << "bound";
    } else {
      out << std::setw(18) << "-" << std::setw(18) << "-" << std::setw(18)
          << "-" << std::setw(12) << "-" << std::setw(10) << "unbound";
    }
    out << '\n';
  }
}

void spectrum_csv(const std::vector<SpectrumEntry>& entries,
                  const RunConfig& config, std::ostream& out) {
  out << "n,energy,target_area,achieved_area,iterations,status\n";
  for (const SpectrumEntry& entry : entries) {
    out << entry.n << ',';
    if (entry.status == LevelStatus::Bound) {
      const LevelResult& level = *entry.level;
      out << fmt(level.energy, kCsvDigits) << ','
          << fmt(level.target_area, kCsvDigits) << ','
          << fmt(level.achieved_area, kCsvDigits) << ',' << level.iterations
          << ",bound\n";
    } else {
      const double target =
          2.0 * kPi * config.hbar * (entry.n + config.delta);
      out << ',' << fmt(target, kCsvDigits) << ",,,unbound\n";
    }
  }
}

void spectrum_json(const std::vector<SpectrumEntry>& entries,
                   const RunConfig& config, std::ostream& out) {
  json document;
  document["config"] = config_json(config);
  json levels = json::array();
  for (const SpectrumEntry& entry : entries) {
    json row;
    row["n"] = entry.n;
    if (entry.status == LevelStatus::Bound) {
      const LevelResult& level = *entry.level;
      row["status"] = "bound";
      row["energy"] = level.energy;
      row["target_area"] = level.target_area;
      row["achieved_area"] = level.achieved_area;
      row["iterations"] = level.iterations;
      row["area_error_estimate"] = level.area_error_estimate;
    } else {
      row["status"] = "unbound";
      row["target_area"] = 2.0 * kPi * config.hbar * (entry.n + config.delta);
      if (entry.n_max) row["n_max"] = *entry.n_max;
    }
    levels.push_back(std::move(row));
  }
  document["levels"] = std::move(levels);
  document["meta"] = meta_json(config);
  emit_json(document, out);
}

// ----------------------------------------------------------------- compare

struct ReferenceColumn {
  std::string name;
  std::vector<double> values; // aligned with the level range
};

std::vector<ReferenceColumn> reference_columns(const RunConfig& config) {
  std::vector<ReferenceColumn> columns;
  const bool deformed = config.alpha > 0.0 && config.beta > 0.0;
  if (config.problem == ProblemKind::Oscillator) {
    if (deformed) {
      ReferenceColumn wkb{"wkb_closed", {}};
      for (int n = config.n_from; n <= config.n_to; ++n)
        wkb.values.push_back(
            oscillator_wkb_closed(config.alpha, config.beta, n, config.delta));
      columns.push_back(std::move(wkb));
      if (config.alpha * config.beta < 1.0) {
        ReferenceColumn exact{"exact_leading", {}};
        for (int n = config.n_from; n <= config.n_to; ++n)
          exact.values.push_back(
              oscillator_exact_leading(config.alpha, config.beta, n));
        columns.push_back(std::move(exact));
      }
    }
    ReferenceColumn linear{"linear", {}};
    for (int n = config.n_from; n <= config.n_to; ++n)
      linear.values.push_back(oscillator_linear(config.alpha, config.beta, n));
    columns.push_back(std::move(linear));
  } else {
    ReferenceColumn linear{"linear", {}};
    for (int n = config.n_from; n <= config.n_to; ++n)
      linear.values.push_back(
          well_linear(config.alpha, config.beta, config.a, n));
    columns.push_back(std::move(linear));
    if (config.beta == 0.0 && config.alpha > 0.0) {
      ReferenceColumn exact{"beta0_exact", {}};
      for (int n = config.n_from; n <= config.n_to; ++n)
        exact.values.push_back(well_beta0_exact(config.alpha, config.a, n));
      columns.push_back(std::move(exact));
    }
  }
  return columns;
}

void compare_table(const std::vector<SpectrumEntry>& entries,
                   const std::vector<ReferenceColumn>& columns,
                   const RunConfig& config, std::ostream& out) {
  out << std::setw(5) << "n" << std::setw(18) << "energy";
  for (const ReferenceColumn& column : columns)
    out << std::setw(18) << column.name << std::setw(16) << "abs_diff"
        << std::setw(14) << "rel_diff";
  out << '\n';
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const SpectrumEntry& entry = entries[i];
    out << std::setw(5) << entry.n;
    if (entry.status != LevelStatus::Bound) {
      out << std::setw(18) << "unbound" << '\n';
      continue;
    }
    const double energy = entry.level->energy;
    out << std::setw(18) << fmt(energy, kTableDigits);
    for (const ReferenceColumn& column : columns) {
      const double ref = column.values[i];
      const double abs_diff = std::fabs(energy - ref);
      out << std::setw(18) << fmt(ref, kTableDigits) << std::setw(16)
          << fmt(abs_diff, 4) << std::setw(14)
          << fmt(abs_diff / std::fabs(energy), 4);
    }
    out << '\n';
  }
  if (config.problem == ProblemKind::Oscillator)
    out << "oscillator_exact_offset = "
        << fmt(oscillator_exact_offset(config.alpha, config.beta),
               kTableDigits)
        << '\n';
}

void compare_csv(const std::vector<SpectrumEntry>& entries,
                 const std::vector<ReferenceColumn>& columns,
                 const RunConfig& config, std::ostream& out) {
  const bool oscillator = config.problem == ProblemKind::Oscillator;
  out << "n,energy,status";
  for (const ReferenceColumn& column : columns)
    out << ',' << column.name << ",absdiff_" << column.name << ",reldiff_"
        << column.name;
  if (oscillator) out << ",oscillator_exact_offset";
  out << '\n';
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const SpectrumEntry& entry = entries[i];
    out << entry.n << ',';
    if (entry.status != LevelStatus::Bound) {
      out << ",unbound";
      for (std::size_t k = 0; k < columns.size(); ++k) out << ",,,";
      if (oscillator) out << ',';
      out << '\n';
      continue;
    }
    const double energy = entry.level->energy;
    out << fmt(energy, kCsvDigits) << ",bound";
    for (const ReferenceColumn& column : columns) {
      const double ref = column.values[i];
      const double abs_diff = std::fabs(energy - ref);
      out << ',' << fmt(ref, kCsvDigits) << ',' << fmt(abs_diff, kCsvDigits)
          << ',' << fmt(abs_diff / std::fabs(energy), kCsvDigits);
    }
    if (oscillator)
      out << ','
          << fmt(oscillator_exact_offset(config.alpha, config.beta),
                 kCsvDigits);
    out << '\n';
  }
}

void compare_json(const std::vector<SpectrumEntry>& entries,
                  const std::vector<ReferenceColumn>& columns,
                  const RunConfig& config, std::ostream& out) {
  json document;
  document["config"] = config_json(config);
  json levels = json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const SpectrumEntry& entry = entries[i];
    json row;
    row["n"] = entry.n;
    if (entry.status != LevelStatus::Bound) {
      row["status"] = "unbound";
      levels.push_back(std::move(row));
      continue;
    }
    const double energy = entry.level->energy;
    row["status"] = "bound";
    row["energy"] = energy;
    json references;
    for (const ReferenceColumn& column : columns) {
      const double ref = column.values[i];
      const double abs_diff = std::fabs(energy - ref);
      references[column.name] = {{"value", ref},
                                 {"abs_diff", abs_diff},
                                 {"rel_diff", abs_diff / std::fabs(energy)}};
    }
    row["references"] = std::move(references);
    levels.push_back(std::move(row));
  }
  document["levels"] = std::move(levels);
  json meta = meta_json(config);
  if (config.problem == ProblemKind::Oscillator)
    meta["oscillator_exact_offset"] =
        oscillator_exact_offset(config.alpha, config.beta);
  document["meta"] = std::move(meta);
  emit_json(document, out);
}

// Key-value block used by the area / nmax / uncertainty tables.
void table_kv(std::ostream& out, const char* key, const std::string& value) {
  out << std::left << std::setw(20) << key << std::right << " = " << value
      << '\n';
}

} // namespace

void cmd_spectrum(const RunConfig& config, std::ostream& out,
                  std::ostream& err) {
  const Problem problem = make_problem(config);
  const Deformation deformation = make_deformation(config);
  warn_parity(problem, deformation, err);

  std::vector<SpectrumEntry> entries;
  try {
    entries = spectrum(problem, deformation, config.n_from, config.n_to,
                       config.delta, config.tol);
  } catch (const ParameterDomain& e) {
    throw ConfigError("--levels/--delta: " + std::string(e.what()));
  }

  switch (config.format) {
    case OutputFormat::Table: spectrum_table(entries, out); break;
    case OutputFormat::Csv: spectrum_csv(entries, config, out); break;
    case OutputFormat::Json: spectrum_json(entries, config, out); break;
  }
}

void cmd_compare(const RunConfig& config, std::ostream& out,
                 std::ostream& err) {
  if (config.problem == ProblemKind::Custom)
    throw ConfigError("--problem: no reference formula applies to custom potentials");
  if (!config.deformation_expr.empty())
    throw ConfigError(
        "--deformation-expr: no reference formula applies to expression "
        "deformations");
  if (config.hbar != 1.0)
    throw ConfigError("--hbar: reference formulas assume hbar = 1");

  const Problem problem = make_problem(config);
  const Deformation deformation = make_deformation(config);
  warn_parity(problem, deformation, err);

  std::vector<SpectrumEntry> entries;
  try {
    entries = spectrum(problem, deformation, config.n_from, config.n_to,
                       config.delta, config.tol);
  } catch (const ParameterDomain& e) {
    throw ConfigError("--levels/--delta: " + std::string(e.what()));
  }
  const std::vector<ReferenceColumn> columns = reference_columns(config);

  switch (config.format) {
    case OutputFormat::Table: compare_table(entries, columns, config, out); break;
    case OutputFormat::Csv: compare_csv(entries, columns, config, out); break;
    case OutputFormat::Json: compare_json(entries, columns, config, out); break;
  }
}

void cmd_area(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!std::isfinite(config.energy))
    throw ConfigError("--energy: required for the area command");

  const Problem problem = make_problem(config);
  const Deformation deformation = make_deformation(config);
  warn_parity(problem, deformation, err);

  const QuadratureResult area =
      phase_area(problem, deformation, config.energy, config.tol);
  const double n_plus_delta = area.value / (2.0 * kPi * config.hbar);

  switch (config.format) {
    case OutputFormat::Table:
      table_kv(out, "energy", fmt(config.energy, kTableDigits));
      table_kv(out, "area", fmt(area.value, kTableDigits));
      table_kv(out, "area_error_estimate", fmt(area.error_estimate, 4));
      table_kv(out, "evaluations", std::to_string(area.evaluations));
      table_kv(out, "n_plus_delta", fmt(n_plus_delta, kTableDigits));
      break;
    case OutputFormat::Csv:
      out << "energy,area,area_error_estimate,evaluations,n_plus_delta\n"
          << fmt(config.energy, kCsvDigits) << ',' << fmt(area.value, kCsvDigits)
          << ',' << fmt(area.error_estimate, kCsvDigits) << ','
          << area.evaluations << ',' << fmt(n_plus_delta, kCsvDigits) << '\n';
      break;
    case OutputFormat::Json: {
      json document;
      document["config"] = config_json(config);
      document["meta"] = meta_json(config);
      document["result"] = {{"area", area.value},
                            {"area_error_estimate", area.error_estimate},
                            {"evaluations", area.evaluations},
                            {"n_plus_delta", n_plus_delta}};
      emit_json(document, out);
      break;
    }
  }
}

void cmd_nmax(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Problem problem = make_problem(config);
  const Deformation deformation = make_deformation(config);
  warn_parity(problem, deformation, err);

  const AreaLimit limit = area_limit(problem, deformation);
  const std::optional<int> n_max = max_level(problem, deformation, config.delta);

  switch (config.format) {
    case OutputFormat::Table:
      table_kv(out, "area_limit",
               limit.is_finite() ? fmt(limit.value(), kTableDigits)
                                 : std::string("infinite"));
      table_kv(out, "n_max",
               n_max ? std::to_string(*n_max) : std::string("unbounded"));
      break;
    case OutputFormat::Csv:
      out << "area_limit,n_max\n"
          << (limit.is_finite() ? fmt(limit.value(), kCsvDigits)
                                : std::string("infinite"))
          << ','
          << (n_max ? std::to_string(*n_max) : std::string("unbounded"))
          << '\n';
      break;
    case OutputFormat::Json: {
      json document;
      document["config"] = config_json(config);
      document["meta"] = meta_json(config);
      json result;
      if (limit.is_finite())
        result["area_limit"] = limit.value();
      else
        result["area_limit"] = "infinite";
      if (n_max)
        result["n_max"] = *n_max;
      else
        result["n_max"] = "unbounded";
      document["result"] = std::move(result);
      emit_json(document, out);
      break;
    }
  }
}

void cmd_uncertainty(const RunConfig& config, std::ostream& out,
                     std::ostream& /*err*/) {
  double delta_x = 0.0;
  double delta_p = 0.0;
  double q = 0.0;
  try {
    delta_x = min_position_uncertainty(config.alpha, config.beta, config.hbar);
    delta_p = min_momentum_uncertainty(config.alpha, config.beta, config.hbar);
    q = q_factor(config.alpha, config.beta);
  } catch (const ParameterDomain& e) {
    throw ConfigError("--alpha/--beta/--hbar: " + std::string(e.what()));
  }

  switch (config.format) {
    case OutputFormat::Table:
      table_kv(out, "delta_x", fmt(delta_x, kTableDigits));
      table_kv(out, "delta_p", fmt(delta_p, kTableDigits));
      table_kv(out, "q_factor", fmt(q, kTableDigits));
      break;
    case OutputFormat::Csv:
      out << "delta_x,delta_p,q_factor\n"
          << fmt(delta_x, kCsvDigits) << ',' << fmt(delta_p, kCsvDigits) << ','
          << fmt(q, kCsvDigits) << '\n';
      break;
    case OutputFormat::Json: {
      json document;
      document["config"] = config_json(config);
      document["meta"] = meta_json(config);
      document["result"] = {
          {"delta_x", delta_x}, {"delta_p", delta_p}, {"q_factor", q}};
      emit_json(document, out);
      break;
    }
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Bound-state spectra of one-dimensional problems under deformed "
      "commutation relations [X,P] = i*hbar*f(X,P), quantized by the "
      "phase-space rule"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  RawOptions raw;
  const auto add_common = [&raw](CLI::App* cmd) {
    cmd->add_option("--problem", raw.problem, "oscillator|well|custom");
    cmd->add_option("--a", raw.a, "square-well half-width");
    cmd->add_option("--potential-expr", raw.potential_expr,
                    "U(X) for --problem custom, e.g. 'X^4'");
    cmd->add_option("--scan-lo", raw.scan_lo, "turning-point scan lower bound");
    cmd->add_option("--scan-hi", raw.scan_hi, "turning-point scan upper bound");
    cmd->add_option("--alpha", raw.alpha, "deformation parameter alpha");
    cmd->add_option("--beta", raw.beta, "deformation parameter beta");
    cmd->add_option("--deformation-expr", raw.deformation_expr,
                    "f(X,P) expression, e.g. '1 + 0.1*P^2'");
    cmd->add_option("--hbar", raw.hbar, "Planck constant (default 1)");
    cmd->add_option("--delta", raw.delta,
                    "quantization offset (default 1/2; 0 for the well)");
    cmd->add_option("--levels", raw.levels, "level range FROM..TO");
    cmd->add_option("--energy", raw.energy, "energy for the area command");
    cmd->add_option("--tol", raw.tol, "relative solver tolerance (default 1e-9)");
    cmd->add_option("--format", raw.format, "table|csv|json");
    cmd->add_option("--config", raw.config_path,
                    "JSON config file; flags override it");
    cmd->add_option("--out", raw.out, "output path (default: stdout)");
  };

  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "solve the requested levels");
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "solved levels against the closed-form spectra");
  CLI::App* area_cmd =
      app.add_subcommand("area", "phase-space area A(E) at one energy");
  CLI::App* nmax_cmd =
      app.add_subcommand("nmax", "area limit and bound-state count");
  CLI::App* uncertainty_cmd = app.add_subcommand(
      "uncertainty", "minimal uncertainties and q factor of the quadratic family");
  for (CLI::App* cmd :
       {spectrum_cmd, compare_cmd, area_cmd, nmax_cmd, uncertainty_cmd})
    add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const RunConfig config = resolve_config(raw);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!config.out_path.empty()) {
      file.open(config.out_path);
      if (!file)
        throw ConfigError("--out: cannot write '" + config.out_path + "'");
      out = &file;
    }

    if (spectrum_cmd->parsed())
      cmd_spectrum(config, *out, std::cerr);
    else if (compare_cmd->parsed())
      cmd_compare(config, *out, std::cerr);
    else if (area_cmd->parsed())
      cmd_area(config, *out, std::cerr);
    else if (nmax_cmd->parsed())
      cmd_nmax(config, *out, std::cerr);
    else
      cmd_uncertainty(config, *out, std::cerr);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParameterDomain& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

} // namespace gupspec::cli
