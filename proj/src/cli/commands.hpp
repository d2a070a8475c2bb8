#pragma once

#include <ostream>

#include "cli/options.hpp"

namespace gupspec::cli {

// Full command-line entry point: parse, dispatch, map errors to exit codes
// (0 success, 1 configuration error, 2 numerical failure).
int run_cli(int argc, const char* const* argv);

// Individual commands write their report to `out` and throw ConfigError /
// gupspec::Error on failure; run_cli translates those into exit codes.
// Warnings go to `err`.
void cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
void cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
void cmd_area(const RunConfig& config, std::ostream& out, std::ostream& err);
void cmd_nmax(const RunConfig& config, std::ostream& out, std::ostream& err);
void cmd_uncertainty(const RunConfig& config, std::ostream& out,
                     std::ostream& err);

} // namespace gupspec::cli
