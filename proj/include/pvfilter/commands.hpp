#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "pvfilter/config.hpp"

namespace pvfilter {

/// Exit codes: 0 success, 1 verification failure, 2 input or config error.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInputError = 2 };

struct CommandOptions {
  bool oracle = false;
  std::optional<std::string> only;
  std::optional<double> tol;
};

// Data goes to out, diagnostics to err. Library errors are reported on err
// and mapped to kExitInputError; nothing propagates.
int cmd_decompose(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_prop(const RunConfig& config, const CommandOptions& options, std::ostream& out,
             std::ostream& err);
int cmd_respond(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_born(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_count(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_dirac_verify(const RunConfig& config, const CommandOptions& options,
                     std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out,
               std::ostream& err);

/// Dispatch by subcommand name; unknown names give kExitInputError.
int run_command(const std::string& name, const RunConfig& config,
                const CommandOptions& options, std::ostream& out, std::ostream& err);

/// "%.16e": 17 significant digits.
std::string format_number(double value);

}  // namespace pvfilter
