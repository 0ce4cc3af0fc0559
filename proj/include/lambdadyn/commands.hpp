#pragma once

// Subcommand implementations shared by the executable and the bindings.
// Each writes CSV to cfg.out (stdout when empty or "-") and returns an exit
// status; diagnostics go to `err`.

#include <ostream>
#include <string_view>

#include "lambdadyn/config.hpp"

namespace lambdadyn {

enum ExitStatus : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitIo = 2,
  kExitNumerical = 3,
  kExitConfig = 4,
};

int cmd_propagate(const RunConfig& cfg, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& err);
int cmd_gap(const RunConfig& cfg, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& err);

/// Dispatches on "propagate", "sweep", "gap" or "validate".
int run_command(std::string_view name, const RunConfig& cfg, std::ostream& err);

}  // namespace lambdadyn
