#pragma once

#include <iosfwd>

#include "aoi/cli/config.hpp"

namespace aoi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCap = 3;

/// Runs one experiment. Human-readable results go to `out`, diagnostics to
/// `err`; files named in the config are written once at the end.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// The machine-readable report run() writes to `config.out`.
nlohmann::json build_report(const ExperimentConfig& config);

/// Command-line entry point: subcommand, flags, optional --config file.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aoi::cli
