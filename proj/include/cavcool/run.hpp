#pragma once

#include <string>
#include <vector>

#include "cavcool/config.hpp"
#include "cavcool/output.hpp"

// Command-line entry point and the named reproduction targets (standard
// result tables computed from the built-in scenarios).

namespace cavcool {

/// Names accepted by `cavcool reproduce`.
[[nodiscard]] const std::vector<std::string>& reproduce_target_names();

/// Compute one reproduction target.  Throws DomainError for an unknown name.
[[nodiscard]] Table reproduce_target(const std::string& name, int threads = 1);

/// One-row table for the configured scenario: steady-state force, friction,
/// diffusion, temperature, saturation, and the cavity figures.
[[nodiscard]] Table solve_table(const RunConfig& config);

/// Parameter sweep described by the config's sweep block.
[[nodiscard]] Table scan_table(const RunConfig& config, int threads);

/// Wavelength-averaged response of the configured scenario.
[[nodiscard]] Table average_table(const RunConfig& config, int threads);

/// Optimized response: inside over (position, detuning), outside over the
/// atom-mirror distance, custom over the mobile element's position.
[[nodiscard]] Table optimize_table(const RunConfig& config, int threads);

/// Full CLI: subcommands solve, scan, average, optimize, reproduce.
/// Returns the process exit code: 0 on success, 1 for usage or
/// configuration errors, 2 when the physics or a solver reports failure.
int run_cli(int argc, const char* const* argv);

} // namespace cavcool
