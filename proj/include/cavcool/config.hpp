#pragma once

#include <optional>
#include <string>

#include "cavcool/scenarios.hpp"

// Declarative run configuration: JSON with quantities carried as explicit
// unit strings ("495 um", "2 pW", "-2.6 kappa") and normalized to SI on
// parse.  Unknown keys are rejected.

namespace cavcool {

/// What a sweep should vary.  Values are dimensionless: positions and
/// distances in wavelengths, detunings in cavity half linewidths.
struct SweepAxis {
    enum class Parameter { position_wl, distance_wl, detuning_kappa };
    Parameter parameter = Parameter::position_wl;
    double from = 0.0;
    double to = 1.0;
    int points = 256;
};

struct OutputSpec {
    std::string path;   ///< empty: write to stdout
    std::string format = "csv"; ///< "csv" or "json"
    int precision = 9;  ///< significant digits
};

struct RunConfig {
    enum class Kind { inside, outside, custom };
    Kind kind = Kind::inside;
    InsideScenario inside;
    OutsideScenario outside;
    Stack custom_stack;
    std::optional<ModulationProbe> probe; ///< overrides the scenario default
    std::optional<SweepAxis> sweep;
    OutputSpec output;
};

/// Parse a JSON config document.  Throws DomainError naming the offending
/// key or value on any problem.
[[nodiscard]] RunConfig parse_config(const std::string& json_text);

/// Parse the config file at `path`.
[[nodiscard]] RunConfig load_config(const std::string& path);

/// Emit a JSON document that parses back to the same configuration.
[[nodiscard]] std::string serialize_config(const RunConfig& config);

/// Parse "value [unit]" into SI for one dimension: "power" (W), "length"
/// (m), "area" (m2), "rate" (/s), or "none".
[[nodiscard]] double parse_quantity(const std::string& text, const std::string& dimension);

/// Parse "value kappa" / "value Gamma" into a PumpDetuning.
[[nodiscard]] PumpDetuning parse_detuning(const std::string& text);

/// Build the configured scenario.  For custom stacks the cavity figures are
/// measured from the stack itself and the probe must be given explicitly.
[[nodiscard]] BuiltScenario build_from_config(const RunConfig& config);

} // namespace cavcool
