#pragma once

#include "cavcool/dynamics.hpp"
#include "cavcool/stack.hpp"

// Cavity characterization and the two built-in experiments: an atom held
// inside a two-mirror resonator, and an atom in front of one (the pump
// reaching it directly, the resonator acting as a frequency-selective
// retro-mirror).

namespace cavcool {

struct CavityFigures {
    double finesse;
    double fsr;         ///< free spectral range [Hz]
    double kappa;       ///< half linewidth, angular [1/s]
    double buildup;     ///< peak interior intensity / pump intensity at resonance
    double k_resonance; ///< [1/m]
};

/// Locate the resonance of the immobile part of the stack nearest its
/// operating wavenumber and measure finesse, free spectral range, linewidth
/// and buildup.  The mobile element (if any) is turned off for the scan.
/// Throws DiagnosticError when there is no usable resonance (fewer than two
/// immobile elements, or finesse below 2).
[[nodiscard]] CavityFigures characterize_cavity(const Stack& stack);

/// How a detuning number is to be read: units of the cavity half linewidth
/// or of the atomic half linewidth.
enum class DetuningUnit { kappa, gamma };

struct PumpDetuning {
    double value = 0.0;
    DetuningUnit unit = DetuningUnit::kappa;
};

struct InsideScenario {
    double cavity_length = 495e-6;       ///< mirror spacing [m]
    Complex mirror_zeta = {-133.5, 0.0};
    double waist = 30e-6;                ///< beam waist at the atom [m]
    double wavelength = 780e-9;          ///< nominal operating wavelength [m]
    double power = 2e-12;                ///< pump power [W]
    PumpDetuning detuning = {-2.6, DetuningUnit::kappa}; ///< pump minus bare cavity resonance
    double atom_detuning_gamma = -10.0;  ///< pump minus atomic transition, at the pump [gamma]
    std::optional<double> atom_position; ///< [m]; default: antinode nearest the middle
    bool atom_dispersion = true;
    double s_max = 0.14;                 ///< saturation budget at the reference point
};

struct OutsideScenario {
    double cavity_length = 495e-6;
    Complex mirror_zeta = {-133.5, 0.0};
    double waist = 1e-6;
    double wavelength = 780e-9;
    double power = 200e-12;
    /// Pump minus bare cavity resonance; when absent, the builder sweeps it
    /// to the friction optimum at the configured distance.
    std::optional<PumpDetuning> detuning;
    double atom_detuning_gamma = -10.0;
    std::optional<double> distance; ///< atom to near mirror [m]; default: quarter wavelength
    bool atom_dispersion = true;
    double s_max = 0.14;
};

/// A ready-to-run stack with the cavity's measured figures.  s_reference is
/// the saturation the atom would see at the antinode of its region with the
/// pump on the bare cavity resonance (the budget-setting worst case).
struct BuiltScenario {
    Stack stack;
    CavityFigures cavity;
    double k_solve = 0.0;
    ModulationProbe default_probe{};
    CavityRegime regime = CavityRegime::intracavity;
    double s_reference = 0.0;
};

[[nodiscard]] BuiltScenario build_inside(const InsideScenario& scenario);
[[nodiscard]] BuiltScenario build_outside(const OutsideScenario& scenario);

/// Largest pump power honouring a saturation budget, given that the
/// reference saturation is linear in power.
[[nodiscard]] double max_power_for_saturation(const BuiltScenario& built, double s_target);

} // namespace cavcool
