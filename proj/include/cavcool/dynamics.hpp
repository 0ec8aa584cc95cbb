#pragma once

#include <optional>

#include "cavcool/stack.hpp"

// Dynamics of the mobile element: velocity-linear friction from a
// position-modulation sideband solve, momentum diffusion from vacuum input
// noise plus spontaneous-emission recoil, and the resulting equilibrium
// temperature.

namespace cavcool {

/// Parameters of the position-modulation probe used to extract friction.
/// omega is the (small) modulation angular frequency, epsilon the (small)
/// modulation amplitude; friction is the zero-frequency limit, reached by
/// Richardson extrapolation in omega.  epsilon cancels exactly in the
/// linear response and only has to stay small enough that first order is
/// meaningful.
struct ModulationProbe {
    double omega;   ///< [1/s]
    double epsilon; ///< [m]
};

/// Velocity-linear force coefficient lambda of the mobile element [kg/s]:
/// F = lambda * v; negative means cooling.  Evaluated at a single
/// modulation frequency omega (no extrapolation).
[[nodiscard]] double friction_at(const Stack& stack, double omega, double epsilon);

/// Friction in the omega -> 0 limit: Richardson extrapolation over
/// {omega, omega/2, omega/4}.  Throws DiagnosticError (carrying the two
/// extrapolants) when the extrapolation has not settled to 5%.
[[nodiscard]] double friction_coefficient(const Stack& stack, const ModulationProbe& probe);

/// Momentum diffusion coefficient of the mobile element [kg^2 m^2 / s^3],
/// with <Delta p^2> = 2 D t: vacuum-noise contribution from the two outer
/// ports and the loss ports of absorbing elements, evaluated in the
/// white-noise limit, plus the direction randomness of spontaneous emission
/// when the mobile element is an atom.
[[nodiscard]] double diffusion(const Stack& stack);

/// Spectral density of the vacuum-driven force on the mobile element at
/// sideband frequency omega [N^2 s], summed over the two outer input ports
/// and one loss port per element with Im zeta > 0 (the extra channel of the
/// unitary completion of a lossy sheet).  The diffusion above equals half
/// its omega = 0 value plus the emission recoil term.
[[nodiscard]] double force_noise_spectrum(const Stack& stack, double omega);

/// Equilibrium temperature k_B T = -D / lambda [K].  Requires lambda < 0
/// (damping); otherwise there is no steady state and PhysicsError is thrown.
[[nodiscard]] double equilibrium_temperature(double friction, double diffusion_coefficient);

struct DynamicalResponse {
    double static_force;                 ///< [N]
    double friction;                     ///< [kg/s]
    double diffusion;                    ///< [kg^2 m^2 / s^3]
    std::optional<double> temperature;   ///< [K]; absent when not cooling
    std::optional<double> cooling_time;  ///< 1/e velocity time, -m/lambda [s];
                                         ///< absent without an atom or when heating
    std::optional<double> saturation;    ///< local s at the mobile element;
                                         ///< absent unless it is an atom
};

/// Convenience bundle: static force, extrapolated friction, diffusion, and
/// the derived temperature / cooling time where defined.
[[nodiscard]] DynamicalResponse dynamical_response(const Stack& stack,
                                                   const ModulationProbe& probe);

enum class CavityRegime { intracavity, external };

/// Cold-regime temperature floor for a cavity of linewidth kappa (HWHM,
/// angular): hbar kappa / k_B inside the cavity, 1.9 x that outside.
[[nodiscard]] double temperature_asymptote(double kappa, CavityRegime regime);

} // namespace cavcool
