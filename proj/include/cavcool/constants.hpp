#pragma once

// Physical constants (SI) and the default atomic species parameters used by
// the built-in scenarios.

namespace cavcool {

namespace constants {

/// Speed of light in vacuum [m/s].
inline constexpr double c = 299792458.0;

/// Vacuum permittivity [F/m].
inline constexpr double epsilon0 = 8.8541878128e-12;

/// Reduced Planck constant [J s].
inline constexpr double hbar = 1.054571817e-34;

/// Boltzmann constant [J/K].
inline constexpr double k_boltzmann = 1.380649e-23;

inline constexpr double pi = 3.14159265358979323846;

} // namespace constants

namespace rb85 {

/// Half width at half maximum of the D2 line, in angular units [1/s];
/// equals pi * (natural linewidth of 6.0666 MHz).
inline constexpr double gamma_hwhm = 1.9058e7;

/// Atomic mass [kg].
inline constexpr double mass = 1.41e-25;

/// D2 transition wavelength [m].
inline constexpr double wavelength = 780e-9;

/// Saturation intensity of the cycling transition [W/m^2].
inline constexpr double saturation_intensity = 16.7;

/// Dimensionless light-atom coupling strength at a 30 um beam waist.
/// Calibrated so that a detuning of -10 linewidths yields a polarizability
/// of 4.1e-5 + 4.1e-6 i; scales with (waist_ref / waist)^2.
inline constexpr double coupling_at_30um = 4.141e-4;

/// Reference beam waist for coupling_at_30um [m].
inline constexpr double waist_ref = 30e-6;

} // namespace rb85

} // namespace cavcool
