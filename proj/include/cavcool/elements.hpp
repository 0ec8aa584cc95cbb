#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include <Eigen/Core>

#include "cavcool/constants.hpp"
#include "cavcool/errors.hpp"

// Optical elements for the 1D transfer-matrix model.
//
// Conventions (used consistently across the library):
//  * time dependence exp(-i w t);
//  * the field at a station is the pair (rightward, leftward) of complex
//    amplitudes, in units where a travelling wave of amplitude a carries
//    intensity I = 2 eps0 c |a|^2;
//  * a transfer matrix maps the pair just LEFT of an element (or region) to
//    the pair just RIGHT of it:  (C, D)^T = M (A, B)^T.

namespace cavcool {

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Vector2c = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

using Complex = std::complex<double>;
using Matrix2 = Matrix2c<double>;
using Vector2 = Vector2c<double>;

/// Transfer matrix of a thin polarizable sheet with dimensionless
/// polarizability zeta.  Unit determinant for any zeta.
template <typename Scalar>
[[nodiscard]] Matrix2c<Scalar> scatterer_matrix(std::complex<Scalar> zeta)
{
    const std::complex<Scalar> iz = std::complex<Scalar>(0, 1) * zeta;
    Matrix2c<Scalar> m;
    m << Scalar(1) + iz, iz,
         -iz, Scalar(1) - iz;
    return m;
}

/// Transfer matrix of free propagation over a distance x at wavenumber k.
/// The phase k*x is reduced modulo 2 pi in extended precision: for
/// millimetre-scale stacks at optical wavenumbers the raw product holds
/// thousands of radians and a naive reduction costs significant phase.
template <typename Scalar>
[[nodiscard]] Matrix2c<Scalar> propagation_matrix(Scalar k, Scalar x)
{
    constexpr long double two_pi = 6.283185307179586476925286766559L;
    const long double phase =
        std::fmod(static_cast<long double>(k) * static_cast<long double>(x), two_pi);
    const Scalar ph = static_cast<Scalar>(phase);
    Matrix2c<Scalar> m;
    m << std::polar(Scalar(1), ph), std::complex<Scalar>(0, 0),
         std::complex<Scalar>(0, 0), std::polar(Scalar(1), -ph);
    return m;
}

/// Reflection and transmission amplitudes of a single scatterer pumped from
/// the left: r = i zeta / (1 - i zeta), t = 1 / (1 - i zeta).
struct MirrorCoefficients {
    Complex r;
    Complex t;
};

[[nodiscard]] MirrorCoefficients mirror_coefficients(Complex zeta);

/// Two-level atom parameters.  `detuning` is the pump-atom detuning at the
/// reference wavenumber used when the polarizability is built; angular
/// frequencies throughout, gamma being the half width at half maximum.
struct AtomModel {
    double gamma = rb85::gamma_hwhm;
    double detuning = -10.0 * rb85::gamma_hwhm;
    double coupling = rb85::coupling_at_30um;
    double saturation_intensity = rb85::saturation_intensity;
    double mass = rb85::mass;
    double wavelength = rb85::wavelength;
};

/// Lorentzian polarizability of a two-level scatterer:
///   zeta(Delta) = -coupling * gamma / (Delta + i gamma).
[[nodiscard]] Complex atom_zeta(const AtomModel& atom, double delta);

/// Frequency dependence of an atomic polarizability: the detuning seen by a
/// wave of wavenumber k is delta_ref + c (k - k_ref).  The mapping is only
/// honoured within k_ref +- k_halfwidth, a band far wider than any sideband
/// this library generates but narrow enough to catch a wavenumber mixup.
struct Dispersion {
    double gamma;
    double delta_ref;
    double coupling;
    double k_ref;
    double k_halfwidth;
};

/// A possibly wavenumber-dependent polarizability.  Without dispersion the
/// value is constant (a rigid scatterer, or an atom with its frequency
/// response deliberately frozen).
struct Polarizability {
    Complex value;
    std::optional<Dispersion> dispersion;

    [[nodiscard]] Complex at(double k) const;
};

/// Polarizability of `atom` referenced to wavenumber k_ref, i.e. the stored
/// detuning is the detuning of a wave at exactly k_ref.  With
/// `with_dispersion` false the value is frozen at its k_ref value.
[[nodiscard]] Polarizability atom_polarizability(const AtomModel& atom, double k_ref,
                                                 bool with_dispersion);

/// Transfer matrix of a scatterer with the given polarizability evaluated
/// at wavenumber k.
[[nodiscard]] Matrix2 scatterer_matrix(const Polarizability& polarizability, double k);

/// Light-atom coupling strength for a beam waist w, scaled from the
/// calibration point as (waist_ref / w)^2.
[[nodiscard]] double coupling_for_waist(double waist);

} // namespace cavcool
