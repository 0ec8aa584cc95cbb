#include "cavcool/elements.hpp"

#include <string>

namespace cavcool {

Complex Polarizability::at(double k) const
{
    if (!dispersion)
        return value;
    const Dispersion& d = *dispersion;
    if (std::abs(k - d.k_ref) > d.k_halfwidth)
        throw DomainError("Polarizability::at: wavenumber " + std::to_string(k) +
                          " is outside the dispersion mapping's validity band around " +
                          std::to_string(d.k_ref));
    const double delta = d.delta_ref + constants::c * (k - d.k_ref);
    return -d.coupling * d.gamma / Complex(delta, d.gamma);
}

MirrorCoefficients mirror_coefficients(Complex zeta)
{
    const Complex denom = 1.0 - Complex(0, 1) * zeta;
    if (std::abs(denom) == 0.0)
        throw DomainError("mirror_coefficients: singular scatterer (zeta = -i)");
    const Complex t = 1.0 / denom;
    const Complex r = Complex(0, 1) * zeta * t;
    return {r, t};
}

namespace {

void validate(const AtomModel& atom)
{
    if (!(atom.gamma > 0.0))
        throw DomainError("AtomModel: gamma must be positive");
    if (!(atom.coupling > 0.0))
        throw DomainError("AtomModel: coupling must be positive");
    if (!(atom.saturation_intensity > 0.0))
        throw DomainError("AtomModel: saturation intensity must be positive");
    if (!(atom.mass > 0.0))
        throw DomainError("AtomModel: mass must be positive");
    if (!(atom.wavelength > 0.0))
        throw DomainError("AtomModel: wavelength must be positive");
}

} // namespace

Complex atom_zeta(const AtomModel& atom, double delta)
{
    validate(atom);
    return -atom.coupling * atom.gamma / Complex(delta, atom.gamma);
}

Polarizability atom_polarizability(const AtomModel& atom, double k_ref, bool with_dispersion)
{
    Polarizability p;
    p.value = atom_zeta(atom, atom.detuning);
    if (with_dispersion) {
        if (!(k_ref > 0.0))
            throw DomainError("atom_polarizability: reference wavenumber must be positive");
        p.dispersion = Dispersion{atom.gamma, atom.detuning, atom.coupling, k_ref,
                                  0.05 * k_ref};
    }
    return p;
}

Matrix2 scatterer_matrix(const Polarizability& polarizability, double k)
{
    return scatterer_matrix(polarizability.at(k));
}

double coupling_for_waist(double waist)
{
    if (!(waist > 0.0))
        throw DomainError("coupling_for_waist: waist must be positive");
    const double ratio = rb85::waist_ref / waist;
    return rb85::coupling_at_30um * ratio * ratio;
}

} // namespace cavcool
