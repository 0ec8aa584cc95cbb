#include "cavcool/stack.hpp"

#include <cmath>
#include <string>

namespace cavcool {

namespace {

using constants::c;
using constants::epsilon0;

[[nodiscard]] Matrix2 element_matrix(const Element& e, double k)
{
    return scatterer_matrix(e.zeta_at(k));
}

/// Boundary-value solve shared by the pumped and unit-injection variants.
FieldState solve_with(const Stack& stack, double k, double amplitude, PumpSpec::Side side,
                      double power, double mode_area)
{
    validate(stack);
    if (!(k > 0.0))
        throw DomainError("solve_fields: wavenumber must be positive");

    const Matrix2 total = compose(stack, k);
    const Complex m22 = total(1, 1);
    if (std::abs(m22) == 0.0)
        throw SolverError("solve_fields: singular transfer matrix (M22 = 0)");

    FieldState fs;
    fs.k = k;
    fs.input = amplitude;
    fs.mode_area = mode_area;
    fs.power = power;
    fs.at.reserve(stack.elements.size());

    Vector2 v; // field pair at the left face of the first element
    if (side == PumpSpec::Side::left) {
        const Complex r = -total(1, 0) / m22;
        const Complex t = 1.0 / m22;
        fs.reflected = r * amplitude;
        fs.transmitted = t * amplitude;
        v << Complex(amplitude), r * amplitude;
    } else {
        const Complex rp = total(0, 1) / m22;
        const Complex tp = 1.0 / m22;
        fs.reflected = rp * amplitude;
        fs.transmitted = tp * amplitude;
        v << Complex(0.0), tp * amplitude;
    }

    for (std::size_t j = 0; j < stack.elements.size(); ++j) {
        if (j > 0) {
            const double gap = stack.elements[j].position - stack.elements[j - 1].position;
            v = propagation_matrix(k, gap) * v;
        }
        InterfaceFields f;
        f.left = v;
        v = element_matrix(stack.elements[j], k) * v;
        f.right = v;
        fs.at.push_back(f);
    }
    return fs;
}

} // namespace

Element make_mirror(Complex zeta, double position)
{
    Element e;
    e.polarizability = Polarizability{zeta, std::nullopt};
    e.position = position;
    return e;
}

Element make_atom_element(const AtomModel& atom, double position, double k_ref,
                          bool with_dispersion, bool mobile)
{
    Element e;
    e.polarizability = atom_polarizability(atom, k_ref, with_dispersion);
    e.position = position;
    e.mobile = mobile;
    e.atom = atom;
    return e;
}

const Element& Stack::mobile() const
{
    if (mobile_index < 0 || mobile_index >= static_cast<int>(elements.size()))
        throw DomainError("Stack::mobile: no mobile element");
    return elements[static_cast<std::size_t>(mobile_index)];
}

void validate(const Stack& stack)
{
    for (std::size_t j = 1; j < stack.elements.size(); ++j) {
        if (stack.elements[j].position < stack.elements[j - 1].position)
            throw DomainError("stack: element positions must be non-decreasing");
    }
    int mobile_count = 0;
    for (const Element& e : stack.elements)
        mobile_count += e.mobile ? 1 : 0;
    if (mobile_count > 1)
        throw DomainError("stack: at most one mobile element is supported");
    if (stack.mobile_index >= 0) {
        if (stack.mobile_index >= static_cast<int>(stack.elements.size()))
            throw DomainError("stack: mobile_index out of range");
        if (!stack.elements[static_cast<std::size_t>(stack.mobile_index)].mobile)
            throw DomainError("stack: mobile_index does not point at a mobile element");
    } else if (mobile_count != 0) {
        throw DomainError("stack: mobile element present but mobile_index not set");
    }
    if (!(stack.pump.power >= 0.0))
        throw DomainError("stack: pump power must be non-negative");
    if (!(stack.pump.mode_area > 0.0))
        throw DomainError("stack: pump mode area must be positive");
    if (!(stack.wavelength > 0.0))
        throw DomainError("stack: wavelength must be positive");
}

Matrix2 compose(const Stack& stack, double k)
{
    Matrix2 total = Matrix2::Identity();
    for (std::size_t j = 0; j < stack.elements.size(); ++j) {
        if (j > 0) {
            const double gap = stack.elements[j].position - stack.elements[j - 1].position;
            total = propagation_matrix(k, gap) * total;
        }
        total = element_matrix(stack.elements[j], k) * total;
    }
    return total;
}

FieldState solve_fields(const Stack& stack, double k)
{
    const double amplitude =
        std::sqrt(stack.pump.power / (2.0 * epsilon0 * c * stack.pump.mode_area));
    return solve_with(stack, k, amplitude, stack.pump.side, stack.pump.power,
                      stack.pump.mode_area);
}

FieldState solve_fields(const Stack& stack)
{
    return solve_fields(stack, stack.k0());
}

FieldState solve_unit_injection(const Stack& stack, double k, PumpSpec::Side side)
{
    return solve_with(stack, k, 1.0, side, 0.0, stack.pump.mode_area);
}

double force_on(const Stack& stack, int index, const FieldState& fields)
{
    if (index < 0 || index >= static_cast<int>(fields.at.size()))
        throw DomainError("force_on: element index out of range");
    const InterfaceFields& f = fields.at[static_cast<std::size_t>(index)];
    return 2.0 * epsilon0 * stack.pump.mode_area *
           (f.left.squaredNorm() - f.right.squaredNorm());
}

double local_intensity(const FieldState& fields, int index)
{
    if (index < 0 || index >= static_cast<int>(fields.at.size()))
        throw DomainError("local_intensity: element index out of range");
    const Vector2& v = fields.at[static_cast<std::size_t>(index)].left;
    return 2.0 * epsilon0 * c * std::norm(v(0) + v(1));
}

double local_saturation(const Stack& stack, const FieldState& fields, int index)
{
    if (index < 0 || index >= static_cast<int>(stack.elements.size()))
        throw DomainError("local_saturation: element index out of range");
    const Element& e = stack.elements[static_cast<std::size_t>(index)];
    if (!e.atom)
        throw DomainError("local_saturation: element is not an atom");
    const AtomModel& atom = *e.atom;
    double delta = atom.detuning;
    if (e.polarizability.dispersion) {
        const Dispersion& d = *e.polarizability.dispersion;
        delta = d.delta_ref + c * (fields.k - d.k_ref);
    }
    const double lorentz = atom.gamma * atom.gamma / (delta * delta + atom.gamma * atom.gamma);
    return local_intensity(fields, index) / atom.saturation_intensity * lorentz;
}

double region_peak_enhancement(const Stack& stack, int index, double k)
{
    if (index < 0 || index >= static_cast<int>(stack.elements.size()))
        throw DomainError("region_peak_enhancement: element index out of range");
    Stack probe = stack;
    probe.elements[static_cast<std::size_t>(index)].polarizability = Polarizability{0.0, std::nullopt};
    const FieldState fs = solve_unit_injection(probe, k, stack.pump.side);
    // With the element turned off, its interface fields are the travelling
    // amplitudes (u, w) of the surrounding region; |u| and |w| are invariant
    // along the region, so the antinode intensity is (|u| + |w|)^2.
    const Vector2& v = fs.at[static_cast<std::size_t>(index)].left;
    const double peak = std::abs(v(0)) + std::abs(v(1));
    return peak * peak;
}

} // namespace cavcool
