#pragma once

#include <optional>
#include <vector>

#include "cavcool/elements.hpp"

// A stack is an ordered sequence of thin scatterers on a line, pumped by a
// monochromatic beam from one side.  This header provides the global
// transfer matrix, the steady-state field solve, and the local observables
// derived from it (force, intensity, saturation).

namespace cavcool {

struct PumpSpec {
    enum class Side { left, right };

    double power = 0.0;     ///< [W]
    double mode_area = 1.0; ///< effective beam cross-section [m^2]
    Side side = Side::left;
    /// Bookkeeping only: pump detuning from the cavity resonance (angular),
    /// recorded by the scenario builders for output metadata.
    std::optional<double> detuning_from_cavity;
};

struct Element {
    Polarizability polarizability;
    double position = 0.0; ///< [m]
    bool mobile = false;
    std::optional<AtomModel> atom; ///< set when the element is a real atom

    [[nodiscard]] Complex zeta_at(double k) const { return polarizability.at(k); }
};

[[nodiscard]] Element make_mirror(Complex zeta, double position);
[[nodiscard]] Element make_atom_element(const AtomModel& atom, double position, double k_ref,
                                        bool with_dispersion, bool mobile = true);

struct Stack {
    std::vector<Element> elements; ///< positions non-decreasing, left to right
    int mobile_index = -1;         ///< index of the mobile element, -1 if none
    PumpSpec pump;
    double wavelength = 780e-9; ///< operating (pump) wavelength [m]

    [[nodiscard]] double k0() const { return 2.0 * constants::pi / wavelength; }
    [[nodiscard]] const Element& mobile() const;
};

/// Throws DomainError unless elements are sorted, the mobile index is
/// consistent, and the pump is physical.  An empty element list is legal
/// (the stack degenerates to free space).
void validate(const Stack& stack);

/// Field pairs immediately left and right of one element; components are
/// (rightward, leftward).
struct InterfaceFields {
    Vector2 left;
    Vector2 right;
};

/// Steady-state solution of the stack at one wavenumber.
struct FieldState {
    double k = 0.0;      ///< wavenumber of this solve [1/m]
    Complex input;       ///< incoming amplitude on the pump side
    Complex reflected;   ///< outgoing amplitude back through the pump side
    Complex transmitted; ///< outgoing amplitude through the far side
    std::vector<InterfaceFields> at; ///< one entry per element
    double mode_area = 1.0;
    double power = 0.0;
};

/// Total transfer matrix of the stack at wavenumber k, mapping the field
/// pair left of the first element to the pair right of the last.
[[nodiscard]] Matrix2 compose(const Stack& stack, double k);

/// Steady-state fields under the stack's pump at wavenumber k.  The input
/// amplitude is sqrt(P / (2 eps0 c S)), real and positive.
[[nodiscard]] FieldState solve_fields(const Stack& stack, double k);
[[nodiscard]] FieldState solve_fields(const Stack& stack);

/// Same boundary-value solve with a unit-amplitude probe injected from
/// `side` instead of the pump; used for response functions.
[[nodiscard]] FieldState solve_unit_injection(const Stack& stack, double k, PumpSpec::Side side);

/// Radiation force on one element along +z [N]:
///   F = 2 eps0 S (|A|^2 + |B|^2 - |C|^2 - |D|^2).
[[nodiscard]] double force_on(const Stack& stack, int index, const FieldState& fields);

/// Local field intensity at an element, 2 eps0 c |A + B|^2 [W/m^2].  The
/// field is continuous across a thin scatterer, so left and right pairs give
/// the same value.
[[nodiscard]] double local_intensity(const FieldState& fields, int index);

/// Saturation parameter s = (I / I_sat) * gamma^2 / (delta^2 + gamma^2) of
/// an atom element, with the detuning evaluated at the solve's wavenumber
/// when the element's polarizability is dispersive.
[[nodiscard]] double local_saturation(const Stack& stack, const FieldState& fields, int index);

/// Peak intensity enhancement available to element `index`: the antinode
/// intensity of the region the element sits in (with the element itself
/// removed), relative to the pump intensity.
[[nodiscard]] double region_peak_enhancement(const Stack& stack, int index, double k);

} // namespace cavcool
