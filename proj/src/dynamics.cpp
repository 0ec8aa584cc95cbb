#include "cavcool/dynamics.hpp"

#include <array>
#include <cmath>

namespace cavcool {

namespace {

using constants::c;
using constants::epsilon0;
using constants::hbar;
using constants::k_boltzmann;
using constants::pi;

/// (A, B, C, D) of one element as a flat array with the sign convention of
/// the force quadratic form: +, +, -, -.
std::array<Complex, 4> quadruple(const InterfaceFields& f)
{
    return {f.left(0), f.left(1), f.right(0), f.right(1)};
}

/// Interface fields at element `probe` radiated by a source pair `sigma`
/// added to the right face of element `source`, with no external inputs
/// (outgoing waves only beyond both ends), everything at wavenumber k.
InterfaceFields fields_from_source(const Stack& stack, double k, int source,
                                   const Vector2& sigma, int probe)
{
    const int n = static_cast<int>(stack.elements.size());
    Matrix2 left = Matrix2::Identity();  ///< far left -> right face of source
    Matrix2 right = Matrix2::Identity(); ///< right face of source -> far right
    for (int j = 0; j < n; ++j) {
        Matrix2& part = j <= source ? left : right;
        if (j > 0) {
            const double gap = stack.elements[static_cast<std::size_t>(j)].position -
                               stack.elements[static_cast<std::size_t>(j - 1)].position;
            part = propagation_matrix(k, gap) * part;
        }
        part = scatterer_matrix(stack.elements[static_cast<std::size_t>(j)].zeta_at(k)) * part;
    }
    const Matrix2 total = right * left;
    if (std::abs(total(1, 1)) == 0.0)
        throw SolverError("sideband solve: singular transfer matrix (M22 = 0)");

    // Far-left state (0, beta) and far-right state (beta_R, 0).
    const Vector2 pushed = right * sigma;
    const Complex beta = -pushed(1) / total(1, 1);

    Vector2 v;
    v << Complex(0.0), beta;
    InterfaceFields out;
    for (int j = 0; j < n; ++j) {
        if (j > 0) {
            const double gap = stack.elements[static_cast<std::size_t>(j)].position -
                               stack.elements[static_cast<std::size_t>(j - 1)].position;
            v = propagation_matrix(k, gap) * v;
        }
        InterfaceFields f;
        f.left = v;
        v = scatterer_matrix(stack.elements[static_cast<std::size_t>(j)].zeta_at(k)) * v;
        if (j == source) v += sigma;
        f.right = v;
        if (j == probe) out = f;
    }
    return out;
}

constexpr std::array<double, 4> force_sign = {1.0, 1.0, -1.0, -1.0};

int require_mobile(const Stack& stack)
{
    if (stack.mobile_index < 0)
        throw DomainError("dynamics: stack has no mobile element");
    return stack.mobile_index;
}

} // namespace

double friction_at(const Stack& stack, double omega, double epsilon)
{
    const int m = require_mobile(stack);
    if (!(omega > 0.0))
        throw DomainError("friction_at: modulation frequency must be positive");
    if (!(epsilon > 0.0) || epsilon > stack.wavelength / 1000.0)
        throw DomainError("friction_at: modulation amplitude must be positive and no larger "
                          "than wavelength/1000");

    const double k0 = stack.k0();
    const FieldState carrier = solve_fields(stack, k0);
    const auto e0 = quadruple(carrier.at[static_cast<std::size_t>(m)]);
    const Complex a0 = e0[0];
    const Complex b0 = e0[1];
    const Complex zeta0 = stack.elements[static_cast<std::size_t>(m)].zeta_at(k0);

    // Position modulation x(t) = x0 + epsilon cos(omega t) scatters the
    // carrier into sidebands at k0 +- omega/c.  To first order the mobile
    // element acts at its rest position with an added source on its output
    // pair; the source keeps the difference between the polarizability at
    // the sideband and at the carrier, which matters for a dispersive
    // scatterer.
    std::array<std::array<Complex, 4>, 2> side{};
    const std::array<double, 2> signs = {1.0, -1.0};
    for (int i = 0; i < 2; ++i) {
        const double ks = k0 + signs[static_cast<std::size_t>(i)] * omega / c;
        const Complex zs = stack.elements[static_cast<std::size_t>(m)].zeta_at(ks);
        const Complex dz = zs - zeta0;
        const double ek = epsilon * k0;
        Vector2 source;
        source << ek * zeta0 * b0 + 0.5 * ek * dz * (b0 - a0),
                  ek * zeta0 * a0 + 0.5 * ek * dz * (a0 - b0);
        side[static_cast<std::size_t>(i)] =
            quadruple(fields_from_source(stack, ks, m, source, m));
    }

    // Beat of the force quadratic form at e^{-i omega t}.
    Complex beat = 0.0;
    for (int q = 0; q < 4; ++q) {
        const auto qu = static_cast<std::size_t>(q);
        beat += force_sign[qu] *
                (side[0][qu] * std::conj(e0[qu]) + e0[qu] * std::conj(side[1][qu]));
    }
    const Complex f_beat = 2.0 * epsilon0 * stack.pump.mode_area * beat;
    return -2.0 * std::imag(f_beat) / (epsilon * omega);
}

double friction_coefficient(const Stack& stack, const ModulationProbe& probe)
{
    const double l1 = friction_at(stack, probe.omega, probe.epsilon);
    const double l2 = friction_at(stack, probe.omega / 2.0, probe.epsilon);
    const double l4 = friction_at(stack, probe.omega / 4.0, probe.epsilon);
    // lambda(omega) is even in omega, so halving steps cancel the omega^2
    // term; two extrapolants must agree or the probe frequency is too high.
    const double r1 = (4.0 * l2 - l1) / 3.0;
    const double r2 = (4.0 * l4 - l2) / 3.0;
    if (std::abs(r2 - r1) > 0.05 * std::max(std::abs(r1), std::abs(r2)) + 1e-32)
        throw DiagnosticError("friction_coefficient: extrapolation in omega has not converged",
                              r1, r2);
    return r2;
}

double force_noise_spectrum(const Stack& stack, double omega)
{
    const int m = require_mobile(stack);
    const double k0 = stack.k0();
    const FieldState carrier = solve_fields(stack, k0);
    const auto e0 = quadruple(carrier.at[static_cast<std::size_t>(m)]);

    const double area = stack.pump.mode_area;
    const double vacuum_amplitude = std::sqrt(hbar * (c * k0) / (2.0 * epsilon0 * c * area));
    const double ks = k0 + omega / c;

    double sum = 0.0;
    for (const PumpSpec::Side side : {PumpSpec::Side::left, PumpSpec::Side::right}) {
        const FieldState response = solve_unit_injection(stack, ks, side);
        const auto g = quadruple(response.at[static_cast<std::size_t>(m)]);
        Complex eta = 0.0;
        for (int q = 0; q < 4; ++q) {
            const auto qu = static_cast<std::size_t>(q);
            eta += force_sign[qu] * std::conj(e0[qu]) * g[qu];
        }
        eta *= 2.0 * epsilon0 * area * vacuum_amplitude;
        sum += std::norm(eta);
    }

    // Absorbing elements open one extra vacuum port each: completing the
    // lossy sheet scattering matrix to a unitary one couples a channel of
    // weight 2 Im zeta, whose reciprocal source radiates the pair (1, -1)
    // symmetrically from the sheet.
    const int n = static_cast<int>(stack.elements.size());
    for (int j = 0; j < n; ++j) {
        const double absorption = std::imag(stack.elements[static_cast<std::size_t>(j)].zeta_at(ks));
        if (!(absorption > 0.0))
            continue;
        const double amp = std::sqrt(2.0 * absorption);
        Vector2 source;
        source << Complex(amp), Complex(-amp);
        const auto g = quadruple(fields_from_source(stack, ks, j, source, m));
        Complex eta = 0.0;
        for (int q = 0; q < 4; ++q) {
            const auto qu = static_cast<std::size_t>(q);
            eta += force_sign[qu] * std::conj(e0[qu]) * g[qu];
        }
        eta *= 2.0 * epsilon0 * area * vacuum_amplitude;
        sum += std::norm(eta);
    }
    return sum;
}

double diffusion(const Stack& stack)
{
    const int m = require_mobile(stack);
    double d = 0.5 * force_noise_spectrum(stack, 0.0);
    const Element& e = stack.elements[static_cast<std::size_t>(m)];
    if (e.atom) {
        // Direction randomness of spontaneous emission: +-hbar k per event at
        // rate gamma s / 2.  The shot noise of the absorption events
        // themselves already enters through the atom's loss port in the
        // vacuum-noise sum, so it is not repeated here; for an atom in one
        // free running wave the two halves add up to (hbar k)^2 gamma s / 2.
        const FieldState carrier = solve_fields(stack, stack.k0());
        const double s = local_saturation(stack, carrier, m);
        const double k_atom = 2.0 * pi / e.atom->wavelength;
        d += hbar * k_atom * hbar * k_atom * e.atom->gamma * s / 4.0;
    }
    return d;
}

double equilibrium_temperature(double friction, double diffusion_coefficient)
{
    if (!(friction < 0.0))
        throw PhysicsError("equilibrium_temperature: no steady state without damping");
    if (!(diffusion_coefficient >= 0.0))
        throw DomainError("equilibrium_temperature: diffusion must be non-negative");
    return -diffusion_coefficient / (k_boltzmann * friction);
}

DynamicalResponse dynamical_response(const Stack& stack, const ModulationProbe& probe)
{
    const int m = require_mobile(stack);
    DynamicalResponse r{};
    const FieldState carrier = solve_fields(stack);
    r.static_force = force_on(stack, m, carrier);
    r.friction = friction_coefficient(stack, probe);
    r.diffusion = diffusion(stack);
    const Element& e = stack.elements[static_cast<std::size_t>(m)];
    if (e.atom)
        r.saturation = local_saturation(stack, carrier, m);
    if (r.friction < 0.0) {
        r.temperature = equilibrium_temperature(r.friction, r.diffusion);
        if (e.atom)
            r.cooling_time = -e.atom->mass / r.friction;
    }
    return r;
}

double temperature_asymptote(double kappa, CavityRegime regime)
{
    if (!(kappa > 0.0))
        throw DomainError("temperature_asymptote: kappa must be positive");
    const double base = hbar * kappa / k_boltzmann;
    return regime == CavityRegime::intracavity ? base : 1.9 * base;
}

} // namespace cavcool
