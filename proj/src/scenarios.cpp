#include "cavcool/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavcool/optimize.hpp"
#include "cavcool/sweeps.hpp"

namespace cavcool {

namespace {

using constants::c;
using constants::pi;

double m22_squared(const Stack& stack, double k)
{
    return std::norm(compose(stack, k)(1, 1));
}

std::vector<std::size_t> immobile_indices(const Stack& stack)
{
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < stack.elements.size(); ++j) {
        if (static_cast<int>(j) != stack.mobile_index)
            idx.push_back(j);
    }
    return idx;
}

/// Refined positions of the |M22|^2 minima inside a symmetric window around
/// k_center, sorted ascending.
std::vector<double> scan_minima(const Stack& probe, double k_center, double half_width,
                                int points)
{
    std::vector<double> ks(static_cast<std::size_t>(points));
    std::vector<double> ys(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        ks[static_cast<std::size_t>(i)] =
            k_center - half_width + 2.0 * half_width * i / (points - 1);
        ys[static_cast<std::size_t>(i)] = m22_squared(probe, ks[static_cast<std::size_t>(i)]);
    }
    std::vector<double> minima;
    for (int i = 1; i + 1 < points; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        if (ys[iu] < ys[iu - 1] && ys[iu] <= ys[iu + 1]) {
            const double refined = golden_section_minimize(
                [&](double k) { return m22_squared(probe, k); }, ks[iu - 1], ks[iu + 1], 1e-7);
            minima.push_back(refined);
        }
    }
    std::sort(minima.begin(), minima.end());
    // A plateau can register twice; keep one representative per basin.
    const double separation = half_width / 16.0;
    std::vector<double> unique;
    for (double k : minima) {
        if (unique.empty() || k - unique.back() > separation)
            unique.push_back(k);
    }
    return unique;
}

/// Least-squares quadratic y = a + b u + c u^2 on the inverse-Lorentzian
/// |M22|^2 around one minimum; returns the refined minimum position, the
/// half width gamma_k of the corresponding transmission Lorentzian, and the
/// minimum value.
struct LorentzFit {
    double k0;
    double gamma_k;
    double y_min;
};

LorentzFit fit_inverse_lorentzian(const Stack& probe, double k_seed, double gamma_seed)
{
    constexpr int n = 64;
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const double u = -3.0 * gamma_seed + 6.0 * gamma_seed * i / (n - 1);
        design(i, 0) = 1.0;
        design(i, 1) = u;
        design(i, 2) = u * u;
        y(i) = m22_squared(probe, k_seed + u);
    }
    const Eigen::Vector3d coeff = design.colPivHouseholderQr().solve(y);
    const double a = coeff(0);
    const double b = coeff(1);
    const double cq = coeff(2);
    if (!(cq > 0.0))
        throw DiagnosticError("characterize_cavity: resonance fit is not convex", a, cq);
    const double y_min = a - b * b / (4.0 * cq);
    if (!(y_min > 0.0))
        throw DiagnosticError("characterize_cavity: resonance fit has no positive minimum",
                              y_min, cq);
    return {k_seed - b / (2.0 * cq), std::sqrt(y_min / cq), y_min};
}

double intensity_at_pump(const Stack& stack)
{
    return stack.pump.power / stack.pump.mode_area;
}

/// Saturation the atom would see at the antinode of its region with the
/// pump set on the bare cavity resonance.
double reference_saturation(const Stack& stack, const AtomModel& atom, double k_resonance)
{
    Stack probe = stack;
    probe.wavelength = 2.0 * pi / k_resonance;
    const double enhancement =
        region_peak_enhancement(probe, probe.mobile_index, k_resonance);
    const double intensity = enhancement * intensity_at_pump(stack);
    const double lorentz = atom.gamma * atom.gamma /
                           (atom.detuning * atom.detuning + atom.gamma * atom.gamma);
    return intensity / atom.saturation_intensity * lorentz;
}

/// Pump wavenumber offset [1/m] realizing `detuning` against the given
/// angular half linewidths (note: not an angular frequency).
double resolve_detuning_shift(const PumpDetuning& detuning, double kappa, double gamma)
{
    return detuning.value * (detuning.unit == DetuningUnit::kappa ? kappa : gamma) / c;
}

std::string short_number(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.3e", value);
    return buffer;
}

void check_saturation_budget(const char* who, double s_reference, double s_max, double power)
{
    if (s_reference > s_max) {
        throw PhysicsError(std::string(who) + ": reference saturation " +
                           short_number(s_reference) + " exceeds the budget " +
                           short_number(s_max) + "; reduce the pump power to at most " +
                           short_number(power * s_max / s_reference) + " W");
    }
}

AtomModel scenario_atom(double waist, double atom_detuning_gamma, double k_resonance)
{
    AtomModel atom;
    atom.gamma = rb85::gamma_hwhm;
    atom.detuning = atom_detuning_gamma * atom.gamma;
    atom.coupling = coupling_for_waist(waist);
    atom.saturation_intensity = rb85::saturation_intensity;
    atom.mass = rb85::mass;
    atom.wavelength = 2.0 * pi / k_resonance;
    return atom;
}

ModulationProbe scenario_probe(double kappa, double wavelength)
{
    return ModulationProbe{kappa / 40.0, wavelength / 1e4};
}

} // namespace

CavityFigures characterize_cavity(const Stack& stack)
{
    validate(stack);
    Stack probe = stack;
    if (probe.mobile_index >= 0)
        probe.elements[static_cast<std::size_t>(probe.mobile_index)].polarizability =
            Polarizability{0.0, std::nullopt};

    const std::vector<std::size_t> immobile = immobile_indices(probe);
    if (immobile.size() < 2)
        throw DiagnosticError("characterize_cavity: no resonance found "
                              "(needs at least two immobile elements)",
                              static_cast<double>(immobile.size()), 0.0);
    const double span = probe.elements[immobile.back()].position -
                        probe.elements[immobile.front()].position;
    if (!(span > 0.0))
        throw DiagnosticError("characterize_cavity: no resonance found (zero mirror spacing)",
                              span, 0.0);

    const double dk_estimate = pi / span;
    const double k_nominal = stack.k0();
    std::vector<double> minima = scan_minima(probe, k_nominal, 1.6 * dk_estimate, 1024);
    if (minima.size() < 2)
        minima = scan_minima(probe, k_nominal, 3.2 * dk_estimate, 2048);
    if (minima.size() < 2)
        throw DiagnosticError("characterize_cavity: no resonance found (fewer than two "
                              "transmission peaks in the scan window)",
                              static_cast<double>(minima.size()), 0.0);

    double fsr_k = 0.0;
    for (std::size_t i = 1; i < minima.size(); ++i)
        fsr_k += minima[i] - minima[i - 1];
    fsr_k /= static_cast<double>(minima.size() - 1);

    const auto nearest = std::min_element(minima.begin(), minima.end(), [&](double a, double b) {
        return std::abs(a - k_nominal) < std::abs(b - k_nominal);
    });
    const double k_seed = *nearest;

    // Half-width seed: |M22|^2 doubles at the transmission half maximum.  If
    // it never does within half a free spectral range, the lines are too
    // broad to count as resonances.
    const double y0 = m22_squared(probe, k_seed);
    double gamma_seed = 0.0;
    try {
        gamma_seed = bisect_root(
            [&](double dk) { return m22_squared(probe, k_seed + dk) - 2.0 * y0; },
            0.0, fsr_k / 2.0, 1e-9);
    } catch (const Error&) {
        throw DiagnosticError("characterize_cavity: no resonance found (line broader than "
                              "the free spectral range)",
                              y0, fsr_k);
    }
    const LorentzFit fit = fit_inverse_lorentzian(probe, k_seed, gamma_seed);

    CavityFigures fig;
    fig.k_resonance = fit.k0;
    fig.kappa = c * fit.gamma_k;
    fig.fsr = c * fsr_k / (2.0 * pi);
    fig.finesse = fsr_k / (2.0 * fit.gamma_k);
    if (!(fig.finesse >= 2.0))
        throw DiagnosticError("characterize_cavity: no resonance found (finesse below 2)",
                              fig.finesse, 0.0);

    // Buildup: antinode intensity between consecutive immobile elements for
    // unit input, maximized over the interior regions.
    const FieldState fs = solve_unit_injection(probe, fit.k0, probe.pump.side);
    double buildup = 0.0;
    for (std::size_t a = 0; a + 1 < immobile.size(); ++a) {
        const Vector2& v = fs.at[immobile[a]].right;
        const double peak = std::abs(v(0)) + std::abs(v(1));
        buildup = std::max(buildup, peak * peak);
    }
    fig.buildup = buildup;
    return fig;
}

BuiltScenario build_inside(const InsideScenario& scenario)
{
    if (!(scenario.cavity_length > 0.0))
        throw DomainError("build_inside: cavity length must be positive");
    if (!(scenario.waist > 0.0))
        throw DomainError("build_inside: waist must be positive");
    if (!(scenario.power >= 0.0))
        throw DomainError("build_inside: power must be non-negative");

    const double area = pi * scenario.waist * scenario.waist / 4.0;

    Stack bare;
    bare.elements = {make_mirror(scenario.mirror_zeta, 0.0),
                     make_mirror(scenario.mirror_zeta, scenario.cavity_length)};
    bare.pump = PumpSpec{scenario.power, area, PumpSpec::Side::left, std::nullopt};
    bare.wavelength = scenario.wavelength;
    const CavityFigures fig = characterize_cavity(bare);
    const double k_res = fig.k_resonance;

    double x_atom;
    if (scenario.atom_position) {
        x_atom = *scenario.atom_position;
    } else {
        // Antinode of the bare standing wave nearest the cavity middle.
        const FieldState bare_fields = solve_unit_injection(bare, k_res, PumpSpec::Side::left);
        const Vector2& v = bare_fields.at[0].right;
        const double phase = std::arg(v(0) / v(1));
        const double target = scenario.cavity_length / 2.0;
        const double n = std::round((2.0 * k_res * target + phase) / (2.0 * pi));
        x_atom = (2.0 * pi * n - phase) / (2.0 * k_res);
    }
    if (!(x_atom > 0.0) || !(x_atom < scenario.cavity_length))
        throw DomainError("build_inside: atom position must lie between the mirrors");

    // The atom's detuning is a property of the operating point: it holds at
    // the pump wavenumber, wherever the pump sits relative to the cavity.
    const double k_solve =
        k_res + resolve_detuning_shift(scenario.detuning, fig.kappa, rb85::gamma_hwhm);
    const AtomModel atom = scenario_atom(scenario.waist, scenario.atom_detuning_gamma, k_solve);

    Stack stack;
    stack.elements = {make_mirror(scenario.mirror_zeta, 0.0),
                      make_atom_element(atom, x_atom, k_solve, scenario.atom_dispersion),
                      make_mirror(scenario.mirror_zeta, scenario.cavity_length)};
    stack.mobile_index = 1;
    stack.pump = PumpSpec{scenario.power, area, PumpSpec::Side::left, c * (k_solve - k_res)};
    stack.wavelength = 2.0 * pi / k_solve;

    BuiltScenario built;
    built.stack = stack;
    built.cavity = fig;
    built.k_solve = k_solve;
    built.default_probe = scenario_probe(fig.kappa, stack.wavelength);
    built.regime = CavityRegime::intracavity;
    built.s_reference = reference_saturation(stack, atom, k_res);
    check_saturation_budget("build_inside", built.s_reference, scenario.s_max, scenario.power);
    return built;
}

BuiltScenario build_outside(const OutsideScenario& scenario)
{
    if (!(scenario.cavity_length > 0.0))
        throw DomainError("build_outside: cavity length must be positive");
    if (!(scenario.waist > 0.0))
        throw DomainError("build_outside: waist must be positive");
    if (!(scenario.power >= 0.0))
        throw DomainError("build_outside: power must be non-negative");

    const double area = scenario.waist * scenario.waist;

    Stack bare;
    bare.elements = {make_mirror(scenario.mirror_zeta, 0.0),
                     make_mirror(scenario.mirror_zeta, scenario.cavity_length)};
    bare.pump = PumpSpec{scenario.power, area, PumpSpec::Side::left, std::nullopt};
    bare.wavelength = scenario.wavelength;
    const CavityFigures fig = characterize_cavity(bare);
    const double k_res = fig.k_resonance;

    const double wavelength_res = 2.0 * pi / k_res;
    const double distance = scenario.distance.value_or(wavelength_res / 4.0);
    if (!(distance >= 0.0))
        throw DomainError("build_outside: atom-mirror distance must be non-negative");

    // As for build_inside, the atomic detuning holds at the pump.
    const auto assemble = [&](double k_pump) {
        const AtomModel atom =
            scenario_atom(scenario.waist, scenario.atom_detuning_gamma, k_pump);
        Stack stack;
        stack.elements = {make_atom_element(atom, 0.0, k_pump, scenario.atom_dispersion),
                          make_mirror(scenario.mirror_zeta, distance),
                          make_mirror(scenario.mirror_zeta, distance + scenario.cavity_length)};
        stack.mobile_index = 0;
        stack.pump = PumpSpec{scenario.power, area, PumpSpec::Side::left, c * (k_pump - k_res)};
        stack.wavelength = 2.0 * pi / k_pump;
        return stack;
    };

    double dk = 0.0; // pump minus bare resonance, as a wavenumber shift
    if (scenario.detuning) {
        dk = resolve_detuning_shift(*scenario.detuning, fig.kappa, rb85::gamma_hwhm);
    } else if (scenario.power > 0.0) {
        // Default: put the pump where the friction is strongest.
        const ModulationProbe probe = scenario_probe(fig.kappa, wavelength_res);
        const Optimum best = find_optimum(
            [&](double detuning_kappa) {
                return friction_at(assemble(k_res + detuning_kappa * fig.kappa / c),
                                   probe.omega, probe.epsilon);
            },
            -4.0, 4.0, 65);
        dk = best.parameter * fig.kappa / c;
    }
    const double k_solve = k_res + dk;
    Stack stack = assemble(k_solve);

    BuiltScenario built;
    built.stack = stack;
    built.cavity = fig;
    built.k_solve = k_solve;
    built.default_probe = scenario_probe(fig.kappa, stack.wavelength);
    built.regime = CavityRegime::external;
    built.s_reference =
        reference_saturation(stack, *stack.elements.front().atom, k_res);
    check_saturation_budget("build_outside", built.s_reference, scenario.s_max, scenario.power);
    return built;
}

double max_power_for_saturation(const BuiltScenario& built, double s_target)
{
    if (!(s_target > 0.0))
        throw DomainError("max_power_for_saturation: target must be positive");
    if (!(built.s_reference > 0.0))
        throw DomainError("max_power_for_saturation: scenario was built with zero power, "
                          "so the reference saturation cannot be scaled");
    return built.stack.pump.power * s_target / built.s_reference;
}

} // namespace cavcool
