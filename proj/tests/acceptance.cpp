// Acceptance checks for the cooling simulator.  Each numbered criterion
// prints exactly one PASS/FAIL line; the process exits nonzero when any
// criterion fails.  All windows are pinned here as named constants.

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/LU>

#include "cavcool/config.hpp"
#include "cavcool/constants.hpp"
#include "cavcool/dynamics.hpp"
#include "cavcool/scenarios.hpp"
#include "cavcool/stack.hpp"
#include "cavcool/sweeps.hpp"

namespace {

using namespace cavcool;
using constants::c;
using constants::pi;

// ---------------------------------------------------------------------------
// Pinned acceptance windows.
// ---------------------------------------------------------------------------
constexpr double finesse_target = 56000.0, finesse_rel = 0.02;          // criterion 1
constexpr double friction_in_target = -1.5e-20, friction_in_rel = 0.20; // criterion 2
constexpr double detuning_opt_lo = -2.9, detuning_opt_hi = -2.3;        // criterion 2 [kappa]
constexpr double cool_opt_target = 9e-6, cool_opt_rel = 0.20;           // criterion 3
constexpr double cool_avg_target = 37e-6, cool_avg_rel = 0.25;          // criterion 3
constexpr double s_ref_target = 0.14, s_ref_rel = 0.25;                 // criterion 4
constexpr double intensity_target = 230.0, intensity_rel = 0.30;        // criterion 4 [W/m^2]
constexpr double friction_out_target = -2.9e-21, friction_out_rel = 0.25; // criterion 5
constexpr double cool_out_target = 50e-6, cool_out_rel = 0.25;          // criterion 5
constexpr double temp_in_opt_target = 56e-6;                            // criterion 6, x/2
constexpr double temp_in_avg_target = 220e-6;                           // criterion 6, x/2
constexpr double temp_out_target = 280e-6;                              // criterion 6, x/2
constexpr double slope_kappa_target = 1.0, slope_kappa_tol = 0.1;       // criterion 7
constexpr double asymptote_detuning_kappa = -4.25;                      // criterion 7
constexpr double floor_ratio_limit = 1.5;                               // criterion 7
constexpr double slope_length_target = 1.0, slope_length_tol = 0.15;    // criterion 8
constexpr double slope_zeta_target = 2.0, slope_zeta_tol = 0.1;         // criterion 8
constexpr double averaged_fraction_limit = 0.01;                        // criterion 8
constexpr double determinant_tol = 1e-10;                               // criterion 9
constexpr double energy_tol = 1e-10;                                    // criterion 9
constexpr double interference_tol = 1e-8;                               // criterion 9
constexpr double power_invariance_tol = 1e-10;                          // criterion 9
constexpr double doppler_rel = 0.05;                                    // criterion 9
constexpr double probe_limit_rel = 0.05;                                // criterion 9

int worker_threads()
{
    const unsigned n = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(n, 1u, 8u));
}

std::string num(double value)
{
    std::ostringstream out;
    out.precision(5);
    out << std::scientific << value;
    return out.str();
}

bool in_window(double value, double lo, double hi) { return value >= lo && value <= hi; }

std::string window_text(double value, double lo, double hi)
{
    return num(value) + " in [" + num(lo) + ", " + num(hi) + "]";
}

struct Reporter {
    int failures = 0;

    void line(int criterion, bool pass, const std::string& text)
    {
        if (!pass) ++failures;
        std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << "  "
                  << text << "\n";
    }

    void failed(int criterion, const std::exception& error)
    {
        line(criterion, false, std::string("error: ") + error.what());
    }
};

/// Relative window around a (possibly negative) target value.
bool near(double value, double target, double rel)
{
    return in_window(value, std::min(target * (1.0 - rel), target * (1.0 + rel)),
                     std::max(target * (1.0 - rel), target * (1.0 + rel)));
}

std::string near_text(double value, double target, double rel)
{
    return window_text(value, std::min(target * (1.0 - rel), target * (1.0 + rel)),
                       std::max(target * (1.0 - rel), target * (1.0 + rel)));
}

// ---------------------------------------------------------------------------
// Stack edits mirroring the scenario builders' conventions.
// ---------------------------------------------------------------------------

/// Shift the pump to detuning_kappa cavity half linewidths from resonance,
/// re-anchoring every atomic polarizability at the new pump wavenumber.
Stack with_pump_shift(const BuiltScenario& built, double detuning_kappa)
{
    Stack stack = built.stack;
    const double k = built.cavity.k_resonance + detuning_kappa * built.cavity.kappa / c;
    stack.wavelength = 2.0 * pi / k;
    for (Element& element : stack.elements) {
        if (!element.atom) continue;
        element = make_atom_element(*element.atom, element.position, k,
                                    element.polarizability.dispersion.has_value(),
                                    element.mobile);
    }
    stack.pump.detuning_from_cavity = detuning_kappa * built.cavity.kappa;
    return stack;
}

Stack at_position(Stack stack, double x)
{
    stack.elements[static_cast<std::size_t>(stack.mobile_index)].position = x;
    return stack;
}

/// Outside geometry: move the whole resonator so the atom-mirror gap is d.
Stack at_distance(Stack stack, double d)
{
    const double length = stack.elements[2].position - stack.elements[1].position;
    stack.elements[1].position = d;
    stack.elements[2].position = d + length;
    return stack;
}

// ---------------------------------------------------------------------------
// Operating-point summaries.
// ---------------------------------------------------------------------------

struct InsideSummary {
    BuiltScenario built;
    double detuning_kappa = 0.0;
    Stack best_stack;
    DynamicalResponse best{};
    WavelengthAverage average{};
};

/// The detuning axis optimizes the wavelength-averaged friction (an untrapped
/// atom samples every position); the position axis then finds the pointwise
/// optimum at that detuning.
InsideSummary summarize_inside()
{
    InsideSummary out;
    out.built = build_inside(InsideScenario{});
    const double base =
        out.built.stack.elements[static_cast<std::size_t>(out.built.stack.mobile_index)]
            .position;
    const double wavelength = 2.0 * pi / out.built.cavity.k_resonance;
    const ModulationProbe probe = out.built.default_probe;

    const auto averaged = [&](double detuning_kappa) {
        return average_over_wavelength(
            [&](double x) { return at_position(with_pump_shift(out.built, detuning_kappa), x); },
            base, wavelength, probe, worker_threads());
    };
    const Optimum detuning = find_optimum(
        [&](double d) { return averaged(d).mean_friction; }, -6.0, -0.25, 24, 1e-3);
    out.detuning_kappa = detuning.parameter;

    const Optimum position = find_optimum(
        [&](double offset) {
            return friction_at(
                at_position(with_pump_shift(out.built, out.detuning_kappa),
                            base + offset * wavelength),
                probe.omega, probe.epsilon);
        },
        0.0, 0.25, 26);
    out.best_stack = at_position(with_pump_shift(out.built, out.detuning_kappa),
                                 base + position.parameter * wavelength);
    out.best = dynamical_response(out.best_stack, probe);
    out.average = averaged(out.detuning_kappa);
    return out;
}

struct OutsideSummary {
    BuiltScenario built;
    Optimum2D optimum{}; ///< first: distance [m], second: detuning [kappa]
    DynamicalResponse best{};
};

OutsideSummary summarize_outside(const OutsideScenario& scenario)
{
    OutsideSummary out;
    out.built = build_outside(scenario);
    const double wavelength = 2.0 * pi / out.built.cavity.k_resonance;
    const ModulationProbe probe = out.built.default_probe;
    const double base_detuning =
        out.built.stack.pump.detuning_from_cavity.value_or(0.0) / out.built.cavity.kappa;
    out.optimum = find_optimum_2d(
        [&](double d, double detuning_kappa) {
            return friction_at(at_distance(with_pump_shift(out.built, detuning_kappa), d),
                               probe.omega, probe.epsilon);
        },
        0.02 * wavelength, 0.62 * wavelength, base_detuning - 2.0, base_detuning + 2.0);
    out.best = dynamical_response(
        at_distance(with_pump_shift(out.built, out.optimum.second), out.optimum.first), probe);
    return out;
}

/// Deepest cooling friction over one wavelength of atom-mirror distances at
/// the detuning the builder chose.
double outside_peak_friction(const BuiltScenario& built)
{
    const double wavelength = 2.0 * pi / built.cavity.k_resonance;
    double best = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const double d = (0.02 + 0.60 * i / 64.0) * wavelength;
        best = std::min(best, friction_at(at_distance(built.stack, d),
                                          built.default_probe.omega,
                                          built.default_probe.epsilon));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Criterion 9 property probes.
// ---------------------------------------------------------------------------

double worst_determinant_deviation()
{
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> re(-300.0, 300.0);
    std::uniform_real_distribution<double> im(0.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Matrix2 m = scatterer_matrix<double>({re(rng), im(rng)});
        worst = std::max(worst, std::abs(m.determinant() - Complex(1.0)));
    }
    return worst;
}

double worst_energy_deviation()
{
    std::mt19937 rng(67);
    std::uniform_int_distribution<int> count(1, 5);
    std::uniform_real_distribution<double> zeta(-200.0, 200.0);
    std::uniform_real_distribution<double> position(0.0, 50e-6);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Stack stack;
        stack.pump.power = 2e-12;
        stack.pump.mode_area = 1e-9;
        std::vector<double> xs(static_cast<std::size_t>(count(rng)));
        for (double& x : xs) x = position(rng);
        std::sort(xs.begin(), xs.end());
        for (double x : xs) stack.elements.push_back(make_mirror(Complex(zeta(rng)), x));
        const FieldState fields = solve_fields(stack);
        const double in2 = std::norm(fields.input);
        const double out2 = std::norm(fields.reflected) + std::norm(fields.transmitted);
        worst = std::max(worst, std::abs(out2 - in2) / in2);
    }
    return worst;
}

double worst_interference_deviation()
{
    const Complex zeta(-133.5, 0.0);
    const double length = 495e-6;
    Stack stack;
    stack.elements = {make_mirror(zeta, 0.0), make_mirror(zeta, length)};
    stack.pump.power = 2e-12;
    stack.pump.mode_area = 1e-9;
    const MirrorCoefficients mc = mirror_coefficients(zeta);
    const double k0 = stack.k0();
    const double fsr_k = pi / length;
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double k = k0 + (i / 100.0 - 0.5) * 0.8 * fsr_k;
        const double through = 1.0 / std::norm(compose(stack, k)(1, 1));
        const Complex round_trip = propagation_matrix(k, length)(0, 0);
        const double airy =
            std::norm(mc.t * mc.t) / std::norm(1.0 - mc.r * mc.r * round_trip * round_trip);
        worst = std::max(worst, std::abs(through - airy) / airy);
    }
    return worst;
}

double power_invariance_deviation(const Stack& cooled, const ModulationProbe& probe)
{
    Stack boosted = cooled;
    boosted.pump.power *= 1024.0;
    const DynamicalResponse weak = dynamical_response(cooled, probe);
    const DynamicalResponse strong = dynamical_response(boosted, probe);
    if (!weak.temperature || !strong.temperature)
        throw PhysicsError("power invariance probe: no equilibrium temperature");
    return std::abs(*weak.temperature - *strong.temperature) / *weak.temperature;
}

/// Doppler friction of one free atom in counter-propagating beams (two
/// independent one-beam solves) against the closed form
/// lambda = 8 P k q Delta / (c (Delta^2 + Gamma^2 + p)^2),
/// q = C Gamma^2 (1 + C), p = C Gamma^2 (2 + C).
double doppler_deviation()
{
    AtomModel atom;
    atom.coupling = 1e-3;
    atom.detuning = -atom.gamma;
    const double power = 2e-12;

    const auto beam = [&](PumpSpec::Side side) {
        Stack stack;
        stack.wavelength = atom.wavelength;
        stack.elements = {make_atom_element(atom, 0.0, 2.0 * pi / atom.wavelength, true)};
        stack.mobile_index = 0;
        stack.pump.power = power;
        stack.pump.mode_area = 1.413716694115407e-9;
        stack.pump.side = side;
        return friction_coefficient(stack, ModulationProbe{1e4, 1e-10});
    };
    const double total = beam(PumpSpec::Side::left) + beam(PumpSpec::Side::right);

    const double k = 2.0 * pi / atom.wavelength;
    const double gamma2 = atom.gamma * atom.gamma;
    const double q = atom.coupling * gamma2 * (1.0 + atom.coupling);
    const double p = atom.coupling * gamma2 * (2.0 + atom.coupling);
    const double denom = atom.detuning * atom.detuning + gamma2 + p;
    const double expected = 8.0 * power * k * q * atom.detuning / (c * denom * denom);
    return std::abs(total - expected) / std::abs(expected);
}

double probe_limit_deviation(const Stack& stack, const ModulationProbe& probe)
{
    const double at_omega = friction_at(stack, probe.omega, probe.epsilon);
    const double at_half = friction_at(stack, probe.omega / 2.0, probe.epsilon);
    return std::abs(at_omega - at_half) / std::abs(at_half);
}

} // namespace

int main()
{
    Reporter report;

    // Criterion 1: resonator calibration.
    std::optional<InsideSummary> inside;
    try {
        inside = summarize_inside();
        report.line(1, near(inside->built.cavity.finesse, finesse_target, finesse_rel),
                    "cavity finesse " +
                        near_text(inside->built.cavity.finesse, finesse_target, finesse_rel));
    } catch (const std::exception& error) {
        report.failed(1, error);
    }

    // Criterion 2: intracavity optimum friction and its detuning.
    if (inside) {
        const bool friction_ok =
            near(inside->best.friction, friction_in_target, friction_in_rel);
        const bool detuning_ok =
            in_window(inside->detuning_kappa, detuning_opt_lo, detuning_opt_hi);
        report.line(2, friction_ok && detuning_ok,
                    "optimum friction " +
                        near_text(inside->best.friction, friction_in_target, friction_in_rel) +
                        ", detuning " +
                        window_text(inside->detuning_kappa, detuning_opt_lo, detuning_opt_hi) +
                        " kappa");
    } else {
        report.line(2, false, "skipped: inside optimum unavailable");
    }

    // Criterion 3: intracavity cooling times, pointwise and averaged.
    if (inside && inside->best.cooling_time && inside->average.mean_friction < 0.0) {
        const Element& atom = inside->best_stack.mobile();
        const double mass = atom.atom ? atom.atom->mass : 0.0;
        const double time_avg = -mass / inside->average.mean_friction;
        const bool ok = near(*inside->best.cooling_time, cool_opt_target, cool_opt_rel) &&
                        near(time_avg, cool_avg_target, cool_avg_rel);
        report.line(3, ok,
                    "cooling time " +
                        near_text(*inside->best.cooling_time, cool_opt_target, cool_opt_rel) +
                        " s, averaged " + near_text(time_avg, cool_avg_target, cool_avg_rel) +
                        " s");
    } else {
        report.line(3, false, "skipped: no cooling at the inside optimum");
    }

    // Criterion 4: drive level at the operating point.
    if (inside) {
        const AtomModel& atom = *inside->built.stack.mobile().atom;
        const double lorentz =
            atom.gamma * atom.gamma /
            (atom.detuning * atom.detuning + atom.gamma * atom.gamma);
        const double intensity =
            inside->built.s_reference * atom.saturation_intensity / lorentz;
        const bool ok = near(inside->built.s_reference, s_ref_target, s_ref_rel) &&
                        near(intensity, intensity_target, intensity_rel);
        report.line(4, ok,
                    "saturation " + near_text(inside->built.s_reference, s_ref_target,
                                              s_ref_rel) +
                        ", intensity " + near_text(intensity, intensity_target, intensity_rel) +
                        " W/m^2");
    } else {
        report.line(4, false, "skipped: inside scenario unavailable");
    }

    // Criterion 5: external-cavity optimum friction and cooling time.
    std::optional<OutsideSummary> outside;
    try {
        outside = summarize_outside(OutsideScenario{});
        const bool ok = near(outside->best.friction, friction_out_target, friction_out_rel) &&
                        outside->best.cooling_time &&
                        near(*outside->best.cooling_time, cool_out_target, cool_out_rel);
        report.line(5, ok,
                    "optimum friction " +
                        near_text(outside->best.friction, friction_out_target,
                                  friction_out_rel) +
                        ", cooling time " +
                        (outside->best.cooling_time
                             ? near_text(*outside->best.cooling_time, cool_out_target,
                                         cool_out_rel) + " s"
                             : std::string("undefined")));
    } catch (const std::exception& error) {
        report.failed(5, error);
    }

    // Criterion 6: equilibrium temperatures within a factor of two.
    if (inside && outside && inside->best.temperature && inside->average.temperature &&
        outside->best.temperature) {
        const bool ok =
            in_window(*inside->best.temperature, temp_in_opt_target / 2.0,
                      temp_in_opt_target * 2.0) &&
            in_window(*inside->average.temperature, temp_in_avg_target / 2.0,
                      temp_in_avg_target * 2.0) &&
            in_window(*outside->best.temperature, temp_out_target / 2.0,
                      temp_out_target * 2.0);
        report.line(6, ok,
                    "inside " +
                        window_text(*inside->best.temperature, temp_in_opt_target / 2.0,
                                    temp_in_opt_target * 2.0) +
                        " K, averaged " +
                        window_text(*inside->average.temperature, temp_in_avg_target / 2.0,
                                    temp_in_avg_target * 2.0) +
                        " K, outside " +
                        window_text(*outside->best.temperature, temp_out_target / 2.0,
                                    temp_out_target * 2.0) +
                        " K");
    } else {
        report.line(6, false, "skipped: missing equilibrium temperatures");
    }

    // Criterion 7: temperature scaling with the cavity linewidth.  The law
    // T ~ hbar kappa / kB is a good-cavity statement, so the sweep stays at
    // kappa well below the atomic linewidth and holds the scaled operating
    // point fixed (asymptotic-family detuning, position re-optimized).
    try {
        const std::vector<double> mirror_zetas{-377.6, -534.0, -755.2, -1068.0};
        std::vector<double> kappas;
        std::map<double, double> temperature_by_kappa;
        for (double z : mirror_zetas) {
            InsideScenario scenario;
            scenario.mirror_zeta = {z, 0.0};
            scenario.detuning = {asymptote_detuning_kappa, DetuningUnit::kappa};
            // Hold the saturation budget: buildup grows with zeta^2.
            scenario.power = 2e-12 * (133.5 / std::abs(z)) * (133.5 / std::abs(z));
            const BuiltScenario built = build_inside(scenario);
            const double base = built.stack.mobile().position;
            const double wavelength = 2.0 * pi / built.cavity.k_resonance;
            const ModulationProbe probe = built.default_probe;
            const Optimum position = find_optimum(
                [&](double offset) {
                    return friction_at(at_position(built.stack, base + offset * wavelength),
                                       probe.omega, probe.epsilon);
                },
                0.0, 0.25, 26);
            const DynamicalResponse response = dynamical_response(
                at_position(built.stack, base + position.parameter * wavelength), probe);
            if (!response.temperature)
                throw PhysicsError("kappa scaling probe: optimum does not cool");
            kappas.push_back(built.cavity.kappa);
            temperature_by_kappa[built.cavity.kappa] = *response.temperature;
        }
        const double slope =
            scaling_scan([&](double kappa) { return temperature_by_kappa.at(kappa); }, kappas)
                .slope;

        OutsideScenario wide;
        wide.waist = 3e-6; // weak scatterer: the external floor should emerge
        const OutsideSummary weak = summarize_outside(wide);
        if (!weak.best.temperature)
            throw PhysicsError("external floor probe: optimum does not cool");
        const double floor =
            temperature_asymptote(weak.built.cavity.kappa, CavityRegime::external);
        const double ratio = *weak.best.temperature / floor;

        const bool ok = std::abs(slope - slope_kappa_target) <= slope_kappa_tol &&
                        in_window(ratio, 1.0 / floor_ratio_limit, floor_ratio_limit);
        report.line(7, ok,
                    "inside T-vs-kappa slope " +
                        window_text(slope, slope_kappa_target - slope_kappa_tol,
                                    slope_kappa_target + slope_kappa_tol) +
                        ", outside temperature / (1.9 hbar kappa / kB) " +
                        window_text(ratio, 1.0 / floor_ratio_limit, floor_ratio_limit));
    } catch (const std::exception& error) {
        report.failed(7, error);
    }

    // Criterion 8: external friction scaling laws and the averaged residue.
    try {
        const std::vector<double> lengths{247.5e-6, 495e-6, 990e-6};
        std::map<double, double> peak_by_length;
        for (double length : lengths) {
            OutsideScenario scenario;
            scenario.cavity_length = length;
            const BuiltScenario built = build_outside(scenario);
            const double peak = outside_peak_friction(built);
            if (!(peak < 0.0)) throw PhysicsError("length scaling probe: no cooling peak");
            peak_by_length[length] = peak;
        }
        const double slope_length =
            scaling_scan([&](double l) { return peak_by_length.at(l); }, lengths).slope;

        const std::vector<double> waists{1e-6, 2e-6, 4e-6};
        std::vector<double> zetas;
        std::map<double, double> peak_by_zeta;
        for (double waist : waists) {
            OutsideScenario scenario;
            scenario.waist = waist;
            scenario.atom_dispersion = false; // resonator mechanism alone
            const BuiltScenario built = build_outside(scenario);
            const double zeta = std::abs(built.stack.mobile().zeta_at(built.k_solve));
            const double peak = outside_peak_friction(built);
            if (!(peak < 0.0)) throw PhysicsError("zeta scaling probe: no cooling peak");
            zetas.push_back(zeta);
            peak_by_zeta[zeta] = peak;
        }
        const double slope_zeta =
            scaling_scan([&](double z) { return peak_by_zeta.at(z); }, zetas).slope;

        if (!outside) throw PhysicsError("averaged residue probe: no outside optimum");
        OutsideScenario frozen;
        frozen.atom_dispersion = false;
        frozen.detuning = PumpDetuning{outside->optimum.second, DetuningUnit::kappa};
        const BuiltScenario frozen_built = build_outside(frozen);
        const double wavelength = 2.0 * pi / frozen_built.cavity.k_resonance;
        const WavelengthAverage average = average_over_wavelength(
            [&](double d) { return at_distance(frozen_built.stack, d); }, wavelength / 4.0,
            wavelength, frozen_built.default_probe, worker_threads());
        const double fraction = average.peak_abs_friction > 0.0
                                    ? std::abs(average.mean_friction) /
                                          average.peak_abs_friction
                                    : 1.0;

        const bool ok =
            std::abs(slope_length - slope_length_target) <= slope_length_tol &&
            std::abs(slope_zeta - slope_zeta_target) <= slope_zeta_tol &&
            fraction < averaged_fraction_limit;
        report.line(8, ok,
                    "peak friction vs length slope " +
                        window_text(slope_length, slope_length_target - slope_length_tol,
                                    slope_length_target + slope_length_tol) +
                        ", vs zeta slope " +
                        window_text(slope_zeta, slope_zeta_target - slope_zeta_tol,
                                    slope_zeta_target + slope_zeta_tol) +
                        ", averaged/peak " + num(fraction) + " < " +
                        num(averaged_fraction_limit));
    } catch (const std::exception& error) {
        report.failed(8, error);
    }

    // Criterion 9: model properties.
    try {
        if (!inside) throw PhysicsError("property probes need the inside optimum");
        const double det = worst_determinant_deviation();
        const double energy = worst_energy_deviation();
        const double airy = worst_interference_deviation();
        const double invariance =
            power_invariance_deviation(inside->best_stack, inside->built.default_probe);
        const double doppler = doppler_deviation();
        const double probe_limit =
            probe_limit_deviation(inside->best_stack, inside->built.default_probe);

        struct Property {
            const char* name;
            double value;
            double limit;
        };
        const Property properties[] = {
            {"determinant", det, determinant_tol},
            {"energy", energy, energy_tol},
            {"interference", airy, interference_tol},
            {"power-invariance", invariance, power_invariance_tol},
            {"doppler", doppler, doppler_rel},
            {"probe-limit", probe_limit, probe_limit_rel},
        };
        bool ok = true;
        std::string text = "properties:";
        for (const Property& property : properties) {
            const bool this_ok = property.value <= property.limit;
            ok = ok && this_ok;
            text += std::string(" ") + property.name + " " + num(property.value) +
                    (this_ok ? " <= " : " > ") + num(property.limit) + ";";
        }
        text.pop_back();
        report.line(9, ok, text);
    } catch (const std::exception& error) {
        report.failed(9, error);
    }

    return report.failures == 0 ? 0 : 1;
}
