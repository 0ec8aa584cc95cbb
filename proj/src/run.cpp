#include "cavcool/run.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavcool/constants.hpp"
#include "cavcool/errors.hpp"
#include "cavcool/sweeps.hpp"

namespace cavcool {

namespace {

using constants::c;
using constants::pi;

std::string meta_number(double value) { return format_scientific(value, 9); }

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> values(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        values[static_cast<std::size_t>(i)] =
            points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    return values;
}

/// Uniform grid on [start, start + span), suitable for periodic axes.
std::vector<double> periodic_grid(double start, double span, int points) {
    std::vector<double> values(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        values[static_cast<std::size_t>(i)] = start + span * i / points;
    return values;
}

Table make_table(std::vector<std::string> columns) {
    Table table;
    table.metadata = standard_metadata();
    table.columns = std::move(columns);
    return table;
}

double atom_gamma_of(const Stack& stack) {
    if (stack.mobile_index >= 0) {
        const Element& mobile = stack.elements[static_cast<std::size_t>(stack.mobile_index)];
        if (mobile.atom) return mobile.atom->gamma;
    }
    return rb85::gamma_hwhm;
}

void stamp_scenario(Table& table, const BuiltScenario& built) {
    const Stack& stack = built.stack;
    table.add_metadata("pump_power_W", meta_number(stack.pump.power));
    table.add_metadata("mode_area_m2", meta_number(stack.pump.mode_area));
    table.add_metadata("pump_wavelength_m", meta_number(stack.wavelength));
    if (built.cavity.kappa > 0.0) {
        table.add_metadata("finesse", meta_number(built.cavity.finesse));
        table.add_metadata("kappa_hwhm_rad_s", meta_number(built.cavity.kappa));
        table.add_metadata("free_spectral_range_Hz", meta_number(built.cavity.fsr));
        table.add_metadata("resonant_buildup", meta_number(built.cavity.buildup));
    }
    const double gamma = atom_gamma_of(stack);
    const double shift = stack.pump.detuning_from_cavity.value_or(0.0);
    if (built.cavity.kappa > 0.0)
        table.add_metadata("pump_detuning_kappa", meta_number(shift / built.cavity.kappa));
    table.add_metadata("pump_detuning_Gamma", meta_number(shift / gamma));
    if (stack.mobile_index >= 0) {
        const Element& mobile = stack.elements[static_cast<std::size_t>(stack.mobile_index)];
        if (mobile.atom)
            table.add_metadata("atom_detuning_Gamma",
                               meta_number(mobile.atom->detuning / gamma));
    }
}

// ---- stack factories used by sweeps and optimizers --------------------

Stack with_mobile_position(const BuiltScenario& built, double position) {
    Stack stack = built.stack;
    stack.elements[static_cast<std::size_t>(stack.mobile_index)].position = position;
    return stack;
}

/// Outside geometry: the atom stays at the origin and the whole resonator
/// slides to distance `d`.
Stack with_distance(const BuiltScenario& built, double d) {
    Stack stack = built.stack;
    const double length = stack.elements[2].position - stack.elements[1].position;
    stack.elements[1].position = d;
    stack.elements[2].position = d + length;
    return stack;
}

/// Move the pump relative to the bare resonance.  Atom elements are
/// re-anchored so their configured detuning keeps holding at the pump.
Stack with_detuning(const BuiltScenario& built, double detuning_kappa) {
    Stack stack = built.stack;
    const double k = built.cavity.k_resonance + detuning_kappa * built.cavity.kappa / c;
    stack.wavelength = 2.0 * pi / k;
    stack.pump.detuning_from_cavity = detuning_kappa * built.cavity.kappa;
    for (Element& element : stack.elements) {
        if (element.atom) {
            const bool dispersive = element.polarizability.dispersion.has_value();
            element = make_atom_element(*element.atom, element.position, k, dispersive,
                                        element.mobile);
        }
    }
    return stack;
}

double mobile_position(const BuiltScenario& built) {
    return built.stack.elements[static_cast<std::size_t>(built.stack.mobile_index)].position;
}

double mobile_mass(const BuiltScenario& built) {
    const Element& mobile = built.stack.mobile();
    return mobile.atom ? mobile.atom->mass : 0.0;
}

// ---- shared response-row layout ----------------------------------------

const std::vector<std::string> kResponseColumns = {
    "force",   "friction",    "friction_per_power",
    "diffusion", "temperature", "cooling_time", "saturation"};

std::vector<std::string> with_response_columns(std::vector<std::string> prefix) {
    prefix.insert(prefix.end(), kResponseColumns.begin(), kResponseColumns.end());
    return prefix;
}

void append_response(std::vector<std::optional<double>>& row, const SweepPoint& point,
                     double power) {
    if (!point.ok) {
        for (std::size_t i = 0; i < kResponseColumns.size(); ++i) row.emplace_back(std::nullopt);
        return;
    }
    const DynamicalResponse& r = point.response;
    row.emplace_back(r.static_force);
    row.emplace_back(r.friction);
    if (power > 0.0)
        row.emplace_back(r.friction / power);
    else
        row.emplace_back(std::nullopt);
    row.emplace_back(r.diffusion);
    row.emplace_back(r.temperature);
    row.emplace_back(r.cooling_time);
    row.emplace_back(r.saturation);
}

/// Run a sweep and append rows (prefix columns supplied per point).
void append_sweep_rows(
    Table& table, const BuiltScenario& built, const std::function<Stack(double)>& factory,
    const std::vector<double>& values, int threads,
    const std::function<std::vector<std::optional<double>>(double)>& prefix_of) {
    SweepSpec spec;
    spec.make_stack = factory;
    spec.values = values;
    spec.probe = built.default_probe;
    spec.threads = threads;
    const SweepResult result = scan(spec);
    for (const SweepPoint& point : result.points) {
        std::vector<std::optional<double>> row = prefix_of(point.parameter);
        append_response(row, point, built.stack.pump.power);
        table.add_row(std::move(row));
    }
}

// ---- reproduction targets ----------------------------------------------

Table inside_position_scan(const std::vector<double>& waists, bool dispersion, int threads) {
    Table table = make_table(with_response_columns(
        {"waist", "position_wavelengths", "position"}));
    table.add_metadata("note",
                       "pump power scaled with waist^2 to hold the reference saturation fixed");
    for (double waist : waists) {
        InsideScenario scenario;
        scenario.waist = waist;
        scenario.atom_dispersion = dispersion;
        scenario.power = 2e-12 * (waist / 30e-6) * (waist / 30e-6);
        const BuiltScenario built = build_inside(scenario);
        const double base = mobile_position(built);
        const double wavelength = 2.0 * pi / built.cavity.k_resonance;
        const auto factory = [&built, base, wavelength](double v) {
            return with_mobile_position(built, base + v * wavelength);
        };
        append_sweep_rows(table, built, factory, periodic_grid(-0.5, 1.0, 256), threads,
                          [&](double v) -> std::vector<std::optional<double>> {
                              return {waist, v, base + v * wavelength};
                          });
    }
    return table;
}

Table outside_distance_scan(const std::vector<double>& waists,
                            const std::vector<double>& lengths, bool dispersion, int threads,
                            bool lead_with_length) {
    Table table = make_table(with_response_columns(
        {lead_with_length ? "cavity_length" : "waist", "distance_wavelengths", "distance"}));
    if (!lead_with_length)
        table.add_metadata(
            "note", "pump power scaled with waist^2 to hold the reference saturation fixed");
    for (std::size_t i = 0; i < std::max(waists.size(), lengths.size()); ++i) {
        OutsideScenario scenario;
        scenario.atom_dispersion = dispersion;
        if (!waists.empty()) {
            scenario.waist = waists[std::min(i, waists.size() - 1)];
            scenario.power = 200e-12 * (scenario.waist / 1e-6) * (scenario.waist / 1e-6);
        }
        if (!lengths.empty()) scenario.cavity_length = lengths[std::min(i, lengths.size() - 1)];
        const BuiltScenario built = build_outside(scenario);
        const double wavelength = 2.0 * pi / built.cavity.k_resonance;
        const auto factory = [&built, wavelength](double v) {
            return with_distance(built, v * wavelength);
        };
        const double lead = lead_with_length ? scenario.cavity_length : scenario.waist;
        append_sweep_rows(table, built, factory,
                          periodic_grid(1.0 / 16.0, 1.0, 256), threads,
                          [&, lead](double v) -> std::vector<std::optional<double>> {
                              return {lead, v, v * wavelength};
                          });
    }
    return table;
}

/// Reference intensity corresponding to the budget-setting saturation.
double reference_intensity(const BuiltScenario& built) {
    const Element& mobile = built.stack.mobile();
    if (!mobile.atom) return 0.0;
    const AtomModel& atom = *mobile.atom;
    const double lorentz =
        atom.gamma * atom.gamma / (atom.detuning * atom.detuning + atom.gamma * atom.gamma);
    return built.s_reference * atom.saturation_intensity / lorentz;
}

struct InsideOptimum {
    BuiltScenario built;        ///< at default operating point
    double detuning_kappa = 0.0; ///< averaged-friction optimum [kappa]
    double offset_wl = 0.0;      ///< pointwise optimum offset from the antinode [wavelengths]
    Stack stack;                 ///< at the pointwise optimum
    DynamicalResponse response;  ///< at the pointwise optimum
    WavelengthAverage average;   ///< over positions, at the optimal detuning
};

/// The detuning axis optimizes the wavelength-averaged friction: an atom
/// that is not yet trapped samples every position, so the average is what
/// governs whether it cools at all.  Chasing the joint pointwise optimum
/// instead drags the pump toward the dressed resonance, where heating
/// pockets around the antinodes spoil the average.  The position axis then
/// locates the pointwise optimum at that detuning.
InsideOptimum optimize_inside(const InsideScenario& scenario, int threads) {
    InsideOptimum out;
    out.built = build_inside(scenario);
    const double base = mobile_position(out.built);
    const double wavelength = 2.0 * pi / out.built.cavity.k_resonance;
    const ModulationProbe probe = out.built.default_probe;
    const auto stack_at = [&](double offset_wl, double detuning_kappa) {
        Stack stack = with_detuning(out.built, detuning_kappa);
        stack.elements[static_cast<std::size_t>(stack.mobile_index)].position =
            base + offset_wl * wavelength;
        return stack;
    };
    const auto averaged = [&](double detuning_kappa) {
        return average_over_wavelength(
            [&](double x) {
                Stack stack = with_detuning(out.built, detuning_kappa);
                stack.elements[static_cast<std::size_t>(stack.mobile_index)].position = x;
                return stack;
            },
            base, wavelength, probe, threads);
    };
    const Optimum detuning = find_optimum(
        [&](double d) { return averaged(d).mean_friction; }, -6.0, -0.25, 24, 1e-3);
    out.detuning_kappa = detuning.parameter;
    // The pointwise landscape repeats every half wavelength and is symmetric
    // about the antinode, so one quarter period covers it.
    const Optimum position = find_optimum(
        [&](double offset) {
            return friction_at(stack_at(offset, out.detuning_kappa), probe.omega, probe.epsilon);
        },
        0.0, 0.25, 26);
    out.offset_wl = position.parameter;
    out.stack = stack_at(out.offset_wl, out.detuning_kappa);
    out.response = dynamical_response(out.stack, probe);
    out.average = averaged(out.detuning_kappa);
    return out;
}

struct OutsideOptimum {
    BuiltScenario built;
    Optimum2D optimum; ///< first: distance [m], second: detuning [kappa]
    Stack stack;
    DynamicalResponse response;
};

OutsideOptimum optimize_outside(const OutsideScenario& scenario) {
    OutsideOptimum out;
    out.built = build_outside(scenario);
    const double wavelength = 2.0 * pi / out.built.cavity.k_resonance;
    const ModulationProbe probe = out.built.default_probe;
    const auto stack_at = [&](double d, double detuning_kappa) {
        const BuiltScenario* base = &out.built;
        Stack stack = with_detuning(*base, detuning_kappa);
        BuiltScenario shifted = *base;
        shifted.stack = stack;
        return with_distance(shifted, d);
    };
    const double base_detuning = out.built.stack.pump.detuning_from_cavity.value_or(0.0) /
                                 out.built.cavity.kappa;
    out.optimum = find_optimum_2d(
        [&](double d, double detuning_kappa) {
            return friction_at(stack_at(d, detuning_kappa), probe.omega, probe.epsilon);
        },
        0.02 * wavelength, 0.62 * wavelength, base_detuning - 2.0, base_detuning + 2.0);
    out.stack = stack_at(out.optimum.first, out.optimum.second);
    out.response = dynamical_response(out.stack, probe);
    return out;
}

/// Append one measured quantity plus its acceptance window.  Pass nullopt
/// bounds for purely informational quantities.
struct HeadlineRow {
    std::vector<std::string> columns;
    std::vector<std::optional<double>> cells;

    void add(const std::string& name, std::optional<double> value, std::optional<double> lo,
             std::optional<double> hi) {
        columns.push_back(name);
        columns.push_back(name + "_lo");
        columns.push_back(name + "_hi");
        cells.push_back(value);
        cells.push_back(lo);
        cells.push_back(hi);
    }
};

Table headline_inside(int threads) {
    const InsideScenario scenario;
    const InsideOptimum opt = optimize_inside(scenario, threads);
    const BuiltScenario& built = opt.built;
    const double mass = mobile_mass(built);
    const WavelengthAverage& average = opt.average;

    HeadlineRow row;
    row.add("finesse", built.cavity.finesse, 56000.0 * 0.98, 56000.0 * 1.02);
    row.add("kappa_hwhm", built.cavity.kappa, std::nullopt, std::nullopt);
    row.add("detuning_opt_kappa", opt.detuning_kappa, -2.9, -2.3);
    row.add("friction_opt", opt.response.friction, -1.5e-20 * 1.2, -1.5e-20 * 0.8);
    row.add("cooling_time_opt", opt.response.cooling_time, 9e-6 * 0.8, 9e-6 * 1.2);
    std::optional<double> time_avg;
    if (average.mean_friction < 0.0 && mass > 0.0) time_avg = -mass / average.mean_friction;
    row.add("cooling_time_avg", time_avg, 37e-6 * 0.75, 37e-6 * 1.25);
    row.add("saturation_ref", built.s_reference, 0.14 * 0.75, 0.14 * 1.25);
    row.add("intensity_ref", reference_intensity(built), 230.0 * 0.7, 230.0 * 1.3);
    row.add("max_power_budget", max_power_for_saturation(built, 0.14), std::nullopt,
            std::nullopt);
    row.add("temperature_opt", opt.response.temperature, 56e-6 / 2.0, 56e-6 * 2.0);
    row.add("temperature_avg", average.temperature, 220e-6 / 2.0, 220e-6 * 2.0);

    Table table = make_table(row.columns);
    table.add_metadata("target", "headline-inside");
    stamp_scenario(table, built);
    table.add_metadata("detuning_opt_Gamma",
                       meta_number(opt.detuning_kappa * built.cavity.kappa /
                                   atom_gamma_of(built.stack)));
    table.add_row(row.cells);
    return table;
}

Table headline_outside(int threads) {
    const OutsideScenario scenario;
    const OutsideOptimum opt = optimize_outside(scenario);
    const BuiltScenario& built = opt.built;
    const double wavelength = 2.0 * pi / built.cavity.k_resonance;

    // Average over one wavelength of distances at the optimal detuning.  The
    // average probes the cavity-retardation mechanism alone, so freeze the
    // atom's internal dispersion: a dispersive atom adds a position-
    // independent Doppler background that would dominate the mean while
    // having nothing to do with the resonator.
    OutsideScenario frozen = scenario;
    frozen.atom_dispersion = false;
    frozen.detuning = PumpDetuning{opt.optimum.second, DetuningUnit::kappa};
    const BuiltScenario frozen_built = build_outside(frozen);
    const WavelengthAverage average = average_over_wavelength(
        [&frozen_built](double d) { return with_distance(frozen_built, d); }, wavelength / 4.0,
        wavelength, built.default_probe, threads);

    HeadlineRow row;
    row.add("finesse", built.cavity.finesse, 56000.0 * 0.98, 56000.0 * 1.02);
    row.add("kappa_hwhm", built.cavity.kappa, std::nullopt, std::nullopt);
    row.add("distance_opt_wavelengths", opt.optimum.first / wavelength, std::nullopt,
            std::nullopt);
    row.add("detuning_opt_kappa", opt.optimum.second, std::nullopt, std::nullopt);
    row.add("friction_opt", opt.response.friction, -2.9e-21 * 1.25, -2.9e-21 * 0.75);
    row.add("cooling_time_opt", opt.response.cooling_time, 50e-6 * 0.75, 50e-6 * 1.25);
    std::optional<double> averaged_fraction;
    if (average.peak_abs_friction > 0.0)
        averaged_fraction = std::abs(average.mean_friction) / average.peak_abs_friction;
    row.add("averaged_friction_fraction", averaged_fraction, std::nullopt, 0.01);
    row.add("saturation_ref", built.s_reference, std::nullopt, std::nullopt);
    row.add("max_power_budget", max_power_for_saturation(built, 0.14), std::nullopt,
            std::nullopt);
    row.add("temperature_opt", opt.response.temperature, 280e-6 / 2.0, 280e-6 * 2.0);

    Table table = make_table(row.columns);
    table.add_metadata("target", "headline-outside");
    stamp_scenario(table, built);
    table.add_metadata("averaged_friction_note",
                       "wavelength average computed with the atom's internal dispersion "
                       "frozen, isolating the resonator's retarded response");
    table.add_row(row.cells);
    return table;
}

Table asymptotes_table() {
    InsideScenario scenario;
    scenario.power = 0.0;
    Stack bare;
    bare.elements = {make_mirror(scenario.mirror_zeta, 0.0),
                     make_mirror(scenario.mirror_zeta, scenario.cavity_length)};
    bare.wavelength = scenario.wavelength;
    const CavityFigures figures = characterize_cavity(bare);
    Table table = make_table({"finesse", "kappa_hwhm", "free_spectral_range",
                              "temperature_floor_inside", "temperature_floor_outside"});
    table.add_metadata("target", "asymptotes");
    table.add_row({figures.finesse, figures.kappa, figures.fsr,
                   temperature_asymptote(figures.kappa, CavityRegime::intracavity),
                   temperature_asymptote(figures.kappa, CavityRegime::external)});
    return table;
}

Table fig2b_table(int threads) {
    const BuiltScenario built = build_inside(InsideScenario{});
    const double base = mobile_position(built);
    const double wavelength = 2.0 * pi / built.cavity.k_resonance;
    Table table =
        make_table(with_response_columns({"position_wavelengths", "position"}));
    table.add_metadata("target", "fig2b");
    stamp_scenario(table, built);
    const auto factory = [&built, base, wavelength](double v) {
        return with_mobile_position(built, base + v * wavelength);
    };
    append_sweep_rows(table, built, factory, periodic_grid(-0.5, 1.0, 256), threads,
                      [&](double v) -> std::vector<std::optional<double>> {
                          return {v, base + v * wavelength};
                      });
    return table;
}

Table fig3b_table(int threads) {
    const BuiltScenario built = build_outside(OutsideScenario{});
    const double wavelength = 2.0 * pi / built.cavity.k_resonance;
    Table table =
        make_table(with_response_columns({"distance_wavelengths", "distance"}));
    table.add_metadata("target", "fig3b");
    stamp_scenario(table, built);
    const auto factory = [&built, wavelength](double v) {
        return with_distance(built, v * wavelength);
    };
    append_sweep_rows(table, built, factory, periodic_grid(1.0 / 16.0, 1.0, 256), threads,
                      [&](double v) -> std::vector<std::optional<double>> {
                          return {v, v * wavelength};
                      });
    return table;
}

} // namespace

const std::vector<std::string>& reproduce_target_names() {
    static const std::vector<std::string> names = {
        "fig2b",           "fig3b",           "fig4",      "fig5",
        "fig6",            "headline-inside", "headline-outside", "asymptotes"};
    return names;
}

Table reproduce_target(const std::string& name, int threads) {
    if (name == "fig2b") return fig2b_table(threads);
    if (name == "fig3b") return fig3b_table(threads);
    if (name == "fig4") {
        Table table = inside_position_scan({30e-6, 10e-6, 3e-6}, false, threads);
        table.add_metadata("target", "fig4");
        return table;
    }
    if (name == "fig5") {
        Table table = outside_distance_scan({1e-6, 3e-6, 10e-6}, {}, false, threads, false);
        table.add_metadata("target", "fig5");
        return table;
    }
    if (name == "fig6") {
        Table table =
            outside_distance_scan({}, {247.5e-6, 495e-6, 990e-6}, true, threads, true);
        table.add_metadata("target", "fig6");
        return table;
    }
    if (name == "headline-inside") return headline_inside(threads);
    if (name == "headline-outside") return headline_outside(threads);
    if (name == "asymptotes") return asymptotes_table();
    std::string known;
    for (const std::string& candidate : reproduce_target_names()) {
        if (!known.empty()) known += ", ";
        known += candidate;
    }
    throw DomainError("unknown reproduce target \"" + name + "\" (known targets: " + known + ")");
}

Table solve_table(const RunConfig& config) {
    const BuiltScenario built = build_from_config(config);
    const Stack& stack = built.stack;
    const FieldState fields = solve_fields(stack);

    Table table = make_table({"k_pump", "reflected_power_fraction", "transmitted_power_fraction",
                              "force", "friction", "friction_per_power", "diffusion",
                              "temperature", "cooling_time", "saturation", "intensity"});
    table.add_metadata("command", "solve");
    stamp_scenario(table, built);

    std::vector<std::optional<double>> row;
    row.emplace_back(fields.k);
    const double input_norm = std::norm(fields.input);
    row.emplace_back(input_norm > 0.0
                         ? std::optional<double>(std::norm(fields.reflected) / input_norm)
                         : std::nullopt);
    row.emplace_back(input_norm > 0.0
                         ? std::optional<double>(std::norm(fields.transmitted) / input_norm)
                         : std::nullopt);
    if (stack.mobile_index >= 0) {
        const DynamicalResponse response = dynamical_response(stack, built.default_probe);
        row.emplace_back(response.static_force);
        row.emplace_back(response.friction);
        row.emplace_back(stack.pump.power > 0.0
                             ? std::optional<double>(response.friction / stack.pump.power)
                             : std::nullopt);
        row.emplace_back(response.diffusion);
        row.emplace_back(response.temperature);
        row.emplace_back(response.cooling_time);
        if (stack.mobile().atom)
            row.emplace_back(local_saturation(stack, fields, stack.mobile_index));
        else
            row.emplace_back(std::nullopt);
        row.emplace_back(local_intensity(fields, stack.mobile_index));
    } else {
        for (int i = 0; i < 8; ++i) row.emplace_back(std::nullopt);
    }
    table.add_row(std::move(row));
    return table;
}

Table scan_table(const RunConfig& config, int threads) {
    if (!config.sweep)
        throw DomainError("the scan command needs a \"sweep\" block in the config");
    const BuiltScenario built = build_from_config(config);
    if (built.stack.mobile_index < 0)
        throw DomainError("the scan command needs a stack with a mobile element");
    const SweepAxis& axis = *config.sweep;
    const std::vector<double> values = linspace(axis.from, axis.to, axis.points);
    const double wavelength =
        built.cavity.k_resonance > 0.0 ? 2.0 * pi / built.cavity.k_resonance
                                       : built.stack.wavelength;

    std::string parameter_name;
    std::string absolute_name;
    std::function<Stack(double)> factory;
    std::function<double(double)> absolute_of;
    switch (axis.parameter) {
    case SweepAxis::Parameter::position_wl: {
        parameter_name = "position_wavelengths";
        absolute_name = "position";
        const double base = mobile_position(built);
        factory = [&built, base, wavelength](double v) {
            return with_mobile_position(built, base + v * wavelength);
        };
        absolute_of = [base, wavelength](double v) { return base + v * wavelength; };
        break;
    }
    case SweepAxis::Parameter::distance_wl: {
        if (config.kind != RunConfig::Kind::outside)
            throw DomainError("a distance sweep needs the outside scenario");
        parameter_name = "distance_wavelengths";
        absolute_name = "distance";
        factory = [&built, wavelength](double v) { return with_distance(built, v * wavelength); };
        absolute_of = [wavelength](double v) { return v * wavelength; };
        break;
    }
    case SweepAxis::Parameter::detuning_kappa: {
        if (!(built.cavity.kappa > 0.0))
            throw DomainError("a detuning sweep needs a characterized resonance");
        parameter_name = "detuning_kappa";
        absolute_name = "detuning";
        factory = [&built](double v) { return with_detuning(built, v); };
        const double kappa = built.cavity.kappa;
        absolute_of = [kappa](double v) { return v * kappa; };
        break;
    }
    }

    Table table = make_table(with_response_columns({parameter_name, absolute_name}));
    table.add_metadata("command", "scan");
    stamp_scenario(table, built);
    append_sweep_rows(table, built, factory, values, threads,
                      [&](double v) -> std::vector<std::optional<double>> {
                          return {v, absolute_of(v)};
                      });
    return table;
}

Table average_table(const RunConfig& config, int threads) {
    const BuiltScenario built = build_from_config(config);
    if (built.stack.mobile_index < 0)
        throw DomainError("the average command needs a stack with a mobile element");
    const double wavelength =
        built.cavity.k_resonance > 0.0 ? 2.0 * pi / built.cavity.k_resonance
                                       : built.stack.wavelength;

    std::function<Stack(double)> factory;
    double start = 0.0;
    if (config.kind == RunConfig::Kind::outside) {
        factory = [&built](double d) { return with_distance(built, d); };
        start = built.stack.elements[1].position;
    } else {
        factory = [&built](double x) { return with_mobile_position(built, x); };
        start = mobile_position(built);
    }
    const WavelengthAverage average =
        average_over_wavelength(factory, start, wavelength, built.default_probe, threads);

    Table table = make_table({"mean_friction", "mean_friction_per_power", "mean_diffusion",
                              "peak_abs_friction", "temperature", "cooling_time",
                              "points_used"});
    table.add_metadata("command", "average");
    stamp_scenario(table, built);
    std::vector<std::optional<double>> row;
    row.emplace_back(average.mean_friction);
    row.emplace_back(built.stack.pump.power > 0.0
                         ? std::optional<double>(average.mean_friction / built.stack.pump.power)
                         : std::nullopt);
    row.emplace_back(average.mean_diffusion);
    row.emplace_back(average.peak_abs_friction);
    row.emplace_back(average.temperature);
    const double mass = mobile_mass(built);
    if (average.mean_friction < 0.0 && mass > 0.0)
        row.emplace_back(-mass / average.mean_friction);
    else
        row.emplace_back(std::nullopt);
    row.emplace_back(static_cast<double>(average.points_used));
    table.add_row(std::move(row));
    return table;
}

Table optimize_table(const RunConfig& config, int threads) {
    switch (config.kind) {
    case RunConfig::Kind::inside: {
        const InsideOptimum opt = optimize_inside(config.inside, threads);
        const double wavelength = 2.0 * pi / opt.built.cavity.k_resonance;
        Table table = make_table({"position_offset_wavelengths", "position", "detuning_kappa",
                                  "detuning_Gamma", "force", "friction", "friction_per_power",
                                  "diffusion", "temperature", "cooling_time", "mean_friction"});
        table.add_metadata("command", "optimize");
        table.add_metadata("detuning_objective",
                           "wavelength-averaged friction; position is then optimized pointwise");
        stamp_scenario(table, opt.built);
        const double gamma = atom_gamma_of(opt.built.stack);
        std::vector<std::optional<double>> row;
        row.emplace_back(opt.offset_wl);
        row.emplace_back(mobile_position(opt.built) + opt.offset_wl * wavelength);
        row.emplace_back(opt.detuning_kappa);
        row.emplace_back(opt.detuning_kappa * opt.built.cavity.kappa / gamma);
        row.emplace_back(opt.response.static_force);
        row.emplace_back(opt.response.friction);
        row.emplace_back(opt.built.stack.pump.power > 0.0
                             ? std::optional<double>(opt.response.friction /
                                                     opt.built.stack.pump.power)
                             : std::nullopt);
        row.emplace_back(opt.response.diffusion);
        row.emplace_back(opt.response.temperature);
        row.emplace_back(opt.response.cooling_time);
        row.emplace_back(opt.average.mean_friction);
        table.add_row(std::move(row));
        return table;
    }
    case RunConfig::Kind::outside: {
        const OutsideOptimum opt = optimize_outside(config.outside);
        const double wavelength = 2.0 * pi / opt.built.cavity.k_resonance;
        Table table = make_table({"distance_wavelengths", "distance", "detuning_kappa", "force",
                                  "friction", "friction_per_power", "diffusion", "temperature",
                                  "cooling_time"});
        table.add_metadata("command", "optimize");
        stamp_scenario(table, opt.built);
        std::vector<std::optional<double>> row;
        row.emplace_back(opt.optimum.first / wavelength);
        row.emplace_back(opt.optimum.first);
        row.emplace_back(opt.optimum.second);
        row.emplace_back(opt.response.static_force);
        row.emplace_back(opt.response.friction);
        row.emplace_back(opt.built.stack.pump.power > 0.0
                             ? std::optional<double>(opt.response.friction /
                                                     opt.built.stack.pump.power)
                             : std::nullopt);
        row.emplace_back(opt.response.diffusion);
        row.emplace_back(opt.response.temperature);
        row.emplace_back(opt.response.cooling_time);
        table.add_row(std::move(row));
        return table;
    }
    case RunConfig::Kind::custom:
        break;
    }
    const BuiltScenario built = build_from_config(config);
    if (built.stack.mobile_index < 0)
        throw DomainError("the optimize command needs a stack with a mobile element");
    const double wavelength = built.stack.wavelength;
    const double base = mobile_position(built);
    const std::size_t mobile = static_cast<std::size_t>(built.stack.mobile_index);
    double lo = base - 0.5 * wavelength;
    double hi = base + 0.5 * wavelength;
    if (mobile > 0)
        lo = std::max(lo, built.stack.elements[mobile - 1].position + wavelength / 100.0);
    if (mobile + 1 < built.stack.elements.size())
        hi = std::min(hi, built.stack.elements[mobile + 1].position - wavelength / 100.0);
    if (!(lo < hi))
        throw DomainError("the mobile element has no room to move between its neighbours");
    const ModulationProbe probe = built.default_probe;
    const Optimum opt = find_optimum(
        [&](double x) { return friction_at(with_mobile_position(built, x), probe.omega, probe.epsilon); },
        lo, hi, 65);
    const Stack stack = with_mobile_position(built, opt.parameter);
    const DynamicalResponse response = dynamical_response(stack, probe);

    Table table = make_table({"position", "force", "friction", "friction_per_power", "diffusion",
                              "temperature", "cooling_time"});
    table.add_metadata("command", "optimize");
    stamp_scenario(table, built);
    std::vector<std::optional<double>> row;
    row.emplace_back(opt.parameter);
    row.emplace_back(response.static_force);
    row.emplace_back(response.friction);
    row.emplace_back(built.stack.pump.power > 0.0
                         ? std::optional<double>(response.friction / built.stack.pump.power)
                         : std::nullopt);
    row.emplace_back(response.diffusion);
    row.emplace_back(response.temperature);
    row.emplace_back(response.cooling_time);
    table.add_row(std::move(row));
    return table;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"cavcool: steady-state fields, forces, friction, diffusion and equilibrium "
                 "temperatures of a mobile polarizable scatterer in a 1D optical stack"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    std::string format;
    int threads = 1;
    long seed = 0;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--output", output_path, "output file (default: config's path, else stdout)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed,
                   "accepted for interface compatibility; all computations are deterministic");

    CLI::App* solve_cmd =
        app.add_subcommand("solve", "steady state and dynamics at the configured operating point");
    CLI::App* scan_cmd =
        app.add_subcommand("scan", "sweep the parameter given by the config's sweep block");
    CLI::App* average_cmd =
        app.add_subcommand("average", "response averaged over one wavelength of positions");
    CLI::App* optimize_cmd =
        app.add_subcommand("optimize", "find and report the strongest-cooling operating point");
    CLI::App* reproduce_cmd =
        app.add_subcommand("reproduce", "compute a named standard table");
    std::string target;
    reproduce_cmd->add_option("target", target, "one of: fig2b, fig3b, fig4, fig5, fig6, "
                                                "headline-inside, headline-outside, asymptotes")
        ->required();
    for (CLI::App* sub : {solve_cmd, scan_cmd, average_cmd, optimize_cmd, reproduce_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig config;
        if (!reproduce_cmd->parsed()) {
            if (config_path.empty()) {
                std::cerr << "error: this command needs --config <file>" << std::endl;
                return 1;
            }
            config = load_config(config_path);
        }
        if (!output_path.empty()) config.output.path = output_path;
        if (!format.empty()) config.output.format = format;

        Table table;
        if (solve_cmd->parsed())
            table = solve_table(config);
        else if (scan_cmd->parsed())
            table = scan_table(config, threads);
        else if (average_cmd->parsed())
            table = average_table(config, threads);
        else if (optimize_cmd->parsed())
            table = optimize_table(config, threads);
        else
            table = reproduce_target(target, threads);

        write_table(table, config.output.path, config.output.format, config.output.precision);
        return 0;
    } catch (const DomainError& error) {
        std::cerr << "error: " << error.what() << std::endl;
        return 1;
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << std::endl;
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << std::endl;
        return 1;
    }
}

} // namespace cavcool
