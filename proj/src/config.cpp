#include "cavcool/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "cavcool/constants.hpp"
#include "cavcool/errors.hpp"

namespace cavcool {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) { throw DomainError("config: " + message); }

void require_keys(const json& object, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    if (!object.is_object()) bad(where + " must be a JSON object");
    for (const auto& item : object.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) bad("unknown key \"" + item.key() + "\" in " + where);
    }
}

const std::unordered_map<std::string, double>& unit_table(const std::string& dimension) {
    static const std::unordered_map<std::string, double> power{
        {"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}, {"nW", 1e-9}, {"pW", 1e-12}, {"fW", 1e-15}};
    static const std::unordered_map<std::string, double> length{
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}, {"pm", 1e-12}};
    static const std::unordered_map<std::string, double> area{
        {"m2", 1.0}, {"cm2", 1e-4}, {"mm2", 1e-6}, {"um2", 1e-12}};
    static const std::unordered_map<std::string, double> rate{{"/s", 1.0}, {"1/s", 1.0},
                                                              {"Hz", 1.0}};
    static const std::unordered_map<std::string, double> none{};
    if (dimension == "power") return power;
    if (dimension == "length") return length;
    if (dimension == "area") return area;
    if (dimension == "rate") return rate;
    if (dimension == "none") return none;
    bad("internal: unknown dimension \"" + dimension + "\"");
}

std::pair<double, std::string> split_quantity(const std::string& text) {
    std::istringstream in(text);
    double value = 0.0;
    if (!(in >> value)) bad("cannot parse number from \"" + text + "\"");
    std::string unit;
    in >> unit;
    std::string trailing;
    if (in >> trailing) bad("trailing text in quantity \"" + text + "\"");
    return {value, unit};
}

} // namespace

double parse_quantity(const std::string& text, const std::string& dimension) {
    const auto [value, unit] = split_quantity(text);
    if (dimension == "none") {
        if (!unit.empty()) bad("unexpected unit \"" + unit + "\" on dimensionless quantity");
        return value;
    }
    if (unit.empty()) bad("missing unit on \"" + text + "\" (expected a " + dimension + " unit)");
    const auto& table = unit_table(dimension);
    const auto found = table.find(unit);
    if (found == table.end())
        bad("unknown " + dimension + " unit \"" + unit + "\" in \"" + text + "\"");
    return value * found->second;
}

PumpDetuning parse_detuning(const std::string& text) {
    const auto [value, unit] = split_quantity(text);
    PumpDetuning detuning;
    detuning.value = value;
    if (unit == "kappa" || unit == "Kappa")
        detuning.unit = DetuningUnit::kappa;
    else if (unit == "Gamma" || unit == "gamma")
        detuning.unit = DetuningUnit::gamma;
    else
        bad("detuning \"" + text + "\" must carry unit \"kappa\" or \"Gamma\"");
    return detuning;
}

namespace {

double quantity_field(const json& object, const std::string& key, const std::string& dimension,
                      double fallback) {
    if (!object.contains(key)) return fallback;
    const json& value = object.at(key);
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) return parse_quantity(value.get<std::string>(), dimension);
    bad("key \"" + key + "\" must be a number or a \"value unit\" string");
}

double number_field(const json& object, const std::string& key, double fallback) {
    if (!object.contains(key)) return fallback;
    const json& value = object.at(key);
    if (!value.is_number()) bad("key \"" + key + "\" must be a number");
    return value.get<double>();
}

bool bool_field(const json& object, const std::string& key, bool fallback) {
    if (!object.contains(key)) return fallback;
    const json& value = object.at(key);
    if (!value.is_boolean()) bad("key \"" + key + "\" must be true or false");
    return value.get<bool>();
}

std::string string_field(const json& object, const std::string& key, const std::string& fallback) {
    if (!object.contains(key)) return fallback;
    const json& value = object.at(key);
    if (!value.is_string()) bad("key \"" + key + "\" must be a string");
    return value.get<std::string>();
}

PumpDetuning detuning_field(const json& object, const std::string& key, PumpDetuning fallback) {
    if (!object.contains(key)) return fallback;
    const json& value = object.at(key);
    if (!value.is_string()) bad("key \"" + key + "\" must be a string like \"-2.6 kappa\"");
    return parse_detuning(value.get<std::string>());
}

void parse_inside(const json& object, InsideScenario& scenario) {
    require_keys(object, "\"inside\"",
                 {"cavity_length", "mirror_zeta", "waist", "wavelength", "power", "detuning",
                  "atom_detuning", "atom_position", "dispersion", "s_max"});
    scenario.cavity_length =
        quantity_field(object, "cavity_length", "length", scenario.cavity_length);
    scenario.mirror_zeta =
        Complex(number_field(object, "mirror_zeta", scenario.mirror_zeta.real()), 0.0);
    scenario.waist = quantity_field(object, "waist", "length", scenario.waist);
    scenario.wavelength = quantity_field(object, "wavelength", "length", scenario.wavelength);
    scenario.power = quantity_field(object, "power", "power", scenario.power);
    scenario.detuning = detuning_field(object, "detuning", scenario.detuning);
    if (object.contains("atom_detuning")) {
        const PumpDetuning delta =
            detuning_field(object, "atom_detuning", {scenario.atom_detuning_gamma,
                                                     DetuningUnit::gamma});
        if (delta.unit != DetuningUnit::gamma)
            bad("\"atom_detuning\" must be expressed in Gamma");
        scenario.atom_detuning_gamma = delta.value;
    }
    if (object.contains("atom_position"))
        scenario.atom_position = quantity_field(object, "atom_position", "length", 0.0);
    scenario.atom_dispersion = bool_field(object, "dispersion", scenario.atom_dispersion);
    scenario.s_max = number_field(object, "s_max", scenario.s_max);
}

void parse_outside(const json& object, OutsideScenario& scenario) {
    require_keys(object, "\"outside\"",
                 {"cavity_length", "mirror_zeta", "waist", "wavelength", "power", "detuning",
                  "atom_detuning", "distance", "dispersion", "s_max"});
    scenario.cavity_length =
        quantity_field(object, "cavity_length", "length", scenario.cavity_length);
    scenario.mirror_zeta =
        Complex(number_field(object, "mirror_zeta", scenario.mirror_zeta.real()), 0.0);
    scenario.waist = quantity_field(object, "waist", "length", scenario.waist);
    scenario.wavelength = quantity_field(object, "wavelength", "length", scenario.wavelength);
    scenario.power = quantity_field(object, "power", "power", scenario.power);
    if (object.contains("detuning"))
        scenario.detuning = detuning_field(object, "detuning", PumpDetuning{});
    if (object.contains("atom_detuning")) {
        const PumpDetuning delta =
            detuning_field(object, "atom_detuning", {scenario.atom_detuning_gamma,
                                                     DetuningUnit::gamma});
        if (delta.unit != DetuningUnit::gamma)
            bad("\"atom_detuning\" must be expressed in Gamma");
        scenario.atom_detuning_gamma = delta.value;
    }
    if (object.contains("distance"))
        scenario.distance = quantity_field(object, "distance", "length", 0.0);
    scenario.atom_dispersion = bool_field(object, "dispersion", scenario.atom_dispersion);
    scenario.s_max = number_field(object, "s_max", scenario.s_max);
}

AtomModel parse_atom(const json& object, double k_ref) {
    require_keys(object, "an \"atom\" block",
                 {"detuning", "coupling", "gamma", "mass", "saturation_intensity", "wavelength",
                  "dispersion"});
    AtomModel atom;
    atom.gamma = quantity_field(object, "gamma", "rate", atom.gamma);
    if (object.contains("detuning")) {
        const json& value = object.at("detuning");
        if (value.is_number()) {
            atom.detuning = value.get<double>();
        } else if (value.is_string()) {
            const PumpDetuning delta = parse_detuning(value.get<std::string>());
            if (delta.unit != DetuningUnit::gamma)
                bad("atom \"detuning\" must be a rate or expressed in Gamma");
            atom.detuning = delta.value * atom.gamma;
        } else {
            bad("atom \"detuning\" must be a number (rad/s) or \"value Gamma\"");
        }
    }
    atom.coupling = number_field(object, "coupling", atom.coupling);
    atom.mass = number_field(object, "mass", atom.mass);
    atom.saturation_intensity =
        number_field(object, "saturation_intensity", atom.saturation_intensity);
    atom.wavelength =
        quantity_field(object, "wavelength", "length", 2.0 * constants::pi / k_ref);
    return atom;
}

void parse_custom(const json& object, Stack& stack) {
    require_keys(object, "\"custom\"", {"wavelength", "pump", "elements"});
    stack = Stack{};
    stack.wavelength = quantity_field(object, "wavelength", "length", stack.wavelength);
    if (object.contains("pump")) {
        const json& pump = object.at("pump");
        require_keys(pump, "\"pump\"", {"power", "side", "mode_area"});
        stack.pump.power = quantity_field(pump, "power", "power", stack.pump.power);
        stack.pump.mode_area = quantity_field(pump, "mode_area", "area", stack.pump.mode_area);
        const std::string side = string_field(pump, "side", "left");
        if (side == "left")
            stack.pump.side = PumpSpec::Side::left;
        else if (side == "right")
            stack.pump.side = PumpSpec::Side::right;
        else
            bad("pump \"side\" must be \"left\" or \"right\"");
    }
    if (!object.contains("elements")) return;
    const json& elements = object.at("elements");
    if (!elements.is_array()) bad("\"elements\" must be an array");
    const double k_ref = stack.k0();
    for (const json& entry : elements) {
        require_keys(entry, "an \"elements\" entry", {"zeta", "atom", "position", "mobile"});
        if (!entry.contains("position")) bad("every element needs a \"position\"");
        const double position = quantity_field(entry, "position", "length", 0.0);
        const bool mobile = bool_field(entry, "mobile", false);
        Element element;
        if (entry.contains("zeta") == entry.contains("atom"))
            bad("each element must carry exactly one of \"zeta\" or \"atom\"");
        if (entry.contains("zeta")) {
            const json& zeta = entry.at("zeta");
            Complex value;
            if (zeta.is_number()) {
                value = Complex(zeta.get<double>(), 0.0);
            } else if (zeta.is_array() && zeta.size() == 2 && zeta[0].is_number() &&
                       zeta[1].is_number()) {
                value = Complex(zeta[0].get<double>(), zeta[1].get<double>());
            } else {
                bad("\"zeta\" must be a number or a [re, im] pair");
            }
            element = make_mirror(value, position);
            element.mobile = mobile;
        } else {
            const json& atom_block = entry.at("atom");
            const AtomModel atom = parse_atom(atom_block, k_ref);
            const bool dispersion = bool_field(atom_block, "dispersion", true);
            element = make_atom_element(atom, position, k_ref, dispersion, mobile);
        }
        stack.elements.push_back(element);
        if (mobile) {
            if (stack.mobile_index >= 0) bad("more than one element is marked mobile");
            stack.mobile_index = static_cast<int>(stack.elements.size()) - 1;
        }
    }
    validate(stack);
}

SweepAxis parse_sweep(const json& object) {
    require_keys(object, "\"sweep\"", {"parameter", "from", "to", "points"});
    SweepAxis axis;
    const std::string name = string_field(object, "parameter", "position");
    if (name == "position")
        axis.parameter = SweepAxis::Parameter::position_wl;
    else if (name == "distance")
        axis.parameter = SweepAxis::Parameter::distance_wl;
    else if (name == "detuning")
        axis.parameter = SweepAxis::Parameter::detuning_kappa;
    else
        bad("sweep \"parameter\" must be \"position\", \"distance\", or \"detuning\"");
    axis.from = number_field(object, "from", axis.from);
    axis.to = number_field(object, "to", axis.to);
    const double points = number_field(object, "points", axis.points);
    if (points < 2 || points != std::floor(points))
        bad("sweep \"points\" must be an integer >= 2");
    axis.points = static_cast<int>(points);
    return axis;
}

OutputSpec parse_output(const json& object) {
    require_keys(object, "\"output\"", {"path", "format", "precision"});
    OutputSpec spec;
    spec.path = string_field(object, "path", spec.path);
    spec.format = string_field(object, "format", spec.format);
    if (spec.format != "csv" && spec.format != "json")
        bad("output \"format\" must be \"csv\" or \"json\"");
    const double precision = number_field(object, "precision", spec.precision);
    if (precision < 1 || precision > 17 || precision != std::floor(precision))
        bad("output \"precision\" must be an integer between 1 and 17");
    spec.precision = static_cast<int>(precision);
    return spec;
}

std::string format_full(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string quantity_string(double value, const char* unit) {
    return format_full(value) + " " + unit;
}

json detuning_json(const PumpDetuning& detuning) {
    return format_full(detuning.value) +
           (detuning.unit == DetuningUnit::kappa ? " kappa" : " Gamma");
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& error) {
        bad(std::string("invalid JSON: ") + error.what());
    }
    require_keys(root, "the top level",
                 {"scenario", "inside", "outside", "custom", "probe", "sweep", "output"});
    RunConfig config;
    const std::string kind = string_field(root, "scenario", "inside");
    if (kind == "inside")
        config.kind = RunConfig::Kind::inside;
    else if (kind == "outside")
        config.kind = RunConfig::Kind::outside;
    else if (kind == "custom")
        config.kind = RunConfig::Kind::custom;
    else
        bad("\"scenario\" must be \"inside\", \"outside\", or \"custom\"");
    if (root.contains("inside")) parse_inside(root.at("inside"), config.inside);
    if (root.contains("outside")) parse_outside(root.at("outside"), config.outside);
    if (root.contains("custom")) parse_custom(root.at("custom"), config.custom_stack);
    if (config.kind == RunConfig::Kind::custom && !root.contains("custom"))
        bad("scenario \"custom\" requires a \"custom\" block");
    if (root.contains("probe")) {
        const json& probe = root.at("probe");
        require_keys(probe, "\"probe\"", {"omega", "epsilon"});
        ModulationProbe parsed;
        parsed.omega = quantity_field(probe, "omega", "rate", 0.0);
        parsed.epsilon = quantity_field(probe, "epsilon", "length", 0.0);
        if (parsed.omega <= 0.0) bad("probe \"omega\" must be positive");
        if (parsed.epsilon <= 0.0) bad("probe \"epsilon\" must be positive");
        config.probe = parsed;
    }
    if (root.contains("sweep")) config.sweep = parse_sweep(root.at("sweep"));
    if (root.contains("output")) config.output = parse_output(root.at("output"));
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open config file \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
    json root;
    root["scenario"] = config.kind == RunConfig::Kind::inside    ? "inside"
                       : config.kind == RunConfig::Kind::outside ? "outside"
                                                                 : "custom";
    {
        const InsideScenario& s = config.inside;
        json block;
        block["cavity_length"] = quantity_string(s.cavity_length, "m");
        block["mirror_zeta"] = s.mirror_zeta.real();
        block["waist"] = quantity_string(s.waist, "m");
        block["wavelength"] = quantity_string(s.wavelength, "m");
        block["power"] = quantity_string(s.power, "W");
        block["detuning"] = detuning_json(s.detuning);
        block["atom_detuning"] = format_full(s.atom_detuning_gamma) + " Gamma";
        if (s.atom_position) block["atom_position"] = quantity_string(*s.atom_position, "m");
        block["dispersion"] = s.atom_dispersion;
        block["s_max"] = s.s_max;
        root["inside"] = block;
    }
    {
        const OutsideScenario& s = config.outside;
        json block;
        block["cavity_length"] = quantity_string(s.cavity_length, "m");
        block["mirror_zeta"] = s.mirror_zeta.real();
        block["waist"] = quantity_string(s.waist, "m");
        block["wavelength"] = quantity_string(s.wavelength, "m");
        block["power"] = quantity_string(s.power, "W");
        if (s.detuning) block["detuning"] = detuning_json(*s.detuning);
        block["atom_detuning"] = format_full(s.atom_detuning_gamma) + " Gamma";
        if (s.distance) block["distance"] = quantity_string(*s.distance, "m");
        block["dispersion"] = s.atom_dispersion;
        block["s_max"] = s.s_max;
        root["outside"] = block;
    }
    if (config.kind == RunConfig::Kind::custom) {
        const Stack& stack = config.custom_stack;
        json block;
        block["wavelength"] = quantity_string(stack.wavelength, "m");
        json pump;
        pump["power"] = quantity_string(stack.pump.power, "W");
        pump["side"] = stack.pump.side == PumpSpec::Side::left ? "left" : "right";
        pump["mode_area"] = quantity_string(stack.pump.mode_area, "m2");
        block["pump"] = pump;
        json elements = json::array();
        for (const Element& element : stack.elements) {
            json entry;
            entry["position"] = quantity_string(element.position, "m");
            if (element.mobile) entry["mobile"] = true;
            if (element.atom) {
                json atom;
                atom["gamma"] = quantity_string(element.atom->gamma, "/s");
                atom["detuning"] = element.atom->detuning;
                atom["coupling"] = element.atom->coupling;
                atom["mass"] = element.atom->mass;
                atom["saturation_intensity"] = element.atom->saturation_intensity;
                atom["wavelength"] = quantity_string(element.atom->wavelength, "m");
                atom["dispersion"] = element.polarizability.dispersion.has_value();
                entry["atom"] = atom;
            } else {
                entry["zeta"] = {element.polarizability.value.real(),
                                 element.polarizability.value.imag()};
            }
            elements.push_back(entry);
        }
        block["elements"] = elements;
        root["custom"] = block;
    }
    if (config.probe) {
        json probe;
        probe["omega"] = quantity_string(config.probe->omega, "/s");
        probe["epsilon"] = quantity_string(config.probe->epsilon, "m");
        root["probe"] = probe;
    }
    if (config.sweep) {
        json sweep;
        sweep["parameter"] =
            config.sweep->parameter == SweepAxis::Parameter::position_wl   ? "position"
            : config.sweep->parameter == SweepAxis::Parameter::distance_wl ? "distance"
                                                                           : "detuning";
        sweep["from"] = config.sweep->from;
        sweep["to"] = config.sweep->to;
        sweep["points"] = config.sweep->points;
        root["sweep"] = sweep;
    }
    {
        json output;
        output["path"] = config.output.path;
        output["format"] = config.output.format;
        output["precision"] = config.output.precision;
        root["output"] = output;
    }
    return root.dump(2) + "\n";
}

BuiltScenario build_from_config(const RunConfig& config) {
    switch (config.kind) {
    case RunConfig::Kind::inside: {
        BuiltScenario built = build_inside(config.inside);
        if (config.probe) built.default_probe = *config.probe;
        return built;
    }
    case RunConfig::Kind::outside: {
        BuiltScenario built = build_outside(config.outside);
        if (config.probe) built.default_probe = *config.probe;
        return built;
    }
    case RunConfig::Kind::custom:
        break;
    }
    BuiltScenario built;
    built.stack = config.custom_stack;
    built.k_solve = built.stack.k0();
    built.regime = CavityRegime::external;
    built.s_reference = 0.0;
    if (built.stack.mobile_index > 0 &&
        built.stack.mobile_index + 1 < static_cast<int>(built.stack.elements.size()))
        built.regime = CavityRegime::intracavity;
    bool characterized = false;
    try {
        built.cavity = characterize_cavity(built.stack);
        characterized = true;
    } catch (const Error&) {
        built.cavity = CavityFigures{};
    }
    if (config.probe) {
        built.default_probe = *config.probe;
    } else if (characterized) {
        built.default_probe.omega = built.cavity.kappa / 40.0;
        built.default_probe.epsilon = built.stack.wavelength * 1e-4;
    } else {
        bad("custom stacks without a recognizable resonance need an explicit \"probe\" block");
    }
    return built;
}

} // namespace cavcool
