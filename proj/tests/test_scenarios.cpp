#include <doctest.h>

#include <cmath>

#include "cavcool/constants.hpp"
#include "cavcool/dynamics.hpp"
#include "cavcool/errors.hpp"
#include "cavcool/scenarios.hpp"

using namespace cavcool;
using constants::c;
using constants::pi;

TEST_CASE("the default resonator measures to its frozen figures")
{
    const BuiltScenario built = build_inside(InsideScenario{});
    const CavityFigures& cavity = built.cavity;
    CHECK(cavity.finesse == doctest::Approx(55991.8202).epsilon(1e-6));
    CHECK(cavity.kappa == doctest::Approx(1.69906814e7).epsilon(1e-6));
    CHECK(cavity.fsr == doctest::Approx(3.02820665e11).epsilon(1e-6));
    // The resonance the builder locks onto is the one nearest the nominal
    // wavelength, so it sits within half a free spectral range of 2 pi / wl.
    CHECK(std::abs(cavity.k_resonance - 2.0 * pi / 780e-9) <= 0.5001 * pi / 495e-6);
    CHECK(cavity.buildup == doctest::Approx(4.0 * cavity.finesse / pi).epsilon(0.01));
}

TEST_CASE("finesse agrees with the mirror-reflectivity formula")
{
    const BuiltScenario built = build_inside(InsideScenario{});
    const double r = std::abs(mirror_coefficients({-133.5, 0.0}).r);
    const double reflectivity = r * r;
    const double expected = pi * r / (1.0 - reflectivity);
    CHECK(built.cavity.finesse == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("linewidth, free spectral range and finesse form one identity")
{
    const BuiltScenario built = build_inside(InsideScenario{});
    CHECK(built.cavity.kappa ==
          doctest::Approx(pi * built.cavity.fsr / built.cavity.finesse).epsilon(1e-6));
}

TEST_CASE("the default atom position is an antinode of the resonant field")
{
    // The builder picks the atom position on the bare resonant standing wave,
    // so the check removes the atom and probes the empty cavity on resonance.
    const BuiltScenario built = build_inside(InsideScenario{});
    const double x_atom = built.stack.mobile().position;
    Stack bare = built.stack;
    bare.elements.erase(bare.elements.begin() + bare.mobile_index);
    bare.mobile_index = -1;

    const double k = built.cavity.k_resonance;
    const FieldState fields = solve_fields(bare, k);
    const auto enhancement_at = [&](double x) {
        const Vector2 v =
            propagation_matrix(k, x - bare.elements[0].position) * fields.at[0].right;
        return std::norm(v(0) + v(1)) / std::norm(fields.input);
    };
    CHECK(enhancement_at(x_atom) == doctest::Approx(built.cavity.buildup).epsilon(0.02));
    // A quarter wavelength away the same scan must find a near-node.
    CHECK(enhancement_at(x_atom + pi / (2.0 * k)) <= 1e-4 * built.cavity.buildup);
}

TEST_CASE("saturation reference and power budget are linear in the pump")
{
    const BuiltScenario built = build_inside(InsideScenario{});
    CHECK(built.s_reference == doctest::Approx(0.11958989).epsilon(1e-4));
    const double budget = max_power_for_saturation(built, 0.14);
    CHECK(budget == doctest::Approx(2.34133504e-12).epsilon(1e-4));

    InsideScenario at_budget;
    at_budget.power = budget;
    CHECK(build_inside(at_budget).s_reference == doctest::Approx(0.14).epsilon(1e-6));

    InsideScenario dark;
    dark.power = 0.0;
    CHECK_THROWS_AS((void)max_power_for_saturation(build_inside(dark), 0.14), DomainError);
}

TEST_CASE("an explicit pump detuning lands exactly where requested")
{
    InsideScenario inside;
    inside.detuning = {-2.6, DetuningUnit::kappa};
    const BuiltScenario in = build_inside(inside);
    REQUIRE(in.stack.pump.detuning_from_cavity.has_value());
    CHECK(*in.stack.pump.detuning_from_cavity / in.cavity.kappa ==
          doctest::Approx(-2.6).epsilon(1e-6));
    CHECK(in.k_solve == doctest::Approx(in.cavity.k_resonance -
                                        2.6 * in.cavity.kappa / c)
                            .epsilon(1e-12));

    OutsideScenario outside_kappa;
    outside_kappa.detuning = PumpDetuning{-1.0, DetuningUnit::kappa};
    const BuiltScenario out_k = build_outside(outside_kappa);
    REQUIRE(out_k.stack.pump.detuning_from_cavity.has_value());
    CHECK(*out_k.stack.pump.detuning_from_cavity / out_k.cavity.kappa ==
          doctest::Approx(-1.0).epsilon(1e-6));

    OutsideScenario outside_gamma;
    outside_gamma.detuning = PumpDetuning{-20.0, DetuningUnit::gamma};
    const BuiltScenario out_g = build_outside(outside_gamma);
    REQUIRE(out_g.stack.pump.detuning_from_cavity.has_value());
    CHECK(*out_g.stack.pump.detuning_from_cavity ==
          doctest::Approx(-20.0 * rb85::gamma_hwhm).epsilon(1e-6));
}

TEST_CASE("the atom's detuning is anchored at the pump it actually sees")
{
    InsideScenario scenario;
    scenario.detuning = {-2.6, DetuningUnit::kappa};
    const BuiltScenario built = build_inside(scenario);
    const Element& atom = built.stack.mobile();
    REQUIRE(atom.atom.has_value());
    // The stored polarizability evaluated at the solve wavenumber must match
    // the nominal ten-linewidth red detuning.
    const Complex expected = atom_zeta(*atom.atom, -10.0 * atom.atom->gamma);
    CHECK(std::abs(atom.zeta_at(built.k_solve) - expected) <= 1e-9 * std::abs(expected));
}

TEST_CASE("inside geometry and mode-area conventions")
{
    InsideScenario scenario;
    const BuiltScenario built = build_inside(scenario);
    REQUIRE(built.stack.elements.size() == 3);
    CHECK(built.stack.elements[0].position == 0.0);
    CHECK(built.stack.elements[2].position == doctest::Approx(495e-6).epsilon(1e-12));
    CHECK(built.stack.mobile_index == 1);
    CHECK(std::abs(built.stack.elements[1].position - 247.5e-6) <= 0.5 * 780e-9);
    CHECK(built.stack.pump.mode_area ==
          doctest::Approx(pi * 30e-6 * 30e-6 / 4.0).epsilon(1e-12));
    CHECK(built.regime == CavityRegime::intracavity);

    InsideScenario placed;
    placed.atom_position = 200e-6;
    CHECK(build_inside(placed).stack.elements[1].position == 200e-6);

    InsideScenario outside_the_mirrors;
    outside_the_mirrors.atom_position = 496e-6;
    CHECK_THROWS_AS((void)build_inside(outside_the_mirrors), DomainError);
}

TEST_CASE("outside geometry and mode-area conventions")
{
    OutsideScenario scenario;
    scenario.detuning = PumpDetuning{-1.0, DetuningUnit::kappa};
    const BuiltScenario built = build_outside(scenario);
    REQUIRE(built.stack.elements.size() == 3);
    CHECK(built.stack.mobile_index == 0);
    CHECK(built.stack.elements[0].position == 0.0);
    const double quarter = 2.0 * pi / built.cavity.k_resonance / 4.0;
    CHECK(built.stack.elements[1].position == doctest::Approx(quarter).epsilon(1e-9));
    CHECK(built.stack.elements[2].position - built.stack.elements[1].position ==
          doctest::Approx(495e-6).epsilon(1e-12));
    CHECK(built.stack.pump.mode_area == doctest::Approx(1e-12).epsilon(1e-12));
    CHECK(built.regime == CavityRegime::external);
    CHECK(built.s_reference == doctest::Approx(0.118574732).epsilon(1e-4));
}

TEST_CASE("without an explicit detuning the outside builder optimizes the friction")
{
    const BuiltScenario built = build_outside(OutsideScenario{});
    REQUIRE(built.stack.pump.detuning_from_cavity.has_value());
    const double detuning_kappa = *built.stack.pump.detuning_from_cavity / built.cavity.kappa;
    CHECK(std::abs(detuning_kappa) <= 4.0);
    CHECK(friction_at(built.stack, built.default_probe.omega, built.default_probe.epsilon) <
          0.0);
}

TEST_CASE("a resonator too lossy to resolve is rejected with diagnostics")
{
    InsideScenario scenario;
    scenario.mirror_zeta = {-0.05, 0.0};
    CHECK_THROWS_AS((void)build_inside(scenario), DiagnosticError);

    Stack lonely;
    lonely.elements = {make_mirror({-133.5, 0.0}, 0.0)};
    lonely.pump.power = 2e-12;
    lonely.pump.mode_area = 1e-9;
    CHECK_THROWS_AS((void)characterize_cavity(lonely), DiagnosticError);
}

TEST_CASE("the saturation budget rejects an overdriven pump")
{
    InsideScenario scenario;
    scenario.power = 1e-6;
    CHECK_THROWS_AS((void)build_inside(scenario), PhysicsError);
}

TEST_CASE("intracavity friction at the working detuning reaches its frozen scale")
{
    const BuiltScenario built = build_inside(InsideScenario{});
    Stack stack = built.stack;
    const double base = stack.elements[1].position;
    const double wavelength = 2.0 * pi / built.cavity.k_resonance;
    double best = 0.0;
    for (int i = 0; i <= 64; ++i) {
        stack.elements[1].position = base + 0.25 * wavelength * i / 64.0;
        best = std::min(best, friction_at(stack, built.default_probe.omega,
                                          built.default_probe.epsilon));
    }
    CHECK(best < -1.15e-20);
    CHECK(best > -1.75e-20);
}

TEST_CASE("temperature floors at the measured linewidth")
{
    const BuiltScenario built = build_inside(InsideScenario{});
    CHECK(temperature_asymptote(built.cavity.kappa, CavityRegime::intracavity) ==
          doctest::Approx(1.29778776e-4).epsilon(1e-6));
    CHECK(temperature_asymptote(built.cavity.kappa, CavityRegime::external) ==
          doctest::Approx(2.46579674e-4).epsilon(1e-6));
}
