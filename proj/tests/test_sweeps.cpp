#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "cavcool/constants.hpp"
#include "cavcool/errors.hpp"
#include "cavcool/scenarios.hpp"
#include "cavcool/sweeps.hpp"

using namespace cavcool;
using constants::pi;

namespace {

/// Default intracavity stack with the atom moved to absolute position x.
std::function<Stack(double)> inside_factory(const BuiltScenario& built)
{
    return [&built](double x) {
        Stack stack = built.stack;
        stack.elements[static_cast<std::size_t>(stack.mobile_index)].position = x;
        return stack;
    };
}

} // namespace

TEST_CASE("find_optimum locates a quadratic minimum")
{
    const Optimum opt =
        find_optimum([](double x) { return (x - 2.0) * (x - 2.0); }, 0.0, 5.0);
    CHECK(opt.parameter == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(opt.value <= 1e-6);
}

TEST_CASE("find_optimum picks the deeper of two basins")
{
    const auto two_wells = [](double x) {
        const double w = x * x - 1.0;
        return w * w + 0.1 * x;
    };
    const Optimum opt = find_optimum(two_wells, -2.0, 2.0);
    CHECK(opt.parameter < 0.0);
    CHECK(opt.parameter == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("find_optimum rejects a flat objective")
{
    CHECK_THROWS_AS((void)find_optimum([](double) { return 1.0; }, 0.0, 1.0),
                    DiagnosticError);
    CHECK_THROWS_AS((void)find_optimum([](double x) { return x; }, 1.0, 1.0), DomainError);
}

TEST_CASE("find_optimum_2d descends into a separable bowl")
{
    const Optimum2D opt = find_optimum_2d(
        [](double x, double y) { return (x - 1.0) * (x - 1.0) + (y + 2.0) * (y + 2.0); },
        -3.0, 3.0, -4.0, 4.0);
    CHECK(opt.first == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(opt.second == doctest::Approx(-2.0).epsilon(1e-2));
    CHECK(opt.value <= 1e-3);
}

TEST_CASE("scaling_scan recovers exact power laws")
{
    const std::vector<double> values{1.0, 2.0, 4.0, 8.0};
    const ScalingResult rising =
        scaling_scan([](double x) { return 3.0 * std::pow(x, 2.5); }, values);
    CHECK(rising.slope == doctest::Approx(2.5).epsilon(1e-12));

    const ScalingResult negative =
        scaling_scan([](double x) { return -4.0 * x * x; }, values);
    CHECK(negative.slope == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)scaling_scan([](double) { return 0.0; }, values), PhysicsError);
}

TEST_CASE("feature_width brackets the cooling dip by its zero crossings")
{
    std::vector<double> x, y;
    for (int i = 0; i <= 60; ++i) {
        x.push_back(-3.05 + 0.1 * i);
        y.push_back(x.back() * x.back() - 1.0);
    }
    CHECK(feature_width(x, y) == doctest::Approx(2.0).epsilon(0.01));

    std::vector<double> positive = y;
    for (double& v : positive) v += 3.0;
    CHECK_THROWS_AS((void)feature_width(x, positive), PhysicsError);
}

TEST_CASE("scan records per-point failures and survives them")
{
    const BuiltScenario built = build_inside(InsideScenario{});
    const double base =
        built.stack.elements[static_cast<std::size_t>(built.stack.mobile_index)].position;

    SweepSpec spec;
    spec.values = {base, base + 1e-7, -1.0, base + 2e-7};
    spec.probe = built.default_probe;
    spec.threads = 2;
    spec.make_stack = [&built](double x) {
        if (x < 0.0) throw DomainError("test: unusable parameter");
        Stack stack = built.stack;
        stack.elements[static_cast<std::size_t>(stack.mobile_index)].position = x;
        return stack;
    };

    const SweepResult result = scan(spec);
    REQUIRE(result.points.size() == 4);
    CHECK(result.points[0].ok);
    CHECK(result.points[1].ok);
    CHECK(!result.points[2].ok);
    CHECK(!result.points[2].error.empty());
    CHECK(result.points[3].ok);

    SweepSpec doomed = spec;
    doomed.make_stack = [](double) -> Stack { throw DomainError("test: always fails"); };
    CHECK_THROWS_AS((void)scan(doomed), Error);
}

TEST_CASE("the wavelength average is periodic and self-consistent")
{
    const BuiltScenario built = build_inside(InsideScenario{});
    const double base =
        built.stack.elements[static_cast<std::size_t>(built.stack.mobile_index)].position;
    const double wavelength = 2.0 * pi / built.cavity.k_resonance;
    const auto factory = inside_factory(built);

    const WavelengthAverage a =
        average_over_wavelength(factory, base, wavelength, built.default_probe, 2);
    CHECK(a.points_used >= 64);
    CHECK(a.mean_friction < 0.0);
    REQUIRE(a.temperature.has_value());
    CHECK(*a.temperature ==
          doctest::Approx(equilibrium_temperature(a.mean_friction, a.mean_diffusion))
              .epsilon(1e-9));
    CHECK(a.peak_abs_friction >= std::abs(a.mean_friction));

    // A full period is a full period no matter where it starts.
    const WavelengthAverage b = average_over_wavelength(factory, base + 0.25 * wavelength,
                                                        wavelength, built.default_probe, 2);
    CHECK(b.mean_friction == doctest::Approx(a.mean_friction).epsilon(5e-3));
}

TEST_CASE("threading does not change the averaged numbers")
{
    const BuiltScenario built = build_inside(InsideScenario{});
    const double base =
        built.stack.elements[static_cast<std::size_t>(built.stack.mobile_index)].position;
    const double wavelength = 2.0 * pi / built.cavity.k_resonance;
    const auto factory = inside_factory(built);

    const WavelengthAverage serial =
        average_over_wavelength(factory, base, wavelength, built.default_probe, 1);
    const WavelengthAverage parallel =
        average_over_wavelength(factory, base, wavelength, built.default_probe, 4);
    CHECK(serial.mean_friction ==
          doctest::Approx(parallel.mean_friction).epsilon(1e-14));
    CHECK(serial.mean_diffusion ==
          doctest::Approx(parallel.mean_diffusion).epsilon(1e-14));
    CHECK(serial.points_used == parallel.points_used);
}
