#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cavcool/dynamics.hpp"

// Parameter sweeps over stacks built by a caller-supplied factory, plus the
// derived analyses used by the reproduction targets: spatial averaging over
// one wavelength, scalar optimization, and power-law slope extraction.
//
// Factories passed here must be safe to invoke concurrently when threads > 1.

namespace cavcool {

struct SweepPoint {
    double parameter = 0.0;
    DynamicalResponse response{};
    bool ok = false;
    std::string error; ///< failure reason when !ok
};

struct SweepSpec {
    std::function<Stack(double)> make_stack;
    std::vector<double> values;
    ModulationProbe probe{};
    int threads = 1;
};

struct SweepResult {
    std::vector<SweepPoint> points;
};

/// Full dynamical response at every parameter value.  Individual failures
/// are recorded on the point; if every point fails, throws with the first
/// failure's message.
[[nodiscard]] SweepResult scan(const SweepSpec& spec);

struct WavelengthAverage {
    double mean_friction = 0.0;          ///< [kg/s]
    double mean_diffusion = 0.0;         ///< [kg^2 m^2 / s^3]
    double peak_abs_friction = 0.0;      ///< [kg/s]
    std::optional<double> temperature;   ///< from the two means [K]; absent when not cooling
    int points_used = 0;
};

/// Friction and diffusion averaged over one wavelength of mobile-element
/// positions starting at x0 (a periodic integral, evaluated on a uniform
/// grid that is doubled until the friction mean settles).  The temperature
/// is formed from the averaged friction and averaged diffusion.  Friction
/// is evaluated at the probe frequency directly; the quadratic frequency
/// bias is far below the grid-convergence threshold.
[[nodiscard]] WavelengthAverage average_over_wavelength(
    const std::function<Stack(double)>& stack_at_position, double x0, double wavelength,
    const ModulationProbe& probe, int threads = 1);

struct Optimum {
    double parameter = 0.0;
    double value = 0.0;
};

/// Minimum of `objective` on [lo, hi]: coarse grid, then golden-section
/// refinement of the best bracket.
[[nodiscard]] Optimum find_optimum(const std::function<double(double)>& objective, double lo,
                                   double hi, int coarse_points = 33, double tol_rel = 1e-4);

struct Optimum2D {
    double first = 0.0;
    double second = 0.0;
    double value = 0.0;
};

/// Minimum over a rectangle: a coarse grid survey picks the basin, then
/// coordinate descent with line searches refines it.  `sweeps` caps the
/// number of descent rounds; it stops early once a round stops improving.
[[nodiscard]] Optimum2D find_optimum_2d(const std::function<double(double, double)>& objective,
                                        double lo1, double hi1, double lo2, double hi2,
                                        int sweeps = 8, int coarse_points = 17);

struct ScalingResult {
    std::vector<double> parameter;
    std::vector<double> observable;
    double slope = 0.0; ///< log-log least-squares slope of |observable|
};

/// Power-law exponent of |observable(parameter)| across `values`.
[[nodiscard]] ScalingResult scaling_scan(const std::function<double(double)>& observable,
                                         const std::vector<double>& values);

/// Length scale of the strongest cooling feature of a sampled curve y(x):
/// the distance between the zero crossings bracketing the minimum of y
/// (which must be negative), with linear interpolation at the crossings.
[[nodiscard]] double feature_width(const std::vector<double>& x, const std::vector<double>& y);

} // namespace cavcool
