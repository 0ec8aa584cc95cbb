#include "cavcool/sweeps.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "cavcool/optimize.hpp"

namespace cavcool {

namespace {

/// Striped parallel loop with deterministic index assignment; the first
/// exception from any stripe is rethrown after all threads join.
template <typename Body>
void parallel_for(int n, int threads, const Body& body)
{
    const int workers = std::max(1, std::min(threads, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += workers) {
                try {
                    body(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace

SweepResult scan(const SweepSpec& spec)
{
    if (!spec.make_stack)
        throw DomainError("scan: missing stack factory");
    if (spec.values.empty())
        throw DomainError("scan: no parameter values");

    SweepResult result;
    result.points.resize(spec.values.size());
    parallel_for(static_cast<int>(spec.values.size()), spec.threads, [&](int i) {
        const auto iu = static_cast<std::size_t>(i);
        SweepPoint& point = result.points[iu];
        point.parameter = spec.values[iu];
        try {
            const Stack stack = spec.make_stack(point.parameter);
            point.response = dynamical_response(stack, spec.probe);
            point.ok = true;
        } catch (const Error& e) {
            point.ok = false;
            point.error = e.what();
        }
    });

    bool any_ok = false;
    for (const SweepPoint& p : result.points)
        any_ok = any_ok || p.ok;
    if (!any_ok)
        throw Error("scan: every point failed; first failure: " + result.points.front().error);
    return result;
}

WavelengthAverage average_over_wavelength(const std::function<Stack(double)>& stack_at_position,
                                          double x0, double wavelength,
                                          const ModulationProbe& probe, int threads)
{
    if (!stack_at_position)
        throw DomainError("average_over_wavelength: missing stack factory");
    if (!(wavelength > 0.0))
        throw DomainError("average_over_wavelength: wavelength must be positive");

    struct GridStats {
        double mean_friction = 0.0;
        double mean_diffusion = 0.0;
        double peak = 0.0;
    };
    const auto grid_average = [&](int n) {
        std::vector<double> friction(static_cast<std::size_t>(n));
        std::vector<double> diff(static_cast<std::size_t>(n));
        parallel_for(n, threads, [&](int i) {
            const double x = x0 + wavelength * i / n;
            const Stack stack = stack_at_position(x);
            friction[static_cast<std::size_t>(i)] =
                friction_at(stack, probe.omega, probe.epsilon);
            diff[static_cast<std::size_t>(i)] = diffusion(stack);
        });
        GridStats stats;
        for (int i = 0; i < n; ++i) {
            const auto iu = static_cast<std::size_t>(i);
            stats.mean_friction += friction[iu];
            stats.mean_diffusion += diff[iu];
            stats.peak = std::max(stats.peak, std::abs(friction[iu]));
        }
        stats.mean_friction /= n;
        stats.mean_diffusion /= n;
        return stats;
    };

    const auto finish = [](const GridStats& stats, int n) {
        WavelengthAverage out;
        out.mean_friction = stats.mean_friction;
        out.mean_diffusion = stats.mean_diffusion;
        out.peak_abs_friction = stats.peak;
        out.points_used = n;
        if (stats.mean_friction < 0.0)
            out.temperature = equilibrium_temperature(stats.mean_friction, stats.mean_diffusion);
        return out;
    };

    constexpr int max_points = 2048;
    int n = 128;
    GridStats coarse = grid_average(n);
    while (true) {
        const GridStats fine = grid_average(2 * n);
        if (std::abs(fine.mean_friction - coarse.mean_friction) <= 1e-3 * fine.peak + 1e-30)
            return finish(fine, 2 * n);
        n *= 2;
        if (2 * n > max_points)
            throw DiagnosticError("average_over_wavelength: grid refinement has not converged",
                                  coarse.mean_friction, fine.mean_friction);
        coarse = fine;
    }
}

Optimum find_optimum(const std::function<double(double)>& objective, double lo, double hi,
                     int coarse_points, double tol_rel)
{
    if (!objective)
        throw DomainError("find_optimum: missing objective");
    if (!(hi > lo))
        throw DomainError("find_optimum: requires hi > lo");
    if (coarse_points < 3)
        throw DomainError("find_optimum: needs at least three coarse points");

    std::vector<double> xs(static_cast<std::size_t>(coarse_points));
    std::vector<double> ys(static_cast<std::size_t>(coarse_points));
    int best = 0;
    double y_lo = 0.0;
    double y_hi = 0.0;
    for (int i = 0; i < coarse_points; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        xs[iu] = lo + (hi - lo) * i / (coarse_points - 1);
        ys[iu] = objective(xs[iu]);
        if (i == 0) {
            y_lo = y_hi = ys[iu];
        } else {
            y_lo = std::min(y_lo, ys[iu]);
            y_hi = std::max(y_hi, ys[iu]);
        }
        if (ys[iu] < ys[static_cast<std::size_t>(best)])
            best = i;
    }
    if (y_hi - y_lo <= 1e-12 * std::max(std::abs(y_lo), std::abs(y_hi)))
        throw DiagnosticError("find_optimum: objective is flat over the bracket", y_lo, y_hi);
    const auto bu = static_cast<std::size_t>(best);
    const double a = best > 0 ? xs[bu - 1] : xs[bu];
    const double b = best + 1 < coarse_points ? xs[bu + 1] : xs[bu];
    if (!(b > a))
        return {xs[bu], ys[bu]};
    const double x = golden_section_minimize(objective, a, b, tol_rel * (hi - lo));
    return {x, objective(x)};
}

Optimum2D find_optimum_2d(const std::function<double(double, double)>& objective, double lo1,
                          double hi1, double lo2, double hi2, int sweeps, int coarse_points)
{
    if (!objective)
        throw DomainError("find_optimum_2d: missing objective");
    if (sweeps < 1)
        throw DomainError("find_optimum_2d: needs at least one sweep");
    if (!(hi1 > lo1) || !(hi2 > lo2))
        throw DomainError("find_optimum_2d: requires hi > lo on both axes");
    if (coarse_points < 3)
        throw DomainError("find_optimum_2d: needs at least three coarse points");

    // Full coarse survey to seed the descent inside the global basin; the
    // interesting landscapes here have diagonal valleys that defeat a
    // descent started blind.
    double p1 = (lo1 + hi1) / 2.0;
    double p2 = (lo2 + hi2) / 2.0;
    double best = objective(p1, p2);
    for (int i = 0; i < coarse_points; ++i) {
        const double x1 = lo1 + (hi1 - lo1) * i / (coarse_points - 1);
        for (int j = 0; j < coarse_points; ++j) {
            const double x2 = lo2 + (hi2 - lo2) * j / (coarse_points - 1);
            const double y = objective(x1, x2);
            if (y < best) {
                best = y;
                p1 = x1;
                p2 = x2;
            }
        }
    }

    // Coordinate descent with full-range line searches (each itself a
    // coarse scan plus golden refinement, so multi-modal cuts are safe).
    for (int s = 0; s < sweeps; ++s) {
        const Optimum along1 =
            find_optimum([&](double v) { return objective(v, p2); }, lo1, hi1, coarse_points);
        p1 = along1.parameter;
        const Optimum along2 =
            find_optimum([&](double v) { return objective(p1, v); }, lo2, hi2, coarse_points);
        p2 = along2.parameter;
        const bool settled = best - along2.value <= 1e-6 * std::abs(along2.value);
        best = along2.value;
        if (settled)
            break;
    }
    return {p1, p2, best};
}

ScalingResult scaling_scan(const std::function<double(double)>& observable,
                           const std::vector<double>& values)
{
    if (!observable)
        throw DomainError("scaling_scan: missing observable");
    if (values.size() < 2)
        throw DomainError("scaling_scan: needs at least two parameter values");

    ScalingResult result;
    result.parameter = values;
    result.observable.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0))
            throw DomainError("scaling_scan: parameter values must be positive");
        result.observable[i] = observable(values[i]);
        if (result.observable[i] == 0.0)
            throw PhysicsError("scaling_scan: observable vanished; no slope on a log scale");
    }

    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = std::log(values[i]);
        const double y = std::log(std::abs(result.observable[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    result.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return result;
}

double feature_width(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 3)
        throw DomainError("feature_width: needs at least three samples");
    std::size_t best = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (y[i] < y[best])
            best = i;
    }
    if (!(y[best] < 0.0))
        throw PhysicsError("feature_width: curve has no cooling region");

    const auto crossing = [&](std::size_t a, std::size_t b) {
        // Linear interpolation of the zero between samples a and b.
        return x[a] + (x[b] - x[a]) * (0.0 - y[a]) / (y[b] - y[a]);
    };
    double left = x.front();
    for (std::size_t i = best; i > 0; --i) {
        if (y[i - 1] >= 0.0) {
            left = crossing(i - 1, i);
            break;
        }
    }
    double right = x.back();
    for (std::size_t i = best; i + 1 < y.size(); ++i) {
        if (y[i + 1] >= 0.0) {
            right = crossing(i + 1, i);
            break;
        }
    }
    return right - left;
}

} // namespace cavcool
