#pragma once

#include <cmath>
#include <functional>

#include "cavcool/errors.hpp"

// Small scalar minimization helpers: golden-section refinement inside a
// bracket, and a bisection root finder used for linewidth seeds.

namespace cavcool {

/// Golden-section minimum of f on [a, b].  Assumes f is unimodal on the
/// bracket; returns the midpoint of the final interval.
[[nodiscard]] inline double golden_section_minimize(const std::function<double(double)>& f,
                                                    double a, double b,
                                                    double tol_abs, int max_iterations = 200)
{
    if (!(b > a))
        throw DomainError("golden_section_minimize: requires b > a");
    const double gr = (1.0 + std::sqrt(5.0)) / 2.0;
    double c = b - (b - a) / gr;
    double d = a + (b - a) / gr;
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iterations && std::abs(b - a) > tol_abs; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) / gr;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) / gr;
            fd = f(d);
        }
    }
    return (a + b) / 2.0;
}

/// Bisection root of g on [a, b]; g(a) and g(b) must bracket a sign change.
[[nodiscard]] inline double bisect_root(const std::function<double(double)>& g, double a,
                                        double b, double tol_abs, int max_iterations = 200)
{
    double ga = g(a);
    double gb = g(b);
    if (ga == 0.0)
        return a;
    if (gb == 0.0)
        return b;
    if ((ga > 0.0) == (gb > 0.0))
        throw DomainError("bisect_root: endpoints do not bracket a sign change");
    for (int i = 0; i < max_iterations && (b - a) > tol_abs; ++i) {
        const double mid = (a + b) / 2.0;
        const double gm = g(mid);
        if (gm == 0.0)
            return mid;
        if ((gm > 0.0) == (ga > 0.0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    return (a + b) / 2.0;
}

} // namespace cavcool
