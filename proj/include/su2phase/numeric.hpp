#pragma once

#include <cmath>
#include <numbers>
#include <utility>

namespace su2phase {

/// Node k of the uniform periodic grid on [-pi, pi) with `points` nodes.
inline double periodic_node(int k, int points) {
    return -std::numbers::pi + 2.0 * std::numbers::pi * k / points;
}

/// (1/2pi) * integral over [-pi, pi) by the periodic trapezoid rule. Exact
/// for trigonometric polynomials whose integer frequencies are below `points`.
template <class T, class F>
T periodic_mean(F&& f, int points) {
    T acc{};
    for (int k = 0; k < points; ++k) acc += f(periodic_node(k, points));
    return acc / static_cast<double>(points);
}

/// Golden-section minimization of a unimodal f on [lo, hi] down to a
/// bracket no wider than tol. Returns (argmin, f(argmin)).
template <class F>
std::pair<double, double> golden_section_minimize(F&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498948482;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

}  // namespace su2phase
