#pragma once

#include <cmath>
#include <functional>

// Numeric derivative oracles for checking tape gradients and jets.

inline double central_diff(const std::function<double(double)>& f, double x,
                           double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double central_diff2(const std::function<double(double)>& f, double x,
                            double h = 1e-5) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline double rel_err(double got, double want) {
    double scale = std::fmax(1.0, std::fabs(want));
    return std::fabs(got - want) / scale;
}
