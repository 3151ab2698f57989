#pragma once

#include <array>
#include <cstddef>

namespace ncsum {

// Central differences refined by Richardson extrapolation over step halvings.
// Both stencils have error series in even powers of the step, so each level
// removes one power of 4.
template <std::size_t Levels = 3, class F>
double richardson_first_derivative(F&& f, double x, double step) {
    std::array<double, Levels> table{};
    double h = step;
    for (std::size_t i = 0; i < Levels; ++i, h /= 2) table[i] = (f(x + h) - f(x - h)) / (2 * h);
    for (std::size_t level = 1; level < Levels; ++level) {
        double factor = 1;
        for (std::size_t j = 0; j < level; ++j) factor *= 4;
        for (std::size_t i = Levels - 1; i >= level; --i)
            table[i] = (factor * table[i] - table[i - 1]) / (factor - 1);
    }
    return table[Levels - 1];
}

template <std::size_t Levels = 3, class F>
double richardson_second_derivative(F&& f, double x, double step) {
    std::array<double, Levels> table{};
    const double f0 = f(x);
    double h = step;
    for (std::size_t i = 0; i < Levels; ++i, h /= 2)
        table[i] = (f(x + h) - 2 * f0 + f(x - h)) / (h * h);
    for (std::size_t level = 1; level < Levels; ++level) {
        double factor = 1;
        for (std::size_t j = 0; j < level; ++j) factor *= 4;
        for (std::size_t i = Levels - 1; i >= level; --i)
            table[i] = (factor * table[i] - table[i - 1]) / (factor - 1);
    }
    return table[Levels - 1];
}

} // namespace ncsum
