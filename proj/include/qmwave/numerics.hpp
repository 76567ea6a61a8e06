// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "qmwave/errors.hpp"
#include "qmwave/grid.hpp"

namespace qmwave {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

inline LinearFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw FitError("least_squares_line: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-300) throw FitError("least_squares_line: degenerate abscissae");
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        acc += r * r;
    }
    fit.rms_residual = std::sqrt(acc / n);
    return fit;
}

/// log(n!) with the n = 0 convention log 1 = 0.
inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

/// log(n^{s n}) with the n = 0 term defined as log 1 = 0.
inline double log_power_weight(int n, double s) {
    return n >= 1 ? s * n * std::log(static_cast<double>(n)) : 0.0;
}

namespace detail {

// Central finite-difference stencils, orders 1..6.
inline const std::vector<std::pair<int, double>>& fd_stencil(int order) {
    static const std::array<std::vector<std::pair<int, double>>, 7> stencils = {{
        {{0, 1.0}},
        {{-1, -0.5}, {1, 0.5}},
        {{-1, 1.0}, {0, -2.0}, {1, 1.0}},
        {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}},
        {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}},
        {{-3, -0.5}, {-2, 2.0}, {-1, -2.5}, {1, 2.5}, {2, -2.0}, {3, 0.5}},
        {{-3, 1.0}, {-2, -6.0}, {-1, 15.0}, {0, -20.0}, {1, 15.0}, {2, -6.0}, {3, 1.0}},
    }};
    if (order < 0 || order > 6) throw ConfigError("fd_stencil: order must be <= 6");
    return stencils[static_cast<std::size_t>(order)];
}

}  // namespace detail

/// Central finite-difference derivative of grid samples at x, step = an
/// exact multiple of the grid spacing near the requested step.
inline Complex finite_difference_derivative(const GridSignal& f, double x, int order, double step) {
    const double h = f.grid.spacing();
    const auto stride = std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(std::llround(step / h)));
    const double H = h * static_cast<double>(stride);
    const auto center = static_cast<std::ptrdiff_t>(f.grid.nearest_index(x));
    const auto n = static_cast<std::ptrdiff_t>(f.grid.num_points);
    Complex acc{0.0, 0.0};
    for (const auto& [offset, weight] : detail::fd_stencil(order)) {
        auto j = center + offset * stride;
        if (j < 0 || j >= n) throw GeometryError("finite_difference_derivative: stencil leaves the grid");
        acc += weight * f.values[static_cast<std::size_t>(j)];
    }
    return acc / std::pow(H, order);
}

}  // namespace qmwave
