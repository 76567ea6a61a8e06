// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qmwave/grid.hpp"

namespace qmwave {

/// f restricted to the open ball L(x0, r). Samples outside the ball are
/// kept in `source` but marked unused by the mask.
struct BallRestriction {
    double center = 0.0;
    double radius = 0.0;
    GridSignal source;

    bool inside(double x) const { return std::abs(x - center) < radius; }
};

inline BallRestriction restrict_ball(const GridSignal& f, double x0, double r) {
    if (!(r > 0)) throw GeometryError("restrict: radius must be positive");
    if (x0 - r < f.grid.x_min || x0 + r > f.grid.x_max)
        throw GeometryError("restrict: ball L(" + std::to_string(x0) + ", " + std::to_string(r) +
                            ") exceeds the grid box");
    return BallRestriction{x0, r, f};
}

enum class ExtensionKind {
    global,         // use the source as its own extension
    zero_fill,      // zero outside the ball
    constant_fill,  // boundary-shell mean continued outside
};

inline const char* to_string(ExtensionKind k) {
    switch (k) {
        case ExtensionKind::global: return "global";
        case ExtensionKind::zero_fill: return "zero-fill";
        case ExtensionKind::constant_fill: return "constant-fill";
    }
    return "?";
}

/// A computable stand-in for one suitable extension f^rex. Always agrees
/// with the source on the ball, sample-exact. leak_budget bounds the
/// analysis windows outside the ball: max_{N <= v N_max} sup_{|x-x0|>=r}
/// E_{x0,vN}(x) = e^{-r^2/(4 v N_max)}.
struct ExtensionCandidate {
    ExtensionKind kind = ExtensionKind::global;
    GridSignal signal;
    double leak_budget = 0.0;
};

inline ExtensionCandidate extend(const BallRestriction& res, ExtensionKind kind, int v, int N_max) {
    if (v < 1 || N_max < 1) throw ConfigError("extend: v and N_max must be >= 1");
    const double budget = std::exp(-res.radius * res.radius / (4.0 * v * static_cast<double>(N_max)));

    if (kind == ExtensionKind::global)
        return ExtensionCandidate{kind, res.source, budget};

    Complex fill{0.0, 0.0};
    if (kind == ExtensionKind::constant_fill) {
        // Mean over the boundary shell: in-ball samples within two grid
        // spacings of the sphere.
        const double shell = 2.0 * res.source.grid.spacing();
        Complex acc{0.0, 0.0};
        std::size_t count = 0;
        for (std::size_t j = 0; j < res.source.grid.num_points; ++j) {
            const double d = std::abs(res.source.grid.point(j) - res.center);
            if (d < res.radius && d >= res.radius - shell) {
                acc += res.source.values[j];
                ++count;
            }
        }
        if (count > 0) fill = acc / static_cast<double>(count);
    }

    std::vector<Complex> out(res.source.grid.num_points);
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = res.inside(res.source.grid.point(j)) ? res.source.values[j] : fill;
    return ExtensionCandidate{kind, GridSignal(res.source.grid, std::move(out), res.source.label),
                              budget};
}

/// Smallest ball radius r with e^{-r^2/(4 v N_max)} <= eps, i.e. the
/// reach the analysis windows keep as N sweeps up to N_max.
inline double leakage_required_radius(int v, int N_max, double eps) {
    if (v < 1 || N_max < 1) throw ConfigError("leakage_required_radius: v and N_max must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("leakage_required_radius: eps must lie in (0,1)");
    return std::sqrt(4.0 * v * static_cast<double>(N_max) * std::log(1.0 / eps));
}

}  // namespace qmwave
