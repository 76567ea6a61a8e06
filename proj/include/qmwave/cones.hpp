// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qmwave/errors.hpp"

namespace qmwave {

/// Frequency cone: a direction with an angular half-width plus radial
/// cutoffs. d=1: direction is a sign and half_angle is 0; the all-direction
/// hypothesis (xi ranging over all of R^d) is expressed by half_angle = pi.
/// d=2 hook: direction is an angle, membership is an angular sector.
struct Cone {
    int dim = 1;
    double direction = +1.0;  // d=1: sign; d=2: angle of the axis in radians
    double half_angle = 0.0;
    double xi_min = 1.0;
    double xi_max = 0.0;

    Cone() = default;
    Cone(int d, double dir, double half, double ximin, double ximax)
        : dim(d), direction(dir), half_angle(half), xi_min(ximin), xi_max(ximax) {
        if (d != 1 && d != 2) throw ConfigError("cone: only d=1 and d=2 are supported");
        if (!(xi_min >= 1.0)) throw ConfigError("cone: xi_min must be >= 1");
        if (!(xi_max > xi_min)) throw ConfigError("cone: xi_max must exceed xi_min");
    }

    static Cone half_line(double sign, double ximin, double ximax) {
        return Cone(1, sign >= 0 ? +1.0 : -1.0, 0.0, ximin, ximax);
    }

    /// Both signs: the "xi in R^d" hypothesis of the derivative-bound test.
    static Cone all_directions(double ximin, double ximax) {
        return Cone(1, +1.0, M_PI, ximin, ximax);
    }

    static Cone sector(double axis_angle, double half, double ximin, double ximax) {
        return Cone(2, axis_angle, half, ximin, ximax);
    }

    bool contains(double xi) const {
        if (dim != 1) throw ConfigError("cone: scalar membership needs d=1");
        const double a = std::abs(xi);
        if (a < xi_min || a > xi_max) return false;
        if (half_angle >= M_PI - 1e-12) return true;
        return (xi > 0) == (direction > 0);
    }

    bool contains(double xi1, double xi2) const {
        if (dim != 2) throw ConfigError("cone: planar membership needs d=2");
        const double a = std::hypot(xi1, xi2);
        if (a < xi_min || a > xi_max) return false;
        const double angle = std::atan2(xi2, xi1);
        double diff = std::remainder(angle - direction, 2.0 * M_PI);
        return std::abs(diff) <= half_angle + 1e-15;
    }

    std::string describe() const {
        if (dim == 1)
            return half_angle >= M_PI - 1e-12 ? "both" : (direction > 0 ? "+1" : "-1");
        return "sector(" + std::to_string(direction) + ", " + std::to_string(half_angle) + ")";
    }
};

/// d=1 covers are exactly the two half-lines; the d=2 hook uses 16 cones of
/// half-angle pi/8 whose axes step by pi/8, so neighbours overlap by half.
inline std::vector<Cone> make_direction_cover(int dim, double ximin, double ximax) {
    std::vector<Cone> cones;
    if (dim == 1) {
        cones.push_back(Cone::half_line(+1.0, ximin, ximax));
        cones.push_back(Cone::half_line(-1.0, ximin, ximax));
    } else if (dim == 2) {
        for (int k = 0; k < 16; ++k)
            cones.push_back(Cone::sector(2.0 * M_PI * k / 16.0, M_PI / 8.0, ximin, ximax));
    } else {
        throw ConfigError("make_direction_cover: only d=1 and d=2 are supported");
    }
    return cones;
}

}  // namespace qmwave
