// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <stdexcept>
#include <string>

namespace qmwave {

/// Invalid configuration: bad grid sizes, mismatched lattices, violated
/// leakage geometry, malformed run configs. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Geometry violations: ball not inside the grid box, empty cones.
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// Grid too coarse for the requested object (kernels, spectral tails).
struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// Degenerate fits (too few usable frequencies).
struct FitError : std::runtime_error {
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// Principal symbol vanishes in the requested direction.
struct CharacteristicError : std::runtime_error {
    explicit CharacteristicError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qmwave
