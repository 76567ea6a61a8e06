// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qmwave/errors.hpp"

namespace qmwave {

using Complex = std::complex<double>;

/// Japanese bracket <xi> = (1 + |xi|^2)^{1/2}.
inline double bracket_norm(double xi) { return std::sqrt(1.0 + xi * xi); }

/// Uniform sampling of a box [x_min, x_max) with a power-of-two number of
/// points. The associated frequency lattice spans [-pi/spacing, pi/spacing).
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t num_points = 0;

    Grid() = default;
    Grid(double xmin, double xmax, std::size_t n) : x_min(xmin), x_max(xmax), num_points(n) {
        if (n < 2 || (n & (n - 1)) != 0)
            throw ConfigError("grid: num_points must be a power of two >= 2, got " + std::to_string(n));
        if (!(xmax > xmin)) throw ConfigError("grid: x_max must exceed x_min");
    }

    double spacing() const { return (x_max - x_min) / static_cast<double>(num_points); }
    double point(std::size_t j) const { return x_min + spacing() * static_cast<double>(j); }
    double nyquist() const { return M_PI / spacing(); }
    double freq_spacing() const { return 2.0 * M_PI / (x_max - x_min); }

    /// k-th lattice frequency, k = 0..n-1, ascending over [-pi/h, pi/h).
    double freq(std::size_t k) const {
        const auto n = static_cast<std::ptrdiff_t>(num_points);
        return freq_spacing() * static_cast<double>(static_cast<std::ptrdiff_t>(k) - n / 2);
    }

    /// Index of the sample nearest to x.
    std::size_t nearest_index(double x) const {
        auto j = static_cast<std::ptrdiff_t>(std::llround((x - x_min) / spacing()));
        if (j < 0) j = 0;
        if (j >= static_cast<std::ptrdiff_t>(num_points)) j = static_cast<std::ptrdiff_t>(num_points) - 1;
        return static_cast<std::size_t>(j);
    }

    bool contains(double x) const { return x >= x_min && x <= x_max; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.x_min == b.x_min && a.x_max == b.x_max && a.num_points == b.num_points;
    }
};

/// Complex samples on a Grid. All values must stay finite.
struct GridSignal {
    Grid grid;
    std::vector<Complex> values;
    std::string label;

    GridSignal() = default;
    GridSignal(Grid g, std::vector<Complex> v, std::string name = {})
        : grid(g), values(std::move(v)), label(std::move(name)) {
        if (values.size() != grid.num_points)
            throw ConfigError("signal '" + label + "': values length does not match grid");
        for (const auto& z : values)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw ConfigError("signal '" + label + "': non-finite sample");
    }

    static GridSignal zero(const Grid& g, std::string name = {}) {
        return GridSignal(g, std::vector<Complex>(g.num_points, Complex{0.0, 0.0}), std::move(name));
    }

    /// Samples f on the grid.
    template <class F>
    static GridSignal sample(const Grid& g, F&& f, std::string name = {}) {
        std::vector<Complex> v(g.num_points);
        for (std::size_t j = 0; j < g.num_points; ++j) v[j] = Complex(f(g.point(j)));
        return GridSignal(g, std::move(v), std::move(name));
    }

    /// Discrete L2 norm: (h * sum |f_j|^2)^{1/2}.
    double l2_norm() const {
        double acc = 0.0;
        for (const auto& z : values) acc += std::norm(z);
        return std::sqrt(grid.spacing() * acc);
    }

    /// Discrete L1 norm: h * sum |f_j|.
    double l1_norm() const {
        double acc = 0.0;
        for (const auto& z : values) acc += std::abs(z);
        return grid.spacing() * acc;
    }

    double sup_norm() const {
        double m = 0.0;
        for (const auto& z : values) m = std::max(m, std::abs(z));
        return m;
    }

    /// Discrete integral h * sum f_j.
    Complex integral() const {
        Complex acc{0.0, 0.0};
        for (const auto& z : values) acc += z;
        return grid.spacing() * acc;
    }
};

/// Transform convention carried by every Spectrum: forward kernel
/// e^{-i<t,xi>}, no prefactor, trapezoidal scaling by the grid spacing.
/// x_min/num_points identify the source lattice so the inverse is exact.
struct SpectrumConvention {
    double x_min = 0.0;
    std::size_t num_points = 0;
    static constexpr const char* kernel = "exp(-i*x*xi)";
};

/// Sampled Fourier transform on the ascending frequency lattice.
struct Spectrum {
    std::vector<double> freqs;
    std::vector<Complex> values;
    SpectrumConvention convention;

    Spectrum() = default;
    Spectrum(std::vector<double> f, std::vector<Complex> v, SpectrumConvention c = {})
        : freqs(std::move(f)), values(std::move(v)), convention(c) {
        if (freqs.size() != values.size()) throw ConfigError("spectrum: freqs/values length mismatch");
        for (std::size_t k = 1; k < freqs.size(); ++k)
            if (!(freqs[k] > freqs[k - 1])) throw ConfigError("spectrum: freqs must be strictly increasing");
    }

    double sup_norm() const {
        double m = 0.0;
        for (const auto& z : values) m = std::max(m, std::abs(z));
        return m;
    }

    double freq_spacing() const {
        return freqs.size() > 1 ? freqs[1] - freqs[0] : 0.0;
    }

    /// Discrete L1 norm: dxi * sum |S_k|.
    double l1_norm() const {
        double acc = 0.0;
        for (const auto& z : values) acc += std::abs(z);
        return freq_spacing() * acc;
    }

    double l2_norm() const {
        double acc = 0.0;
        for (const auto& z : values) acc += std::norm(z);
        return std::sqrt(freq_spacing() * acc);
    }
};

}  // namespace qmwave
