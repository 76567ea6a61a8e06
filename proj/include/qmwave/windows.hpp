// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qmwave/fft.hpp"
#include "qmwave/grid.hpp"

namespace qmwave {

/// Gaussian analysis window E_{x0,N}(x) = e^{-|x-x0|^2/(4N)}; the window
/// actually used at sweep index N is E_{x0, v*N}.
struct WindowSpec {
    double center_x0 = 0.0;
    int index_N = 1;
    int dilation_v = 1;

    WindowSpec() = default;
    WindowSpec(double x0, int N, int v = 1) : center_x0(x0), index_N(N), dilation_v(v) {
        if (N < 1 || v < 1) throw ConfigError("window: index_N and dilation_v must be >= 1");
    }

    /// The effective Gaussian scale v*N.
    double effective_scale() const { return static_cast<double>(index_N) * dilation_v; }

    double value(double x) const {
        const double d = x - center_x0;
        return std::exp(-d * d / (4.0 * effective_scale()));
    }
};

inline GridSignal window_values(const WindowSpec& w, const Grid& g) {
    return GridSignal::sample(g, [&](double x) { return w.value(x); }, "window");
}

/// delta_N(t) = (N/pi)^{1/2} e^{-N t^2}, the Gaussian identity kernel.
/// Requires the grid to resolve its width 1/sqrt(N).
inline GridSignal delta_kernel(double N, const Grid& g) {
    if (!(N > 0)) throw ConfigError("delta_kernel: N must be positive");
    if (g.spacing() > 0.2 / std::sqrt(N))
        throw ResolutionError("delta_kernel: spacing " + std::to_string(g.spacing()) +
                              " does not resolve width 1/sqrt(N), need <= " + std::to_string(0.2 / std::sqrt(N)));
    const double amp = std::sqrt(N / M_PI);
    return GridSignal::sample(g, [&](double x) { return amp * std::exp(-N * x * x); }, "delta_kernel");
}

namespace detail {

constexpr int kMaxHermiteOrder = 64;

/// H_alpha(t) * e^{-damp * t^2} by the three-term recursion
/// H_{n+1} = 2 t H_n - 2 n H_{n-1} run on pre-damped values, so the
/// Gaussian factor tames the polynomial growth at every step.
inline double scaled_hermite(int alpha, double t, double damp) {
    const double seed = std::exp(-damp * t * t);
    if (alpha == 0) return seed;
    double prev = seed;
    double cur = 2.0 * t * seed;
    for (int n = 1; n < alpha; ++n) {
        const double next = 2.0 * t * cur - 2.0 * n * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace detail

/// Exact alpha-th derivative of E_{x0,vN}: with t = (x-x0)/(2 sqrt(vN)),
/// E^{(alpha)}(x) = (-1)^alpha (2 sqrt(vN))^{-alpha} H_alpha(t) e^{-t^2}.
inline GridSignal window_derivative(const WindowSpec& w, int order_alpha, const Grid& g) {
    if (order_alpha < 0) throw ConfigError("window_derivative: negative order");
    if (order_alpha > detail::kMaxHermiteOrder)
        throw ConfigError("window_derivative: order > 64 exceeds the overflow guard");
    const double scale = 2.0 * std::sqrt(w.effective_scale());
    const double amp = std::pow(-1.0 / scale, order_alpha);
    return GridSignal::sample(
        g,
        [&](double x) {
            const double t = (x - w.center_x0) / scale;
            return amp * detail::scaled_hermite(order_alpha, t, 1.0);
        },
        "window_derivative");
}

struct DerivativeBoundEntry {
    int alpha = 0;
    int N = 0;
    double fitted_c0 = 0.0;  // smallest c0 making the bound hold at this pair
};

struct DerivativeBoundReport {
    double c0 = 0.0;  // smallest c0 valid for all 1 <= alpha <= N <= N_max
    std::vector<DerivativeBoundEntry> table;
};

/// Calibrates the constant in sup_x w(x) |E_N^{(alpha)}(x)| <= (c0/sqrt(N))^alpha alpha^{alpha/2}
/// over alpha <= N <= N_max, where w = e^{|x|^2/(8N)} when weighted, else 1.
/// The paper's literal constant 1/e fails already at alpha=2, N=1 (sup = 1/2
/// against 2/e^2), so the shape is kept and the constant is fitted.
inline DerivativeBoundReport calibrate_derivative_bound(int N_max, int alpha_max, bool weighted = false) {
    if (N_max < 1 || alpha_max < 0) throw ConfigError("calibrate_derivative_bound: bad arguments");
    if (alpha_max > N_max) throw ConfigError("calibrate_derivative_bound: requires alpha_max <= N_max");
    if (alpha_max > detail::kMaxHermiteOrder)
        throw ConfigError("calibrate_derivative_bound: order > 64 exceeds the overflow guard");

    // In the rescaled variable t = x / (2 sqrt(N)) the weighted sup is
    // (2 sqrt(N))^{-alpha} sup_t |H_alpha(t)| e^{-damp t^2}, damp = 1/2
    // (weighted) or 1, so c0(alpha, N) does not depend on N; the sup is
    // still sampled per alpha on a fine t-grid wide enough to pass the
    // outermost Hermite extremum.
    const double damp = weighted ? 0.5 : 1.0;
    DerivativeBoundReport report;
    for (int alpha = 1; alpha <= alpha_max; ++alpha) {
        const double t_max = std::sqrt(2.0 * alpha + 1.0) + 6.0;
        const int samples = 400000;
        double sup = 0.0;
        for (int i = 0; i <= samples; ++i) {
            const double t = -t_max + 2.0 * t_max * i / samples;
            sup = std::max(sup, std::abs(detail::scaled_hermite(alpha, t, damp)));
        }
        // sup_x w |E^{(a)}| = (2 sqrt(N))^{-a} * sup; bound = (c0/sqrt(N))^a a^{a/2}.
        const double c0 = 0.5 * std::pow(sup / std::pow(alpha, alpha / 2.0), 1.0 / alpha);
        for (int N = alpha; N <= N_max; ++N)
            report.table.push_back({alpha, N, c0});
        report.c0 = std::max(report.c0, c0);
    }
    return report;
}

/// Forward transform of the window: F(E_{x0,N})(xi) = sqrt(4 pi N) e^{-N xi^2} e^{-i x0 xi}.
inline Complex window_transform_exact(const WindowSpec& w, double xi) {
    const double M = w.effective_scale();
    return std::sqrt(4.0 * M_PI * M) * std::exp(-M * xi * xi) * std::exp(Complex(0.0, -w.center_x0 * xi));
}

}  // namespace qmwave
