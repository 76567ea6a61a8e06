// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors
//
// Test-only oracles, independent of the library's transform path:
// long-double Simpson quadrature for Fourier integrals, closed forms for
// Gaussian windows, and a brute-force composition enumerator.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qmwave/grid.hpp"

namespace oracles {

using CLD = std::complex<long double>;

/// Composite Simpson quadrature of f over [a, b] with 2*half panels.
inline CLD simpson(const std::function<CLD(long double)>& f, long double a, long double b,
                   int half = 60000) {
    const int n = 2 * half;
    const long double h = (b - a) / n;
    CLD acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + h * i) * ((i % 2) ? 4.0L : 2.0L);
    return acc * (h / 3.0L);
}

/// Fourier integral int_a^b g(x) e^{-i x xi} dx by quadrature.
inline std::complex<double> fourier_integral(const std::function<long double(long double)>& g,
                                             long double a, long double b, double xi,
                                             int half = 60000) {
    const CLD val = simpson(
        [&](long double x) {
            const long double phase = -x * static_cast<long double>(xi);
            return CLD(g(x) * std::cos(phase), g(x) * std::sin(phase));
        },
        a, b, half);
    return {static_cast<double>(val.real()), static_cast<double>(val.imag())};
}

/// Exact alpha-th derivative of e^{-x^2/(4N)} for alpha <= 2 (closed form).
inline double gauss_window_derivative(double x, double N, int alpha) {
    const double E = std::exp(-x * x / (4.0 * N));
    switch (alpha) {
        case 0: return E;
        case 1: return -x / (2.0 * N) * E;
        case 2: return (x * x / (4.0 * N * N) - 1.0 / (2.0 * N)) * E;
        default: throw std::invalid_argument("oracle covers alpha <= 2");
    }
}

/// Brute-force count of ordered compositions of p with parts in {1..m}.
inline std::uint64_t enumerate_compositions(int p, int m) {
    if (p == 0) return 1;
    std::uint64_t total = 0;
    for (int j = 1; j <= std::min(m, p); ++j) total += enumerate_compositions(p - j, m);
    return total;
}

/// Max of w(xi) over a fine sweep of [lo, hi].
inline double sweep_max(const std::function<double(double)>& w, double lo, double hi,
                        int samples = 400000) {
    double best = 0.0;
    for (int i = 0; i <= samples; ++i)
        best = std::max(best, w(lo + (hi - lo) * i / samples));
    return best;
}

}  // namespace oracles
