// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qmwave/grid.hpp"

namespace qmwave {

namespace detail {

// FFTW planning is not thread-safe; execution with fftw_execute_dft on
// per-call buffers is. Plans are cached per size, created once under a
// mutex with FFTW_UNALIGNED so std::vector storage is always acceptable.
class FftEngine {
  public:
    static FftEngine& instance() {
        static FftEngine engine;
        return engine;
    }

    void transform(std::vector<Complex>& inout, int sign) {
        auto* plan = acquire(inout.size(), sign);
        auto* data = reinterpret_cast<fftw_complex*>(inout.data());
        fftw_execute_dft(plan, data, data);
    }

  private:
    FftEngine() = default;

    fftw_plan acquire(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<Complex> scratch(n);
        auto* data = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), data, data, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

}  // namespace detail

/// F(f)(xi) = int f(x) e^{-i x xi} dx, approximated as
/// h * e^{-i x_min xi_k} * DFT(f)_k on the ascending frequency lattice.
/// Exact (to round-off) for band-limited grid-resolved inputs.
inline Spectrum forward_transform(const GridSignal& f) {
    const auto& g = f.grid;
    const std::size_t n = g.num_points;
    if (n < 2 || (n & (n - 1)) != 0)
        throw ConfigError("forward_transform: grid size must be a power of two");

    std::vector<Complex> work = f.values;
    detail::FftEngine::instance().transform(work, FFTW_FORWARD);

    // Reorder to ascending frequencies and apply spacing + origin phase.
    const double h = g.spacing();
    std::vector<double> freqs(n);
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = g.freq(k);
        freqs[k] = xi;
        const std::size_t src = (k + n / 2) % n;
        out[k] = h * std::exp(Complex(0.0, -g.x_min * xi)) * work[src];
    }
    return Spectrum(std::move(freqs), std::move(out), SpectrumConvention{g.x_min, n});
}

/// Inverse of forward_transform on the same lattice:
/// f_j = (1/(2 pi)) sum_k S_k e^{i x_j xi_k} dxi.
inline GridSignal inverse_transform(const Spectrum& s) {
    const std::size_t n = s.freqs.size();
    if (n < 2 || (n & (n - 1)) != 0 || s.convention.num_points != n)
        throw ConfigError("inverse_transform: spectrum lattice is not grid-compatible");
    const double dxi = s.freqs[1] - s.freqs[0];
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs((s.freqs[k] - s.freqs[k - 1]) - dxi) > 1e-9 * dxi)
            throw ConfigError("inverse_transform: non-uniform frequency lattice");
    if (std::abs(s.freqs[n / 2]) > 1e-9 * dxi)
        throw ConfigError("inverse_transform: lattice must contain xi = 0 at index n/2");

    const double h = 2.0 * M_PI / (dxi * static_cast<double>(n));
    const double x_min = s.convention.x_min;
    const Grid g(x_min, x_min + h * static_cast<double>(n), n);

    // Undo the origin phase, reorder back to DFT layout, inverse DFT.
    std::vector<Complex> work(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t dst = (k + n / 2) % n;
        work[dst] = s.values[k] * std::exp(Complex(0.0, x_min * s.freqs[k])) / h;
    }
    detail::FftEngine::instance().transform(work, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& z : work) z *= scale;
    return GridSignal(g, std::move(work));
}

}  // namespace qmwave
