// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qmwave/fft.hpp"
#include "qmwave/grid.hpp"

namespace qmwave {

/// Ground truth for one corpus signal at its standard probes.
struct CorpusGroundTruth {
    std::vector<double> probe_centers;
    std::set<std::pair<double, int>> singular;  // (x0, direction sign)
    bool expect_s_star_half = false;            // all-regular entries with known s* = 1/2
};

struct CorpusEntry {
    std::string name;
    std::string description;
    std::string provenance;  // which oracle grounds the expected verdicts
    std::function<GridSignal(const Grid&)> builder;
    CorpusGroundTruth truth;
};

/// Box and resolution every corpus verdict was calibrated on: Nyquist ~402,
/// probes at {-2, 0, 2} keep 6*sqrt(vN) <= 48 of window margin for vN <= 64.
inline Grid default_corpus_grid() { return Grid(-64.0, 64.0, 16384); }

namespace corpus_detail {

// Heaviside step tamed at the box edges: taper starts at |x| = 32, well
// beyond the probed region, and its reach is asserted against the leakage
// margin by the corpus tests.
constexpr double kStepTaperStart = 32.0;
constexpr double kStepTaperWidth = 8.0;

inline double edge_taper(double x) {
    const double excess = std::max(0.0, std::abs(x) - kStepTaperStart);
    return std::exp(-(excess / kStepTaperWidth) * (excess / kStepTaperWidth));
}

// One-sided spectrum entry: flat negative side out to |xi| = 250, Gaussian
// rolloff of width 25 beyond, so the spectrum is smooth at the Nyquist wrap
// while the analysis cones still see the non-decaying side.
constexpr double kOneSidedEnvelopeFlat = 250.0;
constexpr double kOneSidedEnvelopeWidth = 25.0;

inline double one_sided_envelope(double xi) {
    const double excess = std::max(0.0, std::abs(xi) - kOneSidedEnvelopeFlat);
    return std::exp(-(excess / kOneSidedEnvelopeWidth) * (excess / kOneSidedEnvelopeWidth));
}

// Chirp damping: e^{i x^2} e^{-(x/4)^2}; the Gaussian factor keeps the
// fitted constants N-uniform (it is the certifying extension itself).
constexpr double kChirpDampWidth = 4.0;

inline GridSignal build_gaussian(const Grid& g) {
    return GridSignal::sample(g, [](double x) { return std::exp(-x * x); }, "gaussian");
}

inline GridSignal build_heaviside(const Grid& g) {
    return GridSignal::sample(
        g, [](double x) { return x >= 0.0 ? edge_taper(x) : 0.0; }, "heaviside");
}

inline GridSignal build_impulse(const Grid& g) {
    std::vector<Complex> v(g.num_points, Complex{0.0, 0.0});
    v[g.nearest_index(0.0)] = Complex{1.0 / g.spacing(), 0.0};  // discrete integral 1
    return GridSignal(g, std::move(v), "impulse");
}

inline GridSignal build_one_sided(const Grid& g) {
    std::vector<double> freqs(g.num_points);
    std::vector<Complex> vals(g.num_points);
    for (std::size_t k = 0; k < g.num_points; ++k) {
        const double xi = g.freq(k);
        freqs[k] = xi;
        const double base = xi >= 0.0 ? std::exp(-xi * xi) : 1.0;
        vals[k] = Complex{base * one_sided_envelope(xi), 0.0};
    }
    GridSignal f = inverse_transform(Spectrum(std::move(freqs), std::move(vals),
                                              SpectrumConvention{g.x_min, g.num_points}));
    f.label = "one_sided_spectrum";
    return f;
}

inline GridSignal build_chirp(const Grid& g) {
    return GridSignal::sample(
        g,
        [](double x) {
            return std::exp(Complex(0.0, x * x)) *
                   std::exp(-(x / kChirpDampWidth) * (x / kChirpDampWidth));
        },
        "chirp");
}

}  // namespace corpus_detail

inline const std::vector<CorpusEntry>& corpus_entries() {
    static const std::vector<CorpusEntry> entries = {
        {"gaussian", "e^{-x^2}, regular everywhere with s* at the lower endpoint",
         "closed-form Gaussian windowed spectra",
         corpus_detail::build_gaussian,
         {{-2.0, 0.0, 2.0}, {}, true}},
        {"heaviside", "unit step, edge-tapered beyond |x| > 32; jump at 0",
         "error-function closed form for the windowed step spectrum",
         corpus_detail::build_heaviside,
         {{-2.0, 0.0, 2.0}, {{0.0, +1}, {0.0, -1}}, false}},
        {"impulse", "discrete unit-mass impulse at 0",
         "windowed impulse spectrum is constant at the window's center value",
         corpus_detail::build_impulse,
         {{-2.0, 0.0, 2.0}, {{0.0, +1}, {0.0, -1}}, false}},
        {"one_sided_spectrum",
         "spectrum e^{-xi^2} for xi >= 0 and 1 for xi < 0 (enveloped in the tail); "
         "singular at 0 only from the negative side",
         "spectrum built by construction; verdict asymmetry follows from the stated transform",
         corpus_detail::build_one_sided,
         {{0.0}, {{0.0, -1}}, false}},
        {"chirp", "e^{i x^2} damped by e^{-(x/4)^2}; entire, regular everywhere",
         "completed-square Gaussian-chirp windowed spectra",
         corpus_detail::build_chirp,
         {{-2.0, 0.0, 2.0}, {}, false}},
    };
    return entries;
}

inline std::vector<std::string> corpus_list() {
    std::vector<std::string> names;
    for (const auto& e : corpus_entries()) names.push_back(e.name);
    return names;
}

inline const CorpusEntry& corpus_entry(const std::string& name) {
    for (const auto& e : corpus_entries())
        if (e.name == name) return e;
    throw ConfigError("unknown corpus entry '" + name + "'");
}

inline GridSignal corpus_build(const std::string& name, const Grid& g = default_corpus_grid()) {
    return corpus_entry(name).builder(g);
}

}  // namespace qmwave
