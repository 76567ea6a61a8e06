// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "qmwave/classifier.hpp"
#include "qmwave/corpus.hpp"
#include "qmwave/localization.hpp"

using namespace qmwave;

TEST_CASE("restriction records the ball and keeps samples", "[localization]") {
    const Grid g(-16.0, 16.0, 2048);

    SECTION("step restricted right of the jump is constant one") {
        const GridSignal h = GridSignal::sample(g, [](double x) { return x >= 0 ? 1.0 : 0.0; });
        const BallRestriction res = restrict_ball(h, 2.0, 1.0);
        for (std::size_t j = 0; j < g.num_points; ++j)
            if (res.inside(g.point(j))) CHECK(h.values[j] == Complex{1.0, 0.0});
    }

    SECTION("impulse away from the ball leaves a zero restriction") {
        GridSignal imp = GridSignal::zero(g);
        imp.values[g.nearest_index(0.0)] = Complex{1.0 / g.spacing(), 0.0};
        const BallRestriction res = restrict_ball(imp, 2.0, 1.0);
        for (std::size_t j = 0; j < g.num_points; ++j)
            if (res.inside(g.point(j))) CHECK(imp.values[j] == Complex{0.0, 0.0});
    }

    SECTION("a ball reaching outside the box is a geometry error") {
        const GridSignal f = GridSignal::zero(g);
        CHECK_THROWS_AS(restrict_ball(f, 15.5, 1.0), GeometryError);
        CHECK_THROWS_AS(restrict_ball(f, 0.0, 17.0), GeometryError);
        CHECK_THROWS_AS(restrict_ball(f, 0.0, -1.0), GeometryError);
    }
}

TEST_CASE("extension candidates", "[localization]") {
    const Grid g(-16.0, 16.0, 2048);

    SECTION("zero restriction extends to the zero signal") {
        GridSignal imp = GridSignal::zero(g);
        imp.values[g.nearest_index(0.0)] = Complex{1.0 / g.spacing(), 0.0};
        const ExtensionCandidate ext = extend(restrict_ball(imp, 2.0, 1.0), ExtensionKind::zero_fill, 1, 16);
        CHECK(ext.signal.sup_norm() == 0.0);
    }

    SECTION("constant continuation of the step is globally one") {
        const GridSignal h = GridSignal::sample(g, [](double x) { return x >= 0 ? 1.0 : 0.0; });
        const ExtensionCandidate ext =
            extend(restrict_ball(h, 2.0, 1.0), ExtensionKind::constant_fill, 1, 16);
        for (std::size_t j = 0; j < g.num_points; j += 7)
            CHECK(std::abs(ext.signal.values[j] - Complex{1.0, 0.0}) < 1e-14);
    }

    SECTION("global kind returns the source unchanged") {
        const GridSignal f = GridSignal::sample(g, [](double x) { return std::exp(-x * x); });
        const ExtensionCandidate ext = extend(restrict_ball(f, 0.0, 2.0), ExtensionKind::global, 1, 16);
        for (std::size_t j = 0; j < g.num_points; j += 11)
            CHECK(ext.signal.values[j] == f.values[j]);
    }

    SECTION("leak budget follows the closed form") {
        const Grid wide(-64.0, 64.0, 4096);
        const GridSignal f = GridSignal::zero(wide);
        const ExtensionCandidate ext =
            extend(restrict_ball(f, 0.0, 42.0), ExtensionKind::zero_fill, 1, 16);
        CHECK(ext.leak_budget == Catch::Approx(std::exp(-42.0 * 42.0 / 64.0)).epsilon(1e-12));
        CHECK(ext.leak_budget == Catch::Approx(1.06e-12).epsilon(0.05));
    }
}

TEST_CASE("required radius for a leakage budget", "[localization]") {
    CHECK(leakage_required_radius(1, 16, std::exp(-1.0)) == Catch::Approx(8.0).epsilon(1e-12));
    CHECK(leakage_required_radius(1, 16, 1e-12) ==
          Catch::Approx(std::sqrt(64.0 * std::log(1e12))).epsilon(1e-12));
    CHECK(leakage_required_radius(1, 16, 1e-12) == Catch::Approx(42.05).margin(0.05));
    CHECK(leakage_required_radius(4, 16, 1e-12) ==
          Catch::Approx(2.0 * leakage_required_radius(1, 16, 1e-12)).epsilon(1e-12));
    CHECK_THROWS_AS(leakage_required_radius(1, 16, 1.5), ConfigError);
}

TEST_CASE("every extension equals the source on the ball", "[localization]") {
    const Grid g(-16.0, 16.0, 2048);
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> vals(g.num_points);
    for (auto& v : vals) v = Complex(gauss(rng), gauss(rng));
    const GridSignal f(g, std::move(vals));
    const BallRestriction res = restrict_ball(f, 1.0, 3.0);
    for (ExtensionKind kind :
         {ExtensionKind::global, ExtensionKind::zero_fill, ExtensionKind::constant_fill}) {
        const ExtensionCandidate ext = extend(res, kind, 1, 8);
        for (std::size_t j = 0; j < g.num_points; ++j)
            if (res.inside(g.point(j)))
                CHECK(ext.signal.values[j] == f.values[j]);  // sample-exact
    }
}

TEST_CASE("leakage soundness bounds the spectral gap between extensions", "[localization]") {
    const Grid g = default_corpus_grid();
    const GridSignal f = GridSignal::sample(g, [](double x) { return std::exp(-x * x / 9.0); });
    const int N_max = 8;
    const BallRestriction res = restrict_ball(f, 0.0, 6.0);
    const ExtensionCandidate global = extend(res, ExtensionKind::global, 1, N_max);
    const ExtensionCandidate zeroed = extend(res, ExtensionKind::zero_fill, 1, N_max);

    double diff_outside = 0.0;
    for (std::size_t j = 0; j < g.num_points; ++j)
        if (!res.inside(g.point(j)))
            diff_outside += std::abs(global.signal.values[j] - zeroed.signal.values[j]);
    diff_outside *= g.spacing();

    for (int N : {2, 4, 8}) {
        const Spectrum s1 = windowed_spectrum(global, WindowSpec(0.0, N, 1));
        const Spectrum s2 = windowed_spectrum(zeroed, WindowSpec(0.0, N, 1));
        double gap = 0.0;
        for (std::size_t k = 0; k < s1.freqs.size(); ++k)
            gap = std::max(gap, std::abs(s1.values[k] - s2.values[k]));
        CHECK(gap <= global.leak_budget * diff_outside * (1.0 + 1e-12));
    }
}

TEST_CASE("zero restriction classifies regular in every direction", "[localization]") {
    const Grid g = default_corpus_grid();
    GridSignal imp = GridSignal::zero(g);
    imp.values[g.nearest_index(0.0)] = Complex{1.0 / g.spacing(), 0.0};

    ClassifyParams params;
    params.C_cap = 10.0;
    const ExtensionCandidate ext = extend(restrict_ball(imp, 2.0, 1.0), ExtensionKind::zero_fill, 1,
                                          params.N_sweep.back());
    const double ximax = 0.9 * g.nyquist();
    for (double s : {0.5, 0.75, 0.9}) {
        params.s = s;
        for (double sign : {+1.0, -1.0}) {
            const DecayReport rep =
                classify({ext}, 2.0, Cone::half_line(sign, 1.0, ximax), params);
            CHECK(rep.decision == Decision::regular);
            CHECK(rep.sweep.back().second == 0.0);
        }
    }
}
