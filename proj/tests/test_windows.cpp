// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qmwave/windows.hpp"

using namespace qmwave;

TEST_CASE("window values", "[windows]") {
    const Grid g(-16.0, 16.0, 1024);
    const GridSignal w = window_values(WindowSpec(0.0, 1, 1), g);
    CHECK(std::abs(w.values[g.nearest_index(0.0)]) == Catch::Approx(1.0).margin(1e-12));
    CHECK(std::abs(w.values[g.nearest_index(2.0)]) == Catch::Approx(std::exp(-1.0)).epsilon(1e-9));
    const GridSignal w2 = window_values(WindowSpec(3.0, 4, 1), g);
    CHECK(std::abs(w2.values[g.nearest_index(3.0)]) == Catch::Approx(1.0).margin(1e-12));
    for (const auto& v : w.values) {
        CHECK(v.real() > 0.0);
        CHECK(v.real() <= 1.0);
    }
}

TEST_CASE("delta kernel normalization and peak", "[windows]") {
    const Grid g(-16.0, 16.0, 2048);
    const GridSignal d4 = delta_kernel(4.0, g);
    CHECK(std::abs(d4.integral() - Complex{1.0, 0.0}) < 1e-8);
    const GridSignal dpi = delta_kernel(M_PI, g);
    CHECK(std::abs(dpi.values[g.nearest_index(0.0)]) == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("delta kernel requires a resolving grid", "[windows]") {
    const Grid coarse(-16.0, 16.0, 64);  // spacing 0.5
    CHECK_THROWS_AS(delta_kernel(64.0, coarse), ResolutionError);
}

TEST_CASE("delta kernel transforms to the window", "[windows]") {
    // F(delta_N(.-x0)) = e^{-i x0 xi} e^{-xi^2/(4N)}; the modulus is E_N.
    const Grid g(-32.0, 32.0, 4096);
    for (double x0 : {0.0, 3.0}) {
        for (double N : {1.0, 4.0, 16.0, 64.0}) {
            GridSignal d = GridSignal::sample(g, [&](double x) {
                return std::sqrt(N / M_PI) * std::exp(-N * (x - x0) * (x - x0));
            });
            const Spectrum S = forward_transform(d);
            double dev = 0.0;
            for (std::size_t k = 0; k < S.freqs.size(); ++k) {
                const double xi = S.freqs[k];
                const Complex expected =
                    std::exp(Complex(0.0, -x0 * xi)) * std::exp(-xi * xi / (4.0 * N));
                dev = std::max(dev, std::abs(S.values[k] - expected));
            }
            CHECK(dev < 1e-8);  // sup of the target is 1
        }
    }
}

TEST_CASE("window derivative small orders match the symbolic oracle", "[windows]") {
    const Grid g(-16.0, 16.0, 1024);
    const WindowSpec w(0.0, 1, 1);

    SECTION("alpha = 0 is the window itself") {
        const GridSignal d0 = window_derivative(w, 0, g);
        const GridSignal vals = window_values(w, g);
        for (std::size_t j = 0; j < g.num_points; j += 17)
            CHECK(std::abs(d0.values[j] - vals.values[j]) < 1e-14);
    }

    SECTION("alpha = 1, 2 against closed forms") {
        const GridSignal d1 = window_derivative(w, 1, g);
        CHECK(d1.values[g.nearest_index(1.0)].real() ==
              Catch::Approx(-0.5 * std::exp(-0.25)).epsilon(1e-9));
        const GridSignal d2 = window_derivative(w, 2, g);
        CHECK(d2.values[g.nearest_index(0.0)].real() == Catch::Approx(-0.5).epsilon(1e-9));
        for (std::size_t j = 0; j < g.num_points; j += 13) {
            const double x = g.point(j);
            CHECK(std::abs(d1.values[j].real() - oracles::gauss_window_derivative(x, 1.0, 1)) < 1e-12);
            CHECK(std::abs(d2.values[j].real() - oracles::gauss_window_derivative(x, 1.0, 2)) < 1e-12);
        }
    }

    SECTION("dilation enters through v*N") {
        const GridSignal d1 = window_derivative(WindowSpec(0.0, 2, 2), 1, g);
        CHECK(d1.values[g.nearest_index(1.0)].real() ==
              Catch::Approx(oracles::gauss_window_derivative(1.0, 4.0, 1)).epsilon(1e-9));
    }

    SECTION("orders beyond the overflow guard are rejected") {
        CHECK_THROWS_AS(window_derivative(w, 65, g), ConfigError);
        CHECK_NOTHROW(window_derivative(w, 64, g));
    }
}

TEST_CASE("derivative bound calibration", "[windows]") {
    SECTION("the literal constant 1/e fails at alpha=2, N=1") {
        // |E_1''(0)| = 1/2 exactly, while (1/e)^2 * 2^(2/2) = 2/e^2.
        const double exact = 0.5;
        const double paper_bound = std::pow(1.0 / M_E, 2) * 2.0;
        CHECK(exact > paper_bound);
        CHECK(paper_bound == Catch::Approx(2.0 / (M_E * M_E)).epsilon(1e-12));
    }

    SECTION("fitted constants (values frozen from the calibration run)") {
        const DerivativeBoundReport unweighted = calibrate_derivative_bound(16, 16, false);
        CHECK(unweighted.c0 == Catch::Approx(0.5).margin(2e-4));  // attained at alpha = 2
        CHECK(unweighted.c0 > 1.0 / M_E);

        const DerivativeBoundReport weighted = calibrate_derivative_bound(16, 16, true);
        CHECK(weighted.c0 == Catch::Approx(std::exp(-0.5)).margin(2e-4));  // attained at alpha = 1
        CHECK(weighted.c0 <= 1.0);
    }

    SECTION("alpha = 0 imposes nothing") {
        const DerivativeBoundReport r = calibrate_derivative_bound(4, 0, false);
        CHECK(r.c0 == 0.0);
        CHECK(r.table.empty());
    }

    SECTION("alpha_max must not exceed N_max") {
        CHECK_THROWS_AS(calibrate_derivative_bound(4, 8, false), ConfigError);
    }
}

TEST_CASE("peak-decay form holds with the calibrated constant", "[windows]") {
    // sup_x e^{x^2/(8N)} |E_N^(a)(x)| <= (c0/sqrt(N))^a a^{a/2}, a <= N <= 16.
    const double c0 = calibrate_derivative_bound(16, 16, true).c0;
    const Grid g(-40.0, 40.0, 8192);
    for (int N : {1, 2, 4, 8, 16}) {
        for (int a = 1; a <= N; ++a) {
            const GridSignal d = window_derivative(WindowSpec(0.0, N, 1), a, g);
            double sup = 0.0;
            for (std::size_t j = 0; j < g.num_points; ++j) {
                const double x = g.point(j);
                sup = std::max(sup, std::exp(x * x / (8.0 * N)) * std::abs(d.values[j]));
            }
            const double bound = std::pow(c0 / std::sqrt(N), a) * std::pow(a, a / 2.0);
            CHECK(sup <= bound * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("window Fourier pair", "[windows]") {
    const Grid g(-48.0, 48.0, 8192);
    for (double x0 : {0.0, 3.0}) {
        for (int N : {1, 4, 16}) {
            const WindowSpec w(x0, N, 1);
            const Spectrum S = forward_transform(window_values(w, g));
            double dev = 0.0, sup = 0.0;
            for (std::size_t k = 0; k < S.freqs.size(); ++k) {
                const Complex e = window_transform_exact(w, S.freqs[k]);
                dev = std::max(dev, std::abs(S.values[k] - e));
                sup = std::max(sup, std::abs(e));
            }
            CHECK(dev / sup < 1e-8);
        }
    }
}

TEST_CASE("delta kernel weak convergence is first order in 1/N", "[windows]") {
    const Grid g(-16.0, 16.0, 4096);
    const auto test_fn = [](double x) { return std::cos(x) * std::exp(-x * x / 50.0); };
    auto error_at = [&](double N) {
        const GridSignal d = delta_kernel(N, g);
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < g.num_points; ++j)
            acc += d.values[j] * test_fn(g.point(j));
        return std::abs(acc * g.spacing() - Complex{test_fn(0.0), 0.0});
    };
    const double e4 = error_at(4.0), e16 = error_at(16.0), e64 = error_at(64.0);
    CHECK(e16 < e4);
    CHECK(e64 < e16);
    // O(1/N): quartering N multiplies the error by ~4.
    CHECK(e16 == Catch::Approx(e4 / 4.0).epsilon(0.25));
    CHECK(e64 == Catch::Approx(e16 / 4.0).epsilon(0.25));
}
