// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qmwave/numerics.hpp"
#include "qmwave/operators.hpp"

namespace qmwave {

using Uint128 = unsigned __int128;

namespace detail {

inline Uint128 binomial_u128(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) return 0;  // out-of-range terms drop from the bound
    k = std::min(k, n - k);
    Uint128 res = 1;
    for (long long i = 1; i <= k; ++i) {
        const Uint128 factor = static_cast<Uint128>(n - k + i);
        if (res > (~Uint128{0}) / factor) throw std::overflow_error("binomial_u128: overflow");
        res = res * factor / static_cast<Uint128>(i);
    }
    return res;
}

inline double u128_to_double(Uint128 v) {
    double out = 0.0;
    double scale = 1.0;
    while (v > 0) {
        out += static_cast<double>(static_cast<std::uint64_t>(v & 0xffffffffULL)) * scale;
        v >>= 32;
        scale *= 4294967296.0;
    }
    return out;
}

}  // namespace detail

/// Number of ordered compositions p = j_1 + ... + j_k with parts in {1..m},
/// by dynamic programming, exact in 64 bits up to p = 60.
struct CompositionCount {
    std::uint64_t sigma_p = 0;
    Uint128 paper_bound_exact = 0;  // C(2p-1, p) - C(2p-2m-3, p-m-1)
    double paper_bound = 0.0;
    double ratio_4p = 0.0;  // sigma_p / 4^p
};

inline std::vector<std::uint64_t> composition_table(int p_max, int m) {
    if (p_max < 0 || m < 1) throw ConfigError("composition_table: need p >= 0, m >= 1");
    if (p_max > 60)
        throw std::overflow_error("composition_count: p > 60 requires a big-integer fallback");
    std::vector<std::uint64_t> comp(static_cast<std::size_t>(p_max) + 1, 0);
    comp[0] = 1;
    for (int p = 1; p <= p_max; ++p)
        for (int j = 1; j <= std::min(m, p); ++j) {
            const std::uint64_t add = comp[static_cast<std::size_t>(p - j)];
            if (comp[static_cast<std::size_t>(p)] > UINT64_MAX - add)
                throw std::overflow_error("composition_count: 64-bit overflow, big-integer fallback required");
            comp[static_cast<std::size_t>(p)] += add;
        }
    return comp;
}

inline CompositionCount composition_count(int p, int m) {
    if (p < 1 || m < 1) throw ConfigError("composition_count: need p >= 1, m >= 1");
    CompositionCount out;
    out.sigma_p = composition_table(p, m)[static_cast<std::size_t>(p)];
    out.paper_bound_exact = detail::binomial_u128(2LL * p - 1, p) -
                            detail::binomial_u128(2LL * p - 2 * m - 3, p - m - 1);
    out.paper_bound = detail::u128_to_double(out.paper_bound_exact);
    out.ratio_4p = static_cast<double>(out.sigma_p) / std::pow(4.0, p);
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial-times-Gaussian ring: q(x) e^{-x^2/(4M)}. The R_j act exactly in
// this ring, so w_N and e_N carry no grid error of their own.
// ---------------------------------------------------------------------------

struct GaussPoly {
    double M = 1.0;                // Gaussian scale: e^{-x^2/(4M)}
    std::vector<Complex> coeffs;   // q(x) = sum coeffs[k] x^k

    static GaussPoly unit(double M) { return GaussPoly{M, {Complex{1.0, 0.0}}}; }

    Complex eval(double x) const {
        Complex q{0.0, 0.0};
        for (std::size_t k = coeffs.size(); k-- > 0;) q = q * x + coeffs[k];
        return q * std::exp(-x * x / (4.0 * M));
    }

    GaussPoly& add(const GaussPoly& other, Complex scale = Complex{1.0, 0.0}) {
        if (coeffs.size() < other.coeffs.size()) coeffs.resize(other.coeffs.size());
        for (std::size_t k = 0; k < other.coeffs.size(); ++k) coeffs[k] += scale * other.coeffs[k];
        return *this;
    }

    /// D(q E) = -i (q' - x q / (2M)) E.
    GaussPoly apply_D() const {
        GaussPoly out{M, std::vector<Complex>(coeffs.size() + 1, Complex{0.0, 0.0})};
        for (std::size_t k = 1; k < coeffs.size(); ++k)
            out.coeffs[k - 1] += Complex(0.0, -1.0) * (static_cast<double>(k) * coeffs[k]);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            out.coeffs[k + 1] += Complex(0.0, 1.0) * coeffs[k] / (2.0 * M);
        return out;
    }

    GaussPoly apply_D(int times) const {
        GaussPoly out = *this;
        for (int i = 0; i < times; ++i) out = out.apply_D();
        return out;
    }

    bool empty() const {
        for (const auto& c : coeffs)
            if (std::abs(c) > 0.0) return false;
        return true;
    }
};

/// Truncated Neumann parametrix of ^tP at one frequency: w_N and the
/// boundary remainder e_N, plus term counts. The ring coefficients of each
/// xi-power are kept so frequency sweeps reuse the assembly.
struct ParametrixState {
    double scale_r = 2.0;
    int N = 2;
    double xi = 4.0;
    GridSignal w_N;
    GridSignal e_N;
    long long term_count_S = 0;
    long long remainder_count_s = 0;
    std::map<int, GaussPoly> w_parts;  // xi^{-p} -> ring element
    std::map<int, GaussPoly> e_parts;
    Complex Pm_xi{0.0, 0.0};
};

struct ParametrixOptions {
    int v = 1;
    bool enforce_scale_gate = true;  // the deliberate negative test disables this
};

namespace detail {

/// Coefficients of R_p = xi^{-p} sum_i rho[p][i] D^i from the expansion
/// 1 - R = P(xi - D) / P_m(xi): rho[p][i] = -(-1)^i C(m+i-p, i) a_{m+i-p} / a_m.
inline std::vector<std::vector<Complex>> symbol_quotient_coefficients(const OperatorSpec& P) {
    const int m = P.order_m;
    const Complex am = P.coefficient(m);
    std::vector<std::vector<Complex>> rho(static_cast<std::size_t>(m) + 1);
    for (int p = 1; p <= m; ++p) {
        rho[static_cast<std::size_t>(p)].assign(static_cast<std::size_t>(p) + 1, Complex{0.0, 0.0});
        for (int i = 0; i <= p; ++i) {
            const int k = m + i - p;  // source order of the coefficient
            if (k < 0 || k > m) continue;
            const double binom = u128_to_double(binomial_u128(k, i));
            const double sign = (i % 2 == 0) ? 1.0 : -1.0;
            rho[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] =
                -sign * binom * P.coefficient(k) / am;
        }
    }
    return rho;
}

struct AssemblyCounters {
    long long w_terms = 0;
    long long e_terms = 0;
};

/// Depth-first walk over ordered compositions: a node is an admissible tail
/// (total < K); prepending j either stays admissible (w_N) or crosses the
/// threshold (e_N). Ring elements accumulate by total xi-power.
inline void assemble(const std::vector<std::vector<Complex>>& rho, int m, int K,
                     const GaussPoly& node, int total, std::map<int, GaussPoly>& w_parts,
                     std::map<int, GaussPoly>& e_parts, AssemblyCounters& counters) {
    ++counters.w_terms;
    auto [it, fresh] = w_parts.try_emplace(total, GaussPoly{node.M, {}});
    it->second.add(node);
    for (int j = 1; j <= m; ++j) {
        GaussPoly child{node.M, {}};
        for (int i = 0; i <= j; ++i) {
            const Complex c = rho[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (std::abs(c) == 0.0) continue;
            child.add(node.apply_D(i), c);
        }
        if (total + j < K) {
            assemble(rho, m, K, child, total + j, w_parts, e_parts, counters);
        } else {
            ++counters.e_terms;
            auto [eit, efresh] = e_parts.try_emplace(total + j, GaussPoly{node.M, {}});
            eit->second.add(child);
        }
    }
}

}  // namespace detail

/// Builds w_N = sum_{j_1+...+j_k < 2N-m} R_{j_1}...R_{j_k} E_{r^2 N} and the
/// crossing remainder e_N (Neumann series truncation for ^tP).
inline ParametrixState build_parametrix(const OperatorSpec& P, int N, double xi, double scale_r,
                                        const Grid& grid, const ParametrixOptions& opts = {}) {
    if (P.dim != 1) throw ConfigError("build_parametrix: d=1 only");
    if (P.order_m > 3) throw ConfigError("build_parametrix: m <= 3 only");
    if (N < 1 || N > 8) throw ConfigError("build_parametrix: N in 1..8");
    if (2 * N <= P.order_m) throw ConfigError("build_parametrix: needs 2N > m");
    if (opts.enforce_scale_gate) {
        if (!(scale_r * scale_r > static_cast<double>(opts.v)))
            throw ConfigError("build_parametrix: needs scale_r^2 > v");
        if (!(scale_r > 4.0 * P.coeff_sup_h / M_E))
            throw ConfigError("build_parametrix: needs scale_r > 4h/e");
    }
    const Complex Pm = P.principal_symbol(xi);
    if (std::abs(Pm) < 1e-10)
        throw CharacteristicError("build_parametrix: characteristic direction, |P_m(xi)| < 1e-10");

    ParametrixState state;
    state.scale_r = scale_r;
    state.N = N;
    state.xi = xi;
    state.Pm_xi = Pm;

    const double M = scale_r * scale_r * static_cast<double>(N);
    const auto rho = detail::symbol_quotient_coefficients(P);
    detail::AssemblyCounters counters;
    const int K = 2 * N - P.order_m;
    detail::assemble(rho, P.order_m, K, GaussPoly::unit(M), 0, state.w_parts, state.e_parts,
                     counters);
    state.term_count_S = counters.w_terms;
    state.remainder_count_s = counters.e_terms;

    auto materialize = [&](const std::map<int, GaussPoly>& parts) {
        std::vector<Complex> vals(grid.num_points, Complex{0.0, 0.0});
        for (const auto& [p, g] : parts) {
            const double weight = std::pow(xi, -p);
            for (std::size_t j = 0; j < grid.num_points; ++j)
                vals[j] += weight * g.eval(grid.point(j));
        }
        return GridSignal(grid, std::move(vals));
    };
    state.w_N = materialize(state.w_parts);
    state.e_N = materialize(state.e_parts);
    return state;
}

struct ParametrixResidualReport {
    double identity_residual = 0.0;  // sup |tP z - e^{-ix xi}(E - e_N)| / sup E
    double remainder_sup = 0.0;      // sup_x |e_N(x, xi)|
    double remainder_scaled = 0.0;   // remainder_sup * |xi|^{2N-m}
    Complex pairing{0.0, 0.0};       // <u, e^{-ix xi} e_N>
};

/// Transpose identity, remainder size and the (e33)-type pairing at the
/// state's frequency; |xi| >= 2 keeps the symbol quotient well scaled.
inline ParametrixResidualReport verify_parametrix(const OperatorSpec& P, const ParametrixState& state,
                                                  const GridSignal& u) {
    if (std::abs(state.xi) < 2.0) throw ConfigError("verify_parametrix: needs |xi| >= 2");
    const Grid& g = state.w_N.grid;
    const OperatorSpec Pt = P.transpose();

    std::vector<Complex> z(g.num_points);
    for (std::size_t j = 0; j < g.num_points; ++j)
        z[j] = std::exp(Complex(0.0, -g.point(j) * state.xi)) * state.w_N.values[j] / state.Pm_xi;
    const GridSignal lhs = apply_operator(Pt, GridSignal(g, std::move(z)),
                                          std::numeric_limits<double>::infinity());

    const double M = state.scale_r * state.scale_r * static_cast<double>(state.N);
    ParametrixResidualReport report;
    double dev = 0.0;
    Complex pairing{0.0, 0.0};
    for (std::size_t j = 0; j < g.num_points; ++j) {
        const double x = g.point(j);
        const Complex phase = std::exp(Complex(0.0, -x * state.xi));
        const Complex rhs = phase * (std::exp(-x * x / (4.0 * M)) - state.e_N.values[j]);
        dev = std::max(dev, std::abs(lhs.values[j] - rhs));
        report.remainder_sup = std::max(report.remainder_sup, std::abs(state.e_N.values[j]));
        pairing += u.values[j] * phase * state.e_N.values[j];
    }
    report.identity_residual = dev;  // sup E_{r^2 N} = 1
    report.remainder_scaled =
        report.remainder_sup * std::pow(std::abs(state.xi), 2 * state.N - P.order_m);
    report.pairing = pairing * g.spacing();
    return report;
}

struct RemainderSweep {
    std::vector<double> xis;
    std::vector<double> sups;
    double slope = 0.0;     // log-log slope of sup_x |e_N| against |xi|
    double fitted_c = 0.0;  // max over the sweep of sup * |xi|^{2N-m}
};

/// Remainder decay over a frequency sweep: the (h4) bound restated as a fit.
inline RemainderSweep remainder_sweep(const OperatorSpec& P, int N, double scale_r, const Grid& grid,
                                      const std::vector<double>& xis, const ParametrixOptions& opts = {}) {
    RemainderSweep sweep;
    sweep.xis = xis;
    std::vector<double> lx, ly;
    for (double xi : xis) {
        const ParametrixState state = build_parametrix(P, N, xi, scale_r, grid, opts);
        double sup = 0.0;
        for (const auto& v : state.e_N.values) sup = std::max(sup, std::abs(v));
        sweep.sups.push_back(sup);
        sweep.fitted_c = std::max(sweep.fitted_c, sup * std::pow(std::abs(xi), 2 * N - P.order_m));
        if (sup > 0.0) {
            lx.push_back(std::log(std::abs(xi)));
            ly.push_back(std::log(sup));
        }
    }
    if (lx.size() >= 2) sweep.slope = least_squares_line(lx, ly).slope;
    return sweep;
}

}  // namespace qmwave
