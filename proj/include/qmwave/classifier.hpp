// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qmwave/cones.hpp"
#include "qmwave/fft.hpp"
#include "qmwave/localization.hpp"
#include "qmwave/numerics.hpp"
#include "qmwave/windows.hpp"

namespace qmwave {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Knobs of the decay test. C_cap and growth_tol are thresholds, not
/// theory; the corpus configuration pins calibrated desk-scale values.
struct ClassifyParams {
    double s = 0.5;
    int v = 1;
    int N0 = 1;
    std::vector<int> N_sweep = {2, 4, 8, 16};
    double C_cap = 1e6;
    double growth_tol = 1.5;
    double C_floor = 2.0;  // constants at/below this are stable regardless of ratio
    double noise_floor_rel = 1e-12;
    double s_star_tol = 1.0 / 64.0;

    void validate() const {
        if (!(s >= 0.5 && s < 1.0)) throw ConfigError("classifier.s must lie in [1/2, 1)");
        if (v < 1) throw ConfigError("classifier.v must be >= 1");
        if (N0 < 1) throw ConfigError("classifier.N0 must be >= 1");
        if (N_sweep.empty()) throw ConfigError("classifier.N_sweep must be non-empty");
        for (std::size_t i = 0; i < N_sweep.size(); ++i) {
            if (N_sweep[i] <= N0)
                throw ConfigError("classifier.N_sweep entries must exceed N0");
            if (i > 0 && N_sweep[i] <= N_sweep[i - 1])
                throw ConfigError("classifier.N_sweep must be strictly increasing");
        }
        if (!(C_cap > 0) || !(growth_tol >= 1.0)) throw ConfigError("classifier thresholds invalid");
    }
};

enum class Decision { regular, singular, inconclusive };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::regular: return "regular";
        case Decision::singular: return "singular";
        case Decision::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Windowed spectrum F(f^rex * E_{x0,vN}). The geometric leakage gate keeps
/// the window 6 sigma inside the box so periodization artifacts stay below
/// the analysis floor.
inline Spectrum windowed_spectrum(const ExtensionCandidate& ext, const WindowSpec& w) {
    const Grid& g = ext.signal.grid;
    const double width = std::sqrt(w.effective_scale());
    if (g.spacing() > 0.35 * width)
        throw ResolutionError("windowed_spectrum: grid does not resolve window width sqrt(vN)");
    const double margin = 6.0 * width;
    if (w.center_x0 - margin < g.x_min || w.center_x0 + margin > g.x_max)
        throw ConfigError("windowed_spectrum: leakage budget violated, window at x0=" +
                          std::to_string(w.center_x0) + " needs " + std::to_string(margin) +
                          " of box margin");
    std::vector<Complex> prod(g.num_points);
    for (std::size_t j = 0; j < g.num_points; ++j)
        prod[j] = ext.signal.values[j] * w.value(g.point(j));
    return forward_transform(GridSignal(g, std::move(prod)));
}

/// M_n = sup_{xi in cone} <xi>^n |S(xi)| for n = 0..N, in log space.
/// Values below noise_floor_rel * sup|S| are treated as exact zeros
/// (round-off junk would otherwise dominate the high-n suprema).
inline std::vector<double> log_majorant_sequence(const Spectrum& S, const Cone& cone, int N,
                                                 double noise_floor_rel = 1e-12) {
    if (cone.dim != 1) throw ConfigError("majorant_sequence: spectra are d=1");
    if (N < 0) throw ConfigError("majorant_sequence: N must be >= 0");
    std::vector<double> log_bracket, log_abs;
    const double floor = noise_floor_rel * S.sup_norm();
    for (std::size_t k = 0; k < S.freqs.size(); ++k) {
        if (!cone.contains(S.freqs[k])) continue;
        log_bracket.push_back(std::log(bracket_norm(S.freqs[k])));
        const double a = std::abs(S.values[k]);
        log_abs.push_back(a > floor ? std::log(a) : kNegInf);
    }
    if (log_bracket.size() < 8)
        throw GeometryError("majorant_sequence: cone holds fewer than 8 grid frequencies");
    std::vector<double> logM(static_cast<std::size_t>(N) + 1, kNegInf);
    for (int n = 0; n <= N; ++n) {
        double best = kNegInf;
        for (std::size_t k = 0; k < log_bracket.size(); ++k)
            best = std::max(best, n * log_bracket[k] + log_abs[k]);
        logM[static_cast<std::size_t>(n)] = best;
    }
    return logM;
}

inline std::vector<double> majorant_sequence(const Spectrum& S, const Cone& cone, int N,
                                             double noise_floor_rel = 1e-12) {
    auto logM = log_majorant_sequence(S, cone, N, noise_floor_rel);
    std::vector<double> M(logM.size());
    for (std::size_t n = 0; n < logM.size(); ++n) M[n] = std::isfinite(logM[n]) ? std::exp(logM[n]) : 0.0;
    return M;
}

/// Least C >= 0 with M_n <= C^{n+1} n^{s n} for all n (n^{s n} = 1 at n=0).
inline double fit_constant_log(const std::vector<double>& logM, double s) {
    double log_c = kNegInf;
    for (std::size_t n = 0; n < logM.size(); ++n) {
        if (!std::isfinite(logM[n])) continue;
        log_c = std::max(log_c, (logM[n] - log_power_weight(static_cast<int>(n), s)) /
                                    (static_cast<double>(n) + 1.0));
    }
    return std::isfinite(log_c) ? std::exp(log_c) : 0.0;
}

inline double fit_constant(const std::vector<double>& M, double s) {
    std::vector<double> logM(M.size());
    for (std::size_t n = 0; n < M.size(); ++n) {
        if (M[n] < 0) throw ConfigError("fit_constant: majorants must be non-negative");
        logM[n] = M[n] > 0 ? std::log(M[n]) : kNegInf;
    }
    return fit_constant_log(logM, s);
}

/// Majorant tables of one extension candidate across the N sweep;
/// everything downstream of here is s-independent, so verdicts for any s
/// reuse the same tables.
struct CandidateTables {
    ExtensionKind kind = ExtensionKind::global;
    std::vector<std::vector<double>> logM;  // one table per sweep entry

    std::vector<double> fitted_sweep(double s) const {
        std::vector<double> c;
        c.reserve(logM.size());
        for (const auto& table : logM) c.push_back(fit_constant_log(table, s));
        return c;
    }
};

struct CandidateVerdict {
    ExtensionKind kind = ExtensionKind::global;
    std::vector<double> fitted;  // per sweep N
    bool regular_gate = false;
    bool singular_gate = false;
};

inline CandidateVerdict evaluate_candidate(const CandidateTables& tables, double s,
                                           const ClassifyParams& p) {
    CandidateVerdict v;
    v.kind = tables.kind;
    v.fitted = tables.fitted_sweep(s);
    const double first = v.fitted.front();
    const double last = v.fitted.back();
    const bool capped = std::all_of(v.fitted.begin(), v.fitted.end(),
                                    [&](double c) { return c <= p.C_cap; });
    const bool stable = last <= p.C_floor || last <= p.growth_tol * first;
    v.regular_gate = capped && stable;
    v.singular_gate = last > p.C_cap && last >= first;
    return v;
}

/// Majorant tables for every candidate at a fixed (x0, cone, v).
inline std::vector<CandidateTables> build_candidate_tables(const std::vector<ExtensionCandidate>& cands,
                                                           double x0, const Cone& cone,
                                                           const ClassifyParams& p) {
    std::vector<CandidateTables> out;
    out.reserve(cands.size());
    for (const auto& cand : cands) {
        CandidateTables t;
        t.kind = cand.kind;
        for (int N : p.N_sweep) {
            const Spectrum S = windowed_spectrum(cand, WindowSpec(x0, N, p.v));
            t.logM.push_back(log_majorant_sequence(S, cone, N, p.noise_floor_rel));
        }
        out.push_back(std::move(t));
    }
    return out;
}

/// Per-(x0, cone) record of the decay test.
struct DecayReport {
    double x0 = 0.0;
    Cone cone;
    double s = 0.5;
    int v = 1;
    int N0 = 1;
    std::vector<std::pair<int, double>> sweep;   // best candidate: (N, fitted C_N)
    std::vector<std::vector<double>> M_table;    // best candidate: per-N majorants
    Decision decision = Decision::inconclusive;
    std::optional<double> s_star;
    ExtensionKind best_candidate = ExtensionKind::global;
    std::vector<CandidateVerdict> candidates;
};

inline Decision decide(const std::vector<CandidateVerdict>& verdicts, std::size_t* best_index) {
    // Regular if any candidate certifies; singular only when every candidate
    // exceeds the cap at the largest N with a non-decreasing trend.
    std::size_t best = 0;
    for (std::size_t i = 1; i < verdicts.size(); ++i)
        if (verdicts[i].fitted.back() < verdicts[best].fitted.back()) best = i;
    for (std::size_t i = 0; i < verdicts.size(); ++i)
        if (verdicts[i].regular_gate) {
            best = i;
            // smallest certifying constant wins the report
            for (std::size_t k = i + 1; k < verdicts.size(); ++k)
                if (verdicts[k].regular_gate && verdicts[k].fitted.back() < verdicts[best].fitted.back())
                    best = k;
            if (best_index) *best_index = best;
            return Decision::regular;
        }
    if (best_index) *best_index = best;
    const bool all_singular = !verdicts.empty() &&
                              std::all_of(verdicts.begin(), verdicts.end(),
                                          [](const CandidateVerdict& v) { return v.singular_gate; });
    return all_singular ? Decision::singular : Decision::inconclusive;
}

inline DecayReport classify_tables(const std::vector<CandidateTables>& tables, double x0,
                                   const Cone& cone, const ClassifyParams& p) {
    DecayReport report;
    report.x0 = x0;
    report.cone = cone;
    report.s = p.s;
    report.v = p.v;
    report.N0 = p.N0;
    for (const auto& t : tables) report.candidates.push_back(evaluate_candidate(t, p.s, p));
    std::size_t best = 0;
    report.decision = decide(report.candidates, &best);
    report.best_candidate = report.candidates.empty() ? ExtensionKind::global : report.candidates[best].kind;
    if (!report.candidates.empty()) {
        for (std::size_t i = 0; i < p.N_sweep.size(); ++i)
            report.sweep.emplace_back(p.N_sweep[i], report.candidates[best].fitted[i]);
        for (const auto& logM : tables[best].logM) {
            std::vector<double> M(logM.size());
            for (std::size_t n = 0; n < logM.size(); ++n)
                M[n] = std::isfinite(logM[n]) ? std::exp(logM[n]) : 0.0;
            report.M_table.push_back(std::move(M));
        }
    }
    return report;
}

/// The Definition 2.2 test at one probe, for a fixed dilation v.
inline DecayReport classify(const std::vector<ExtensionCandidate>& candidates, double x0,
                            const Cone& cone, const ClassifyParams& params) {
    params.validate();
    return classify_tables(build_candidate_tables(candidates, x0, cone, params), x0, cone, params);
}

/// Least s in [1/2, 1) classified regular, by bisection (monotonicity in s
/// makes the predicate one-sided); nullopt when not regular at 1 - 1/64.
inline std::optional<double> estimate_s_star_tables(const std::vector<CandidateTables>& tables,
                                                    const ClassifyParams& params) {
    auto regular_at = [&](double s) {
        ClassifyParams p = params;
        p.s = s;
        std::size_t best = 0;
        std::vector<CandidateVerdict> verdicts;
        for (const auto& t : tables) verdicts.push_back(evaluate_candidate(t, s, p));
        return decide(verdicts, &best) == Decision::regular;
    };
    double lo = 0.5;
    double hi = 1.0 - params.s_star_tol;
    if (regular_at(lo)) return lo;
    if (!regular_at(hi)) return std::nullopt;
    while (hi - lo > params.s_star_tol) {
        const double mid = 0.5 * (lo + hi);
        (regular_at(mid) ? hi : lo) = mid;
    }
    return hi;
}

inline std::optional<double> estimate_s_star(const std::vector<ExtensionCandidate>& candidates,
                                             double x0, const Cone& cone, const ClassifyParams& params) {
    params.validate();
    return estimate_s_star_tables(build_candidate_tables(candidates, x0, cone, params), params);
}

struct GrowthExponent {
    double l = 0.0;        // least l >= 0 with <xi>^{-l} |S| bounded
    double slope = 0.0;    // raw log-log slope
    double residual = 0.0; // rms of the fit
};

/// Least-squares slope of log|S| against log<xi> over |xi| >= 1.
inline GrowthExponent polynomial_growth_exponent(const Spectrum& S) {
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < S.freqs.size(); ++k) {
        const double a = std::abs(S.values[k]);
        if (std::abs(S.freqs[k]) < 1.0 || a <= 0.0) continue;
        lx.push_back(std::log(bracket_norm(S.freqs[k])));
        ly.push_back(std::log(a));
    }
    if (lx.size() < 8) throw FitError("polynomial_growth_exponent: fewer than 8 usable frequencies");
    const LinearFit fit = least_squares_line(lx, ly);
    return GrowthExponent{std::max(0.0, fit.slope), fit.slope, fit.rms_residual};
}

}  // namespace qmwave
