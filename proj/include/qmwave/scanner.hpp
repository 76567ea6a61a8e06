// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "qmwave/classifier.hpp"

namespace qmwave {

/// Probe family: centers covering a compact set, cones covering the
/// directions of interest.
struct ProbeSet {
    std::vector<double> centers;
    std::vector<Cone> directions;
};

struct ScanParams {
    ClassifyParams classifier;
    std::vector<int> v_list = {1, 2, 4};
    double ball_radius = 1.0;
    std::vector<ExtensionKind> extension_kinds = {ExtensionKind::global, ExtensionKind::zero_fill,
                                                  ExtensionKind::constant_fill};
    bool compute_s_star = false;
    int threads = 0;  // 0: QM_THREADS env, else hardware concurrency

    int max_vN() const {
        int vmax = 1;
        for (int v : v_list) vmax = std::max(vmax, v);
        return vmax * classifier.N_sweep.back();
    }
};

struct ProbeRecord {
    double x0 = 0.0;
    Cone cone;
    double s = 0.5;
    Decision decision = Decision::inconclusive;
    std::optional<double> s_star;
    ExtensionKind best_candidate = ExtensionKind::global;
    int best_v = 1;
    std::vector<std::pair<int, double>> fitted_trace;  // best (candidate, v): (N, C_N)
    std::string error;                                 // per-probe geometry failures, non-fatal
};

struct WavefrontEstimate {
    std::vector<ProbeRecord> entries;
    bool all_regular = false;
    /// Theorem 3.4 reporting: the single constant serving every regular
    /// probe of the cover (max of the certifying fitted constants).
    double uniform_constant = 0.0;
    bool consistency_warning = false;  // isolated singular probe amid regular neighbours
};

namespace detail {

inline int scan_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Windowed spectra for every (candidate, N) at fixed (x0, v); majorant
/// tables per cone are cut from these without recomputing FFTs.
inline std::vector<CandidateTables> tables_for_cone(const std::vector<std::vector<Spectrum>>& spectra,
                                                    const std::vector<ExtensionCandidate>& cands,
                                                    const Cone& cone, const ClassifyParams& p) {
    std::vector<CandidateTables> tables(cands.size());
    for (std::size_t c = 0; c < cands.size(); ++c) {
        tables[c].kind = cands[c].kind;
        for (std::size_t i = 0; i < p.N_sweep.size(); ++i)
            tables[c].logM.push_back(
                log_majorant_sequence(spectra[c][i], cone, p.N_sweep[i], p.noise_floor_rel));
    }
    return tables;
}

}  // namespace detail

/// Extension candidates for f at one probe center.
inline std::vector<ExtensionCandidate> make_candidates(const GridSignal& f, double x0,
                                                       const ScanParams& sp) {
    const BallRestriction res = restrict_ball(f, x0, sp.ball_radius);
    std::vector<ExtensionCandidate> cands;
    for (ExtensionKind kind : sp.extension_kinds)
        cands.push_back(extend(res, kind, 1, sp.max_vN()));
    return cands;
}

/// Full decay analysis of one center against a set of cones; the v sweep is
/// existential, mirroring Definition 2.2's "for some v".
inline std::vector<ProbeRecord> evaluate_center(const GridSignal& f, double x0,
                                                const std::vector<Cone>& cones,
                                                const ScanParams& sp,
                                                const std::vector<ExtensionCandidate>* extra = nullptr) {
    std::vector<ProbeRecord> records;
    try {
        std::vector<ExtensionCandidate> cands = make_candidates(f, x0, sp);
        if (extra) cands.insert(cands.end(), extra->begin(), extra->end());

        // spectra[v][cand][iN]
        std::vector<std::vector<std::vector<Spectrum>>> spectra;
        for (int v : sp.v_list) {
            ClassifyParams p = sp.classifier;
            p.v = v;
            std::vector<std::vector<Spectrum>> per_cand(cands.size());
            for (std::size_t c = 0; c < cands.size(); ++c)
                for (int N : p.N_sweep)
                    per_cand[c].push_back(windowed_spectrum(cands[c], WindowSpec(x0, N, v)));
            spectra.push_back(std::move(per_cand));
        }

        for (const Cone& cone : cones) {
            ProbeRecord rec;
            rec.x0 = x0;
            rec.cone = cone;
            rec.s = sp.classifier.s;
            bool any_regular = false, all_singular = true;
            double best_last = std::numeric_limits<double>::infinity();
            std::optional<double> best_s_star;
            for (std::size_t iv = 0; iv < sp.v_list.size(); ++iv) {
                ClassifyParams p = sp.classifier;
                p.v = sp.v_list[iv];
                const auto tables = detail::tables_for_cone(spectra[iv], cands, cone, p);
                const DecayReport rep = classify_tables(tables, x0, cone, p);
                const double last = rep.sweep.empty() ? 0.0 : rep.sweep.back().second;
                const bool improves = (rep.decision == Decision::regular && !any_regular) ||
                                      ((rep.decision == Decision::regular) == any_regular && last < best_last);
                if (improves) {
                    best_last = last;
                    rec.best_candidate = rep.best_candidate;
                    rec.best_v = p.v;
                    rec.fitted_trace = rep.sweep;
                }
                any_regular = any_regular || rep.decision == Decision::regular;
                all_singular = all_singular && rep.decision == Decision::singular;
                if (sp.compute_s_star) {
                    const auto s_star = estimate_s_star_tables(tables, p);
                    if (s_star && (!best_s_star || *s_star < *best_s_star)) best_s_star = s_star;
                }
            }
            rec.decision = any_regular ? Decision::regular
                                       : (all_singular ? Decision::singular : Decision::inconclusive);
            rec.s_star = best_s_star;
            records.push_back(std::move(rec));
        }
    } catch (const GeometryError& e) {
        for (const Cone& cone : cones) {
            ProbeRecord rec;
            rec.x0 = x0;
            rec.cone = cone;
            rec.s = sp.classifier.s;
            rec.error = e.what();
            records.push_back(std::move(rec));
        }
    }
    return records;
}

/// Per-probe decay reports over the whole probe family, parallel across
/// centers (QM_THREADS caps the pool).
inline WavefrontEstimate scan(const GridSignal& f, const ProbeSet& probes, const ScanParams& sp) {
    sp.classifier.validate();
    std::vector<std::vector<ProbeRecord>> per_center(probes.centers.size());
    const int threads = std::min<int>(detail::scan_thread_count(sp.threads),
                                      std::max<int>(1, static_cast<int>(probes.centers.size())));
    auto worker = [&](int tid) {
        for (std::size_t i = static_cast<std::size_t>(tid); i < probes.centers.size();
             i += static_cast<std::size_t>(threads))
            per_center[i] = evaluate_center(f, probes.centers[i], probes.directions, sp);
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    WavefrontEstimate wf;
    for (auto& recs : per_center)
        for (auto& r : recs) wf.entries.push_back(std::move(r));
    wf.all_regular = std::all_of(wf.entries.begin(), wf.entries.end(), [](const ProbeRecord& r) {
        return r.error.empty() && r.decision == Decision::regular;
    });
    for (const auto& r : wf.entries)
        if (r.decision == Decision::regular && !r.fitted_trace.empty())
            wf.uniform_constant = std::max(wf.uniform_constant, r.fitted_trace.back().second);

    // A regular verdict at x0 certifies every point of L(x0, r) in its cone,
    // so a singular probe strictly inside another probe's certified ball is
    // inconsistent; flagged as a warning, not an error.
    for (const auto& r : wf.entries) {
        if (r.decision != Decision::singular) continue;
        for (const auto& o : wf.entries) {
            if (o.decision != Decision::regular || o.cone.describe() != r.cone.describe()) continue;
            if (o.x0 != r.x0 && std::abs(o.x0 - r.x0) < sp.ball_radius) wf.consistency_warning = true;
        }
    }
    return wf;
}

/// pi_1 projection: centers with at least one singular direction.
inline std::vector<double> singular_support(const WavefrontEstimate& wf) {
    std::set<double> centers;
    for (const auto& r : wf.entries)
        if (r.decision == Decision::singular) centers.insert(r.x0);
    return {centers.begin(), centers.end()};
}

// ---------------------------------------------------------------------------
// tilde-E^s membership and its sup-norm cross-check
// ---------------------------------------------------------------------------

struct TildeEsReport {
    std::optional<double> admissible_h;  // nullopt: membership rejected
    std::vector<double> q;               // q_alpha = ||<xi>^alpha theta-hat||_inf / alpha!^s
};

/// Largest h with sup_alpha h^alpha q_alpha <= 10 q_0, alpha <= alpha_max;
/// membership is rejected when that h falls below h_floor (the q_alpha grow
/// super-geometrically).
inline TildeEsReport tilde_es_membership(const GridSignal& theta, double s, int alpha_max,
                                         double noise_floor_rel = 1e-12, double h_floor = 0.1) {
    if (alpha_max < 0) throw ConfigError("tilde_es_membership: alpha_max must be >= 0");
    const double edge = std::max(std::abs(theta.values.front()), std::abs(theta.values.back()));
    if (edge > 1e-10)
        throw ConfigError("tilde_es_membership: theta does not decay below 1e-10 at the box edges");

    const Spectrum That = forward_transform(theta);
    const double floor = noise_floor_rel * That.sup_norm();
    std::vector<double> lb, la;
    for (std::size_t k = 0; k < That.freqs.size(); ++k) {
        const double a = std::abs(That.values[k]);
        lb.push_back(std::log(bracket_norm(That.freqs[k])));
        la.push_back(a > floor ? std::log(a) : kNegInf);
    }

    TildeEsReport report;
    std::vector<double> logq(static_cast<std::size_t>(alpha_max) + 1, kNegInf);
    for (int a = 0; a <= alpha_max; ++a) {
        double best = kNegInf;
        for (std::size_t k = 0; k < lb.size(); ++k) best = std::max(best, a * lb[k] + la[k]);
        logq[static_cast<std::size_t>(a)] = best - s * log_factorial(a);
        report.q.push_back(std::isfinite(logq[static_cast<std::size_t>(a)])
                               ? std::exp(logq[static_cast<std::size_t>(a)])
                               : 0.0);
    }
    if (!std::isfinite(logq[0])) {  // theta == 0: any h is admissible
        report.admissible_h = std::numeric_limits<double>::infinity();
        return report;
    }
    double log_h = std::numeric_limits<double>::infinity();
    for (int a = 1; a <= alpha_max; ++a) {
        if (!std::isfinite(logq[static_cast<std::size_t>(a)])) continue;
        log_h = std::min(log_h, (std::log(10.0) + logq[0] - logq[static_cast<std::size_t>(a)]) / a);
    }
    const double h = std::exp(log_h);
    if (h >= h_floor) report.admissible_h = h;
    return report;
}

/// Proposition 2.5 direction: finite-difference sup-norm derivative bounds
/// must hold with some h1 <= h once the spectral membership passed.
inline bool cross_check_sup_derivatives(const GridSignal& theta, double s, double h, int alpha_max) {
    const int amax = std::min(alpha_max, 6);
    const double step = 0.125;
    const auto stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(step / theta.grid.spacing())));
    std::vector<double> d(static_cast<std::size_t>(amax) + 1, 0.0);
    const std::size_t margin = 3 * stride;
    for (int a = 0; a <= amax; ++a)
        for (std::size_t j = margin; j + margin < theta.grid.num_points; j += stride)
            d[static_cast<std::size_t>(a)] =
                std::max(d[static_cast<std::size_t>(a)],
                         std::abs(finite_difference_derivative(theta, theta.grid.point(j), a, step)));
    if (d[0] == 0.0) return true;  // theta == 0
    double h1 = std::numeric_limits<double>::infinity();
    for (int a = 1; a <= amax; ++a) {
        if (d[static_cast<std::size_t>(a)] == 0.0) continue;
        h1 = std::min(h1, std::pow(10.0 * d[0] / d[static_cast<std::size_t>(a)], 1.0 / a));
    }
    return std::min(h1, h) >= 0.1;
}

// ---------------------------------------------------------------------------
// Finite-difference Gevrey bound test (the Prop. 2.4 consequence)
// ---------------------------------------------------------------------------

struct FdGevreyOptions {
    int alpha_max = 6;
    double step = 0.125;
    double neighborhood = 0.5;
    double cap = 2.5;  // calibrated pass threshold for the fitted C1
};

struct FdGevreyReport {
    double C1 = 0.0;
    std::vector<double> derivative_sups;
    bool pass = false;
};

/// Fits the least C1 with sup_{|x-x0|<=w} |f^{(alpha)}(x)| <= C1^{alpha+1} alpha!^s
/// for alpha <= alpha_max, derivatives by central differences.
inline FdGevreyReport fd_gevrey_test(const GridSignal& f, double x0, double s,
                                     const FdGevreyOptions& opt = {}) {
    FdGevreyReport report;
    double logC1 = kNegInf;
    for (int a = 0; a <= opt.alpha_max; ++a) {
        double sup = 0.0;
        const int steps = std::max(1, static_cast<int>(opt.neighborhood / opt.step));
        for (int j = -steps; j <= steps; ++j)
            sup = std::max(sup, std::abs(finite_difference_derivative(
                                    f, x0 + j * opt.step, a, opt.step)));
        report.derivative_sups.push_back(sup);
        if (sup > 0.0)
            logC1 = std::max(logC1, (std::log(sup) - s * log_factorial(a)) / (a + 1.0));
    }
    report.C1 = std::isfinite(logC1) ? std::exp(logC1) : 0.0;
    report.pass = report.C1 <= opt.cap;
    return report;
}

// ---------------------------------------------------------------------------
// Product stability (Prop. 2.7 a)
// ---------------------------------------------------------------------------

enum class StabilityOutcome { pass, fail, skipped };

inline const char* to_string(StabilityOutcome o) {
    switch (o) {
        case StabilityOutcome::pass: return "pass";
        case StabilityOutcome::fail: return "fail";
        case StabilityOutcome::skipped: return "skipped";
    }
    return "?";
}

/// Checks that multiplication by theta does not destroy a regular verdict
/// at one probe. The candidate set for theta*f includes theta times each
/// candidate of f: the certifying extension of Prop. 2.7(a)'s proof.
inline StabilityOutcome product_stability_check(const GridSignal& f, const GridSignal& theta,
                                                double x0, const Cone& cone, const ScanParams& sp,
                                                int tilde_alpha_max = 12) {
    try {
        const TildeEsReport membership =
            tilde_es_membership(theta, sp.classifier.s, tilde_alpha_max, sp.classifier.noise_floor_rel);
        if (!membership.admissible_h) return StabilityOutcome::skipped;
        const GrowthExponent growth = polynomial_growth_exponent(forward_transform(f));
        if (growth.l > 20.0) return StabilityOutcome::skipped;
    } catch (const std::exception&) {
        return StabilityOutcome::skipped;
    }

    const std::vector<ProbeRecord> before = evaluate_center(f, x0, {cone}, sp);
    if (before.empty() || !before.front().error.empty()) return StabilityOutcome::skipped;
    if (before.front().decision != Decision::regular) return StabilityOutcome::pass;

    std::vector<Complex> prod(f.grid.num_points);
    for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = f.values[j] * theta.values[j];
    const GridSignal tf(f.grid, std::move(prod), "theta*" + f.label);

    std::vector<ExtensionCandidate> transferred;
    for (const auto& cand : make_candidates(f, x0, sp)) {
        std::vector<Complex> tv(cand.signal.grid.num_points);
        for (std::size_t j = 0; j < tv.size(); ++j) tv[j] = cand.signal.values[j] * theta.values[j];
        transferred.push_back(ExtensionCandidate{cand.kind,
                                                 GridSignal(cand.signal.grid, std::move(tv)),
                                                 cand.leak_budget});
    }
    const std::vector<ProbeRecord> after = evaluate_center(tf, x0, {cone}, sp, &transferred);
    if (after.empty() || !after.front().error.empty()) return StabilityOutcome::skipped;
    return after.front().decision == Decision::regular ? StabilityOutcome::pass
                                                       : StabilityOutcome::fail;
}

}  // namespace qmwave
