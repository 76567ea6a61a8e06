// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qmwave/classifier.hpp"
#include "qmwave/scanner.hpp"

namespace qmwave {

/// One term a_alpha D^alpha; D = -i d/dx fixed module-wide, so the symbol
/// substitution is D^alpha -> xi^alpha. alpha_y is the d=2 hook.
struct OperatorTerm {
    int alpha_x = 0;
    int alpha_y = 0;
    Complex coeff{0.0, 0.0};
};

/// Constant-coefficient operator P(D) = sum a_alpha D^alpha.
struct OperatorSpec {
    int dim = 1;
    std::vector<OperatorTerm> terms;
    int order_m = 0;
    double coeff_sup_h = 0.0;

    OperatorSpec() = default;
    OperatorSpec(int d, std::vector<OperatorTerm> t) : dim(d), terms(std::move(t)) {
        if (dim != 1 && dim != 2) throw ConfigError("operator: only d=1 and d=2 are supported");
        for (const auto& term : terms) {
            if (term.alpha_x < 0 || term.alpha_y < 0 || (dim == 1 && term.alpha_y != 0))
                throw ConfigError("operator: invalid multi-index");
            if (std::abs(term.coeff) > 0.0)
                order_m = std::max(order_m, term.alpha_x + term.alpha_y);
            coeff_sup_h = std::max(coeff_sup_h, std::abs(term.coeff));
        }
        bool exact = false;
        for (const auto& term : terms)
            exact = exact || (term.alpha_x + term.alpha_y == order_m && std::abs(term.coeff) > 0.0);
        if (!exact || order_m < 1)
            throw ConfigError("operator: needs a nonzero coefficient of exact positive order");
    }

    /// d=1 operator from coefficients listed by derivative order.
    static OperatorSpec from_coefficients(const std::vector<Complex>& by_order) {
        std::vector<OperatorTerm> t;
        for (std::size_t k = 0; k < by_order.size(); ++k)
            t.push_back({static_cast<int>(k), 0, by_order[k]});
        return OperatorSpec(1, std::move(t));
    }

    Complex coefficient(int alpha_x, int alpha_y = 0) const {
        Complex acc{0.0, 0.0};
        for (const auto& term : terms)
            if (term.alpha_x == alpha_x && term.alpha_y == alpha_y) acc += term.coeff;
        return acc;
    }

    Complex symbol(double xi) const {
        if (dim != 1) throw ConfigError("operator: scalar symbol needs d=1");
        Complex acc{0.0, 0.0};
        for (const auto& term : terms) acc += term.coeff * std::pow(xi, term.alpha_x);
        return acc;
    }

    Complex principal_symbol(double xi) const {
        if (dim != 1) throw ConfigError("operator: scalar symbol needs d=1");
        Complex acc{0.0, 0.0};
        for (const auto& term : terms)
            if (term.alpha_x == order_m) acc += term.coeff * std::pow(xi, term.alpha_x);
        return acc;
    }

    Complex principal_symbol(double xi1, double xi2) const {
        Complex acc{0.0, 0.0};
        for (const auto& term : terms)
            if (term.alpha_x + term.alpha_y == order_m)
                acc += term.coeff * std::pow(xi1, term.alpha_x) * std::pow(xi2, term.alpha_y);
        return acc;
    }

    /// Transpose: ^tP = P(-D).
    OperatorSpec transpose() const {
        std::vector<OperatorTerm> t = terms;
        for (auto& term : t)
            if ((term.alpha_x + term.alpha_y) % 2 != 0) term.coeff = -term.coeff;
        return OperatorSpec(dim, std::move(t));
    }

    std::string describe() const {
        std::string out;
        for (const auto& term : terms) {
            if (std::abs(term.coeff) == 0.0) continue;
            if (!out.empty()) out += " + ";
            out += "(" + std::to_string(term.coeff.real()) + (term.coeff.imag() != 0
                       ? "+" + std::to_string(term.coeff.imag()) + "i" : "") + ")";
            if (term.alpha_x > 0) out += " D^" + std::to_string(term.alpha_x);
        }
        return out.empty() ? "0" : out;
    }
};

/// P(D) f via the spectral side: inverse_transform(P(xi) f-hat). The tail
/// check guards smooth inputs against aliasing; distributional pipelines
/// pass tail_tol = infinity knowingly.
inline GridSignal apply_operator(const OperatorSpec& P, const GridSignal& f,
                                 double tail_tol = 1e-10) {
    if (P.dim != 1) throw ConfigError("apply_operator: d=1 only");
    Spectrum S = forward_transform(f);
    if (std::isfinite(tail_tol)) {
        const double sup = S.sup_norm();
        double tail = 0.0;
        const std::size_t n = S.freqs.size();
        for (std::size_t k = 0; k < n; ++k)
            if (std::abs(S.freqs[k]) >= 0.95 * S.freqs.back())
                tail = std::max(tail, std::abs(S.values[k]));
        if (sup > 0.0 && tail > tail_tol * sup)
            throw ResolutionError("apply_operator: spectral tail " + std::to_string(tail / sup) +
                                  " above tolerance, aliasing risk");
    }
    for (std::size_t k = 0; k < S.freqs.size(); ++k) S.values[k] *= P.symbol(S.freqs[k]);
    GridSignal out = inverse_transform(S);
    out.label = "P(D)" + f.label;
    return out;
}

/// Char(P) as {P_m = 0} (the proof's usage; the paper's displayed sign is a
/// slip). Directions are unit vectors; d=1 passes signs.
inline std::vector<double> characteristic_set(const OperatorSpec& P, const std::vector<double>& directions) {
    std::vector<double> out;
    for (double dir : directions) {
        if (dir == 0.0) throw ConfigError("characteristic_set: directions must be nonzero");
        if (std::abs(P.principal_symbol(dir > 0 ? 1.0 : -1.0)) <= 1e-12) out.push_back(dir);
    }
    return out;
}

inline std::vector<std::array<double, 2>> characteristic_set(
    const OperatorSpec& P, const std::vector<std::array<double, 2>>& directions) {
    std::vector<std::array<double, 2>> out;
    for (const auto& dir : directions) {
        const double norm = std::hypot(dir[0], dir[1]);
        if (norm == 0.0) throw ConfigError("characteristic_set: directions must be nonzero");
        if (std::abs(P.principal_symbol(dir[0] / norm, dir[1] / norm)) <= 1e-12) out.push_back(dir);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reg(s, P, u) and the Theorem 4.3 inclusions
// ---------------------------------------------------------------------------

struct RegSpuReport {
    bool member = false;
    bool growth_ok = false;     // condition (gr): polynomially bounded u-hat
    bool decay_ok = false;      // condition (ww1): P(D)u^rex regular at the probe
    double growth_l = 0.0;
    double growth_C = 0.0;
    Decision pd_decision = Decision::inconclusive;
};

/// Definition 4.1 membership at one probe: u-hat polynomially bounded and
/// P(D)u^rex passing the decay test there.
inline RegSpuReport reg_spu_test(const GridSignal& u, const OperatorSpec& P, double x0,
                                 const Cone& cone, const ScanParams& sp) {
    RegSpuReport report;
    if (u.sup_norm() == 0.0) {
        report.member = report.growth_ok = report.decay_ok = true;
        report.pd_decision = Decision::regular;
        return report;
    }
    const Spectrum uhat = forward_transform(u);
    try {
        const GrowthExponent g = polynomial_growth_exponent(uhat);
        report.growth_l = g.l;
        report.growth_ok = g.l <= 20.0;
        double supw = 0.0;
        for (std::size_t k = 0; k < uhat.freqs.size(); ++k)
            supw = std::max(supw, std::abs(uhat.values[k]) / std::pow(bracket_norm(uhat.freqs[k]), g.l));
        report.growth_C = supw;
    } catch (const FitError&) {
        report.growth_ok = false;
    }
    const GridSignal pu = apply_operator(P, u, std::numeric_limits<double>::infinity());
    const auto recs = evaluate_center(pu, x0, {cone}, sp);
    if (!recs.empty() && recs.front().error.empty()) {
        report.pd_decision = recs.front().decision;
        report.decay_ok = report.pd_decision == Decision::regular;
    }
    report.member = report.growth_ok && report.decay_ok;
    return report;
}

struct InclusionProbeRow {
    double x0 = 0.0;
    std::string direction;
    Decision u_decision = Decision::inconclusive;
    Decision pu_decision = Decision::inconclusive;
    bool reg_member = false;
    bool characteristic = false;
    bool left_violation = false;   // singular(P(D)u) but not singular(u)
    bool right_violation = false;  // singular(u) but Reg holds off Char(P)
};

struct InclusionReport {
    std::vector<InclusionProbeRow> rows;
    int left_violations = 0;
    int right_violations = 0;
    bool pass = false;
};

/// Probe-wise check of WF_s(P(D)u) subset WF_s(u) subset WF(s,P,u) u Char(P).
inline InclusionReport inclusion_check(const GridSignal& u, const OperatorSpec& P,
                                       const ProbeSet& probes, const ScanParams& sp) {
    const GridSignal pu = apply_operator(P, u, std::numeric_limits<double>::infinity());
    const WavefrontEstimate wf_u = scan(u, probes, sp);
    const WavefrontEstimate wf_pu = scan(pu, probes, sp);

    InclusionReport report;
    for (std::size_t i = 0; i < wf_u.entries.size(); ++i) {
        const ProbeRecord& ru = wf_u.entries[i];
        const ProbeRecord& rp = wf_pu.entries[i];
        InclusionProbeRow row;
        row.x0 = ru.x0;
        row.direction = ru.cone.describe();
        row.u_decision = ru.decision;
        row.pu_decision = rp.decision;
        row.characteristic =
            std::abs(P.principal_symbol(ru.cone.direction > 0 ? 1.0 : -1.0)) <= 1e-12;
        row.reg_member = reg_spu_test(u, P, ru.x0, ru.cone, sp).member;
        row.left_violation = rp.decision == Decision::singular && ru.decision != Decision::singular;
        row.right_violation = ru.decision == Decision::singular && row.reg_member && !row.characteristic;
        report.left_violations += row.left_violation ? 1 : 0;
        report.right_violations += row.right_violation ? 1 : 0;
        report.rows.push_back(row);
    }
    report.pass = report.left_violations == 0 && report.right_violations == 0;
    return report;
}

/// Eq. (dod3) restated in the declared convention:
/// F(f' E_{x0,N})(xi) = i xi F(f E_N)(xi) + (1/(2N)) F(f (x-x0) E_N)(xi).
/// Returns the sup deviation between the two sides relative to sup|lhs|.
inline double derivative_window_identity_check(const GridSignal& f, double x0, int N) {
    const Grid& g = f.grid;
    const WindowSpec w(x0, N, 1);

    Spectrum fhat = forward_transform(f);
    for (std::size_t k = 0; k < fhat.freqs.size(); ++k)
        fhat.values[k] *= Complex(0.0, fhat.freqs[k]);
    const GridSignal df = inverse_transform(fhat);

    std::vector<Complex> a(g.num_points), b(g.num_points), c(g.num_points);
    for (std::size_t j = 0; j < g.num_points; ++j) {
        const double x = g.point(j);
        const double win = w.value(x);
        a[j] = df.values[j] * win;
        b[j] = f.values[j] * win;
        c[j] = f.values[j] * (x - x0) * win;
    }
    const Spectrum lhs = forward_transform(GridSignal(g, std::move(a)));
    const Spectrum fb = forward_transform(GridSignal(g, std::move(b)));
    const Spectrum fc = forward_transform(GridSignal(g, std::move(c)));

    double dev = 0.0, sup = 0.0;
    for (std::size_t k = 0; k < lhs.freqs.size(); ++k) {
        const Complex rhs = Complex(0.0, lhs.freqs[k]) * fb.values[k] + fc.values[k] / (2.0 * N);
        dev = std::max(dev, std::abs(lhs.values[k] - rhs));
        sup = std::max(sup, std::abs(lhs.values[k]));
    }
    return sup > 0.0 ? dev / sup : dev;
}

}  // namespace qmwave
