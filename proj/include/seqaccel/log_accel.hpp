#pragma once

#include <cmath>
#include <vector>

#include "linear.hpp"
#include "points.hpp"
#include "sequence.hpp"
#include "tableau.hpp"

namespace seqaccel {

namespace detail {

inline Tableau start_tableau(Method m, const RealSequence& s, double tol) {
    Tableau t;
    t.method = m;
    t.input_len = s.size();
    t.breakdown_tol = tol;
    t.columns.push_back(input_column(s));
    return t;
}

} // namespace detail

// Neville scheme extrapolating to x = 0; column k is exact for
// s_n = s + sum_{j<k} c_j x_n^{j+1}.
inline Tableau richardson_general(const RealSequence& s, const InterpolationPoints& pts,
                                  const AcceleratorConfig& cfg = {}) {
    if (s.size() < 2) throw InsufficientDataError("richardson_general needs at least 2 values");
    pts.require_decreasing(s.size());
    Tableau t = detail::start_tableau(Method::richardson_general, s, cfg.breakdown_tol);

    for (std::size_t k = 1; k < s.size(); ++k) {
        const auto& prev = t.columns[k - 1].entries;
        TableauColumn col;
        col.k = static_cast<int>(k);
        for (std::size_t n = 0; n + 1 < prev.size(); ++n) {
            if (!prev[n].valid || !prev[n + 1].valid) {
                col.entries.push_back(TableauEntry::bad(detail::kUpstreamMsg));
                continue;
            }
            double x0 = pts(n), x1 = pts(n + k);
            double den = x0 - x1;
            if (!guard_denominator(den, std::max(std::abs(x0), std::abs(x1)), cfg.breakdown_tol)) {
                col.entries.push_back(TableauEntry::bad(detail::kBreakdownMsg));
                continue;
            }
            col.entries.push_back(
                TableauEntry::ok((x0 * prev[n + 1].value - x1 * prev[n].value) / den));
        }
        t.columns.push_back(std::move(col));
    }
    return t;
}

// Closed form of the same scheme at x_n = 1/(n+beta); no data-dependent
// divisions, so entries only go invalid upstream.
inline Tableau richardson_standard(const RealSequence& s, double beta,
                                   const AcceleratorConfig& cfg = {}) {
    if (s.size() < 2) throw InsufficientDataError("richardson_standard needs at least 2 values");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    Tableau t = detail::start_tableau(Method::richardson_standard, s, cfg.breakdown_tol);

    for (std::size_t k = 1; k < s.size(); ++k) {
        const auto& prev = t.columns[k - 1].entries;
        TableauColumn col;
        col.k = static_cast<int>(k);
        for (std::size_t n = 0; n + 1 < prev.size(); ++n) {
            if (!prev[n].valid || !prev[n + 1].valid) {
                col.entries.push_back(TableauEntry::bad(detail::kUpstreamMsg));
                continue;
            }
            double step = (beta + static_cast<double>(n)) / static_cast<double>(k) *
                          (prev[n + 1].value - prev[n].value);
            col.entries.push_back(TableauEntry::ok(prev[n + 1].value + step));
        }
        t.columns.push_back(std::move(col));
    }
    return t;
}

namespace detail {

// Shared three-term rho shape: entry = prev2[n+1] + numer(k, n) / (prev[n+1] - prev[n]).
template <typename Numer>
inline Tableau rho_like(Method m, const RealSequence& s, double tol, Numer numer) {
    Tableau t = start_tableau(m, s, tol);
    for (std::size_t k = 1; k < s.size(); ++k) {
        const auto& prev = t.columns[k - 1].entries;
        TableauColumn col;
        col.k = static_cast<int>(k);
        col.auxiliary = (k % 2) != 0;
        for (std::size_t n = 0; n + 1 < prev.size(); ++n) {
            bool left_ok = k == 1 || t.columns[k - 2].entries[n + 1].valid;
            if (!prev[n].valid || !prev[n + 1].valid || !left_ok) {
                col.entries.push_back(TableauEntry::bad(kUpstreamMsg));
                continue;
            }
            double den = prev[n + 1].value - prev[n].value;
            if (!guard_denominator(den, std::max(std::abs(prev[n].value), std::abs(prev[n + 1].value)),
                                   tol)) {
                col.entries.push_back(TableauEntry::bad(kBreakdownMsg));
                continue;
            }
            double left = k == 1 ? 0.0 : t.columns[k - 2].entries[n + 1].value;
            col.entries.push_back(TableauEntry::ok(left + numer(k, n) / den));
        }
        t.columns.push_back(std::move(col));
    }
    return t;
}

// Shared weighted-delta^2 shape for the iterated rho family; column k+1
// consumes two more inputs than column k.
template <typename Step>
inline Tableau iterated_like(Method m, const RealSequence& s, double tol, Step step) {
    if (s.size() < 3) throw InsufficientDataError("iterated rho needs at least 3 values");
    Tableau t = start_tableau(m, s, tol);
    std::size_t k = 0;
    while (t.columns.back().entries.size() >= 3) {
        const auto& prev = t.columns.back().entries;
        TableauColumn col;
        col.k = static_cast<int>(k + 1);
        for (std::size_t n = 0; n + 2 < prev.size(); ++n) {
            if (!prev[n].valid || !prev[n + 1].valid || !prev[n + 2].valid) {
                col.entries.push_back(TableauEntry::bad(kUpstreamMsg));
                continue;
            }
            auto e = step(k, n, prev[n].value, prev[n + 1].value, prev[n + 2].value);
            col.entries.push_back(std::move(e));
        }
        t.columns.push_back(std::move(col));
        ++k;
    }
    return t;
}

} // namespace detail

// Wynn's rho: rational extrapolation to x -> infinity. Even columns are the
// reportable estimates, matching the (k,k) Thiele interpolant limit.
inline Tableau rho_general(const RealSequence& s, const InterpolationPoints& pts,
                           const AcceleratorConfig& cfg = {}) {
    if (s.empty()) throw InsufficientDataError("rho_general needs a nonempty sequence");
    pts.require_increasing(s.size());
    Tableau t = detail::rho_like(Method::rho_general, s, cfg.breakdown_tol,
                                 [&pts](std::size_t k, std::size_t n) { return pts(n + k) - pts(n); });
    return t;
}

// Osada's variant: for remainders (n+beta)^(-alpha) * (power series in
// 1/(n+beta)) the even-column error improves to O(n^(-alpha-2k)).
inline Tableau osada(const RealSequence& s, double alpha, const AcceleratorConfig& cfg = {}) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    if (s.empty()) throw InsufficientDataError("osada needs a nonempty sequence");
    return detail::rho_like(Method::osada, s, cfg.breakdown_tol,
                            [alpha](std::size_t k, std::size_t) {
                                return static_cast<double>(k) - 1.0 + alpha;
                            });
}

// Standard rho is Osada at alpha = 1 (numerators k+1): same expressions, so
// results are bit-identical by construction.
inline Tableau rho_standard(const RealSequence& s, const AcceleratorConfig& cfg = {}) {
    Tableau t = osada(s, 1.0, cfg);
    t.method = Method::rho_standard;
    return t;
}

inline Tableau rho_iterated_general(const RealSequence& s, const InterpolationPoints& pts,
                                    const AcceleratorConfig& cfg = {}) {
    pts.require_increasing(s.size());
    double tol = cfg.breakdown_tol;
    return detail::iterated_like(
        Method::rho_iterated_general, s, tol,
        [&pts, tol](std::size_t k, std::size_t n, double g0, double g1, double g2) {
            double d0 = g1 - g0, d1 = g2 - g1;
            double t1 = (pts(n + 2 * k + 2) - pts(n + 1)) * d0;
            double t2 = (pts(n + 2 * k + 1) - pts(n)) * d1;
            double den = t1 - t2;
            if (!guard_denominator(den, std::max(std::abs(t1), std::abs(t2)), tol))
                return TableauEntry::bad(detail::kBreakdownMsg);
            return TableauEntry::ok(g1 + (pts(n + 2 * k + 2) - pts(n)) * d1 * d0 / den);
        });
}

// Weighted delta^2 with the (2k+alpha+1)/(2k+alpha) factor.
inline Tableau bdg(const RealSequence& s, double alpha, const AcceleratorConfig& cfg = {}) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    double tol = cfg.breakdown_tol;
    return detail::iterated_like(
        Method::bdg, s, tol,
        [alpha, tol](std::size_t k, std::size_t, double g0, double g1, double g2) {
            double d0 = g1 - g0, d1 = g2 - g1;
            double den = d1 - d0;
            if (!guard_denominator(den, std::max(std::abs(d0), std::abs(d1)), tol))
                return TableauEntry::bad(detail::kBreakdownMsg);
            double f = (2.0 * static_cast<double>(k) + alpha + 1.0) /
                       (2.0 * static_cast<double>(k) + alpha);
            return TableauEntry::ok(g1 - f * d1 * d0 / den);
        });
}

// BDG at alpha = 1: the standard iterated rho, bit-identical by construction.
inline Tableau rho_iterated_standard(const RealSequence& s, const AcceleratorConfig& cfg = {}) {
    Tableau t = bdg(s, 1.0, cfg);
    t.method = Method::rho_iterated_standard;
    return t;
}

// Least-squares slope of log|err| against log(n+1) over the last third of a
// column; the asymptotic-order checks all use this protocol.
inline double fit_log_error_slope(const TableauColumn& col, double limit) {
    std::vector<double> xs, ys;
    std::size_t cnt = col.entries.size();
    std::size_t lo = cnt > std::max<std::size_t>(3, cnt / 3) ? cnt - std::max<std::size_t>(3, cnt / 3) : 0;
    for (std::size_t n = lo; n < cnt; ++n) {
        if (!col.entries[n].valid) continue;
        double err = std::abs(col.entries[n].value - limit);
        if (err <= 0.0) continue;
        xs.push_back(std::log(static_cast<double>(n) + 1.0));
        ys.push_back(std::log(err));
    }
    if (xs.size() < 2) throw InsufficientDataError("not enough points for a slope fit");
    double xb = 0, yb = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) { xb += xs[i]; yb += ys[i]; }
    xb /= static_cast<double>(xs.size());
    yb /= static_cast<double>(xs.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xb) * (ys[i] - yb);
        den += (xs[i] - xb) * (xs[i] - xb);
    }
    return num / den;
}

// Dispatch by config; the entry point the CLI uses.
inline Tableau build_tableau(const RealSequence& s, const AcceleratorConfig& cfg) {
    cfg.validate();
    switch (cfg.method) {
    case Method::aitken_iterated: return aitken_iterated(s, cfg).tableau;
    case Method::epsilon: return wynn_epsilon(s, cfg).tableau;
    case Method::richardson_general:
        return richardson_general(
            s, cfg.points ? *cfg.points : InterpolationPoints::reciprocal(cfg.beta), cfg);
    case Method::richardson_standard: return richardson_standard(s, cfg.beta, cfg);
    case Method::rho_general:
        return rho_general(s, cfg.points ? *cfg.points : InterpolationPoints::linear(), cfg);
    case Method::rho_standard: return rho_standard(s, cfg);
    case Method::rho_iterated_general:
        return rho_iterated_general(s, cfg.points ? *cfg.points : InterpolationPoints::linear(),
                                    cfg);
    case Method::rho_iterated_standard: return rho_iterated_standard(s, cfg);
    case Method::osada: return osada(s, *cfg.alpha, cfg);
    case Method::bdg: return bdg(s, *cfg.alpha, cfg);
    }
    throw DomainError("unknown method");
}

} // namespace seqaccel
