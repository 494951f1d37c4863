#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "points.hpp"

namespace seqaccel {

enum class Method {
    aitken_iterated,
    epsilon,
    richardson_general,
    richardson_standard,
    rho_general,
    rho_standard,
    rho_iterated_general,
    rho_iterated_standard,
    osada,
    bdg,
};

inline std::string_view method_name(Method m) {
    switch (m) {
    case Method::aitken_iterated: return "aitken_iterated";
    case Method::epsilon: return "epsilon";
    case Method::richardson_general: return "richardson_general";
    case Method::richardson_standard: return "richardson_standard";
    case Method::rho_general: return "rho_general";
    case Method::rho_standard: return "rho_standard";
    case Method::rho_iterated_general: return "rho_iterated_general";
    case Method::rho_iterated_standard: return "rho_iterated_standard";
    case Method::osada: return "osada";
    case Method::bdg: return "bdg";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::aitken_iterated, Method::epsilon, Method::richardson_general,
                     Method::richardson_standard, Method::rho_general, Method::rho_standard,
                     Method::rho_iterated_general, Method::rho_iterated_standard, Method::osada,
                     Method::bdg}) {
        if (method_name(m) == name) return m;
    }
    return std::nullopt;
}

inline constexpr double default_breakdown_tol = 1e-13;

// True when it is safe to divide by den. scale should be the magnitude of the
// operands that formed den, so the test is relative where the data is large
// and absolute (against max(scale,1)) where it is tiny.
inline bool guard_denominator(double den, double scale, double tol) {
    return std::abs(den) > tol * std::max(scale, 1.0);
}

struct AcceleratorConfig {
    Method method = Method::epsilon;
    double beta = 1.0;
    std::optional<double> alpha;                  // required by osada/bdg
    std::optional<InterpolationPoints> points;    // defaulted per method when absent
    double breakdown_tol = default_breakdown_tol;

    void validate() const {
        if (!(beta > 0.0)) throw DomainError("beta must be positive");
        if (!(breakdown_tol > 0.0)) throw DomainError("breakdown_tol must be positive");
        bool needs_alpha = method == Method::osada || method == Method::bdg;
        if (needs_alpha && !alpha) throw DomainError("method requires alpha");
        if (alpha && !(*alpha > 0.0)) throw DomainError("alpha must be positive");
    }
};

struct TableauEntry {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool valid = false;
    std::string reason; // empty when valid

    static TableauEntry ok(double v) { return {v, true, {}}; }
    static TableauEntry bad(std::string why) {
        return {std::numeric_limits<double>::quiet_NaN(), false, std::move(why)};
    }
};

struct TableauColumn {
    int k = 0;
    bool auxiliary = false; // odd epsilon/rho columns: never reported
    std::vector<TableauEntry> entries;
};

struct Tableau {
    Method method = Method::epsilon;
    std::size_t input_len = 0;
    double breakdown_tol = default_breakdown_tol;
    std::vector<TableauColumn> columns; // columns[j].k == j, k=0 is the input

    bool has(int k, int n) const noexcept {
        return k >= 0 && static_cast<std::size_t>(k) < columns.size() && n >= 0 &&
               static_cast<std::size_t>(n) < columns[static_cast<std::size_t>(k)].entries.size();
    }
    const TableauEntry& at(int k, int n) const {
        if (!has(k, n))
            throw IndexError("no tableau entry (k=" + std::to_string(k) +
                             ", n=" + std::to_string(n) + ")");
        return columns[static_cast<std::size_t>(k)].entries[static_cast<std::size_t>(n)];
    }
};

struct EstimateReport {
    double estimate = std::numeric_limits<double>::quiet_NaN();
    int order_k = 0;
    int start_n = 0;
    std::vector<double> stage_deltas; // one per reportable column walked
    std::vector<int> stage_orders;    // the matching k values
    double valid_fraction = 0.0;
    bool degraded = false; // true: nothing beyond k=0 was usable
};

namespace detail {

struct WalkPolicy {
    int first_k, stride, parent_back, shift;
};

inline WalkPolicy walk_policy(Method m) {
    switch (m) {
    case Method::epsilon:
    case Method::rho_general:
    case Method::rho_standard:
    case Method::osada:
        return {2, 2, 2, 2}; // even columns, parent two back, aligned at n+2
    case Method::richardson_general:
    case Method::richardson_standard:
        return {1, 1, 1, 1};
    default: // aitken and the iterated-rho family consume two inputs per column
        return {1, 1, 1, 2};
    }
}

} // namespace detail

// Pick the reporting entry: walk reportable columns in increasing k, scoring
// each by its agreement with the previous reportable column over the last few
// shared entries (the tableau frontier, where the data is freshest); stop
// walking after the first column that agrees worse than its predecessor, then
// report the best-agreeing column at its largest valid index. Columns beyond
// the first degradation are dominated by rounding noise on real data.
inline EstimateReport select_best(const Tableau& t) {
    constexpr int window = 3;
    auto pol = detail::walk_policy(t.method);

    EstimateReport rep;
    std::size_t valid = 0, total = 0;
    for (const auto& col : t.columns) {
        if (col.auxiliary) continue;
        for (const auto& e : col.entries) {
            ++total;
            if (e.valid) ++valid;
        }
    }
    rep.valid_fraction = total ? static_cast<double>(valid) / static_cast<double>(total) : 0.0;

    double prev_delta = -1.0;
    for (int k = pol.first_k; static_cast<std::size_t>(k) < t.columns.size(); k += pol.stride) {
        const auto& col = t.columns[static_cast<std::size_t>(k)];
        const auto& parent = t.columns[static_cast<std::size_t>(k - pol.parent_back)];
        std::vector<double> pairs;
        for (std::size_t n = 0; n < col.entries.size(); ++n) {
            std::size_t pn = n + static_cast<std::size_t>(pol.shift);
            if (!col.entries[n].valid || pn >= parent.entries.size() ||
                !parent.entries[pn].valid)
                continue;
            pairs.push_back(std::abs(col.entries[n].value - parent.entries[pn].value));
        }
        if (pairs.empty()) break;
        std::size_t w = std::min<std::size_t>(window, pairs.size());
        double delta = 0.0;
        for (std::size_t i = pairs.size() - w; i < pairs.size(); ++i)
            delta = std::max(delta, pairs[i]);
        rep.stage_deltas.push_back(delta);
        rep.stage_orders.push_back(k);
        if (prev_delta >= 0.0 && delta > prev_delta) break;
        prev_delta = delta;
    }

    if (rep.stage_deltas.empty()) {
        // nothing beyond the input column: fall back to its last valid value
        rep.degraded = true;
        const auto& base = t.columns.empty() ? TableauColumn{} : t.columns[0];
        for (std::size_t n = base.entries.size(); n-- > 0;) {
            if (base.entries[n].valid) {
                rep.estimate = base.entries[n].value;
                rep.start_n = static_cast<int>(n);
                return rep;
            }
        }
        throw DomainError("tableau has no valid entry at all");
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < rep.stage_deltas.size(); ++i) {
        if (rep.stage_deltas[i] <= rep.stage_deltas[best]) best = i; // ties -> higher k
    }
    int bk = rep.stage_orders[best];
    const auto& col = t.columns[static_cast<std::size_t>(bk)];
    for (std::size_t n = col.entries.size(); n-- > 0;) {
        if (col.entries[n].valid) {
            rep.estimate = col.entries[n].value;
            rep.order_k = bk;
            rep.start_n = static_cast<int>(n);
            return rep;
        }
    }
    throw DomainError("winning column lost its valid entries"); // unreachable
}

} // namespace seqaccel
