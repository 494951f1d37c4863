#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sequence.hpp"
#include "tableau.hpp"

namespace seqaccel {

struct LinearMethodResult {
    Tableau tableau;
    EstimateReport report;
};

namespace detail {

inline const char* kBreakdownMsg = "denominator below tolerance";
inline const char* kUpstreamMsg = "depends on invalid entry";

inline TableauColumn input_column(const RealSequence& s) {
    TableauColumn c;
    c.k = 0;
    c.entries.reserve(s.size());
    for (double v : s.values) c.entries.push_back(TableauEntry::ok(v));
    return c;
}

} // namespace detail

// One Aitken step at a single index: s_n - (delta s_n)^2 / (delta^2 s_n).
// Exact on s_n = s + c*lambda^n for any |lambda| != 1, divergent input included.
inline double aitken_delta2(const RealSequence& s, std::size_t n,
                            double tol = default_breakdown_tol) {
    if (n + 2 >= s.size())
        throw IndexError("aitken_delta2 needs s[n..n+2], have len " + std::to_string(s.size()));
    double d0 = s.values[n + 1] - s.values[n];
    double d1 = s.values[n + 2] - s.values[n + 1];
    double dd = d1 - d0;
    if (!guard_denominator(dd, std::max(std::abs(d0), std::abs(d1)), tol))
        throw BreakdownError("aitken_delta2: second difference below tolerance");
    return s.values[n] - d0 * d0 / dd;
}

// Iterated Aitken: column k+1 applies the delta^2 step to column k.
inline LinearMethodResult aitken_iterated(const RealSequence& s, const AcceleratorConfig& cfg) {
    cfg.validate();
    if (s.size() < 3) throw InsufficientDataError("aitken_iterated needs at least 3 values");

    Tableau t;
    t.method = Method::aitken_iterated;
    t.input_len = s.size();
    t.breakdown_tol = cfg.breakdown_tol;
    t.columns.push_back(detail::input_column(s));

    while (t.columns.back().entries.size() >= 3) {
        const auto& prev = t.columns.back().entries;
        TableauColumn col;
        col.k = t.columns.back().k + 1;
        col.entries.reserve(prev.size() - 2);
        for (std::size_t n = 0; n + 2 < prev.size(); ++n) {
            if (!prev[n].valid || !prev[n + 1].valid || !prev[n + 2].valid) {
                col.entries.push_back(TableauEntry::bad(detail::kUpstreamMsg));
                continue;
            }
            double d0 = prev[n + 1].value - prev[n].value;
            double d1 = prev[n + 2].value - prev[n + 1].value;
            double dd = d1 - d0;
            if (!guard_denominator(dd, std::max(std::abs(d0), std::abs(d1)), cfg.breakdown_tol)) {
                col.entries.push_back(TableauEntry::bad(detail::kBreakdownMsg));
                continue;
            }
            col.entries.push_back(TableauEntry::ok(prev[n].value - d0 * d0 / dd));
        }
        t.columns.push_back(std::move(col));
    }
    LinearMethodResult r{std::move(t), {}};
    r.report = select_best(r.tableau);
    return r;
}

// Wynn's epsilon recursion; odd columns are auxiliary bookkeeping that blow
// up as the even columns converge, so they are flagged and never reported.
inline LinearMethodResult wynn_epsilon(const RealSequence& s, const AcceleratorConfig& cfg) {
    cfg.validate();
    if (s.empty()) throw InsufficientDataError("wynn_epsilon needs a nonempty sequence");

    Tableau t;
    t.method = Method::epsilon;
    t.input_len = s.size();
    t.breakdown_tol = cfg.breakdown_tol;
    t.columns.push_back(detail::input_column(s));

    for (int k = 1; static_cast<std::size_t>(k) < s.size(); ++k) {
        const auto& prev = t.columns[static_cast<std::size_t>(k - 1)].entries;
        TableauColumn col;
        col.k = k;
        col.auxiliary = (k % 2) != 0;
        col.entries.reserve(prev.size() - 1);
        for (std::size_t n = 0; n + 1 < prev.size(); ++n) {
            bool left_ok = k == 1 || t.columns[static_cast<std::size_t>(k - 2)].entries[n + 1].valid;
            if (!prev[n].valid || !prev[n + 1].valid || !left_ok) {
                col.entries.push_back(TableauEntry::bad(detail::kUpstreamMsg));
                continue;
            }
            double den = prev[n + 1].value - prev[n].value;
            if (!guard_denominator(den, std::max(std::abs(prev[n].value), std::abs(prev[n + 1].value)),
                                   cfg.breakdown_tol)) {
                col.entries.push_back(TableauEntry::bad(detail::kBreakdownMsg));
                continue;
            }
            double left = k == 1 ? 0.0 : t.columns[static_cast<std::size_t>(k - 2)].entries[n + 1].value;
            col.entries.push_back(TableauEntry::ok(left + 1.0 / den));
        }
        t.columns.push_back(std::move(col));
    }
    LinearMethodResult r{std::move(t), {}};
    r.report = select_best(r.tableau);
    return r;
}

struct EpsilonStage {
    int k = 0;
    std::vector<TableauEntry> column;
    double agreement = std::numeric_limits<double>::quiet_NaN();
};

struct StagedEpsilonResult {
    std::vector<EpsilonStage> stages;
    Tableau tableau; // truncated at the last stage actually computed
    EstimateReport report;
};

// The staged driver: emit even epsilon columns one at a time, each scored by
// agreement with the previous even column, halting once agreement degrades
// (or data runs out). The report comes from select_best over what was built.
inline StagedEpsilonResult epsilon_staged(const RealSequence& s, const AcceleratorConfig& cfg) {
    if (s.size() < 3) throw InsufficientDataError("epsilon_staged needs at least 3 values");
    LinearMethodResult full = wynn_epsilon(s, cfg);

    StagedEpsilonResult out;
    out.report = full.report;

    int last_k = out.report.stage_orders.empty() ? 0 : out.report.stage_orders.back();
    for (std::size_t i = 0; i < out.report.stage_orders.size(); ++i) {
        int k = out.report.stage_orders[i];
        EpsilonStage st;
        st.k = k;
        st.column = full.tableau.columns[static_cast<std::size_t>(k)].entries;
        st.agreement = out.report.stage_deltas[i];
        out.stages.push_back(std::move(st));
    }
    out.tableau = std::move(full.tableau);
    if (last_k > 0 && static_cast<std::size_t>(last_k) + 1 < out.tableau.columns.size())
        out.tableau.columns.resize(static_cast<std::size_t>(last_k) + 1);
    return out;
}

} // namespace seqaccel
