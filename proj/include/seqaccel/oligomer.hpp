#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "linear.hpp"
#include "log_accel.hpp"
#include "sequence.hpp"
#include "tableau.hpp"

namespace seqaccel {

struct EnergyRow {
    int n_units = 0; // repeat-unit count N
    double energy = 0.0;
};

// Total energies of oligomers with N = 1,2,3,... repeat units. The original
// decimal strings ride along when the table came from text, so derived
// sequences keep the exact scaled view (see RealSequence).
struct EnergyTable {
    std::vector<EnergyRow> rows;
    std::vector<std::string> energy_text; // empty, or one string per row
    std::string label;

    void validate() const {
        if (rows.empty()) throw InsufficientDataError("energy table is empty");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].n_units != static_cast<int>(i) + 1)
                throw DomainError("energy table rows must run N = 1,2,3,... without gaps");
            if (!std::isfinite(rows[i].energy))
                throw DomainError("energy table contains a non-finite energy");
        }
        if (!energy_text.empty() && energy_text.size() != rows.size())
            throw DomainError("energy table text column length mismatch");
    }
};

namespace detail {

inline RealSequence energies_sequence(const EnergyTable& t) {
    if (!t.energy_text.empty())
        return sequence_from_decimals(t.energy_text, t.label, SequenceSource::fixture);
    std::vector<double> v;
    v.reserve(t.rows.size());
    for (const auto& r : t.rows) v.push_back(r.energy);
    return make_sequence(std::move(v), t.label, SequenceSource::generated);
}

} // namespace detail

// s_n = E_{n+1}/(n+1): energy per repeat unit. Carries a 1/N end-group term.
inline RealSequence average_energies(const EnergyTable& t) {
    t.validate();
    RealSequence e = detail::energies_sequence(t);
    RealSequence out;
    out.label = t.label.empty() ? "e_av" : t.label + ".e_av";
    out.source = e.source;
    out.values.reserve(e.size());
    for (std::size_t n = 0; n < e.size(); ++n)
        out.values.push_back(e.values[n] / (static_cast<double>(n) + 1.0));
    if (!e.scaled.empty()) {
        out.shift = e.shift;
        out.quantum = e.quantum;
        out.scaled.reserve(e.size());
        for (std::size_t n = 0; n < e.size(); ++n)
            out.scaled.push_back(e.scaled[n] / (static_cast<double>(n) + 1.0));
    }
    return out;
}

// s_n = E_{n+2} - E_{n+1}: incremental energy per added unit; end effects
// cancel and the tail decays exponentially. Scaled differences are exact.
inline RealSequence energy_differences(const EnergyTable& t) {
    t.validate();
    if (t.rows.size() < 2) throw InsufficientDataError("energy differences need >= 2 rows");
    RealSequence e = detail::energies_sequence(t);
    RealSequence out;
    out.label = t.label.empty() ? "e_dif" : t.label + ".e_dif";
    out.source = e.source;
    out.values.reserve(e.size() - 1);
    for (std::size_t n = 0; n + 1 < e.size(); ++n)
        out.values.push_back(e.values[n + 1] - e.values[n]);
    if (!e.scaled.empty()) {
        out.shift = e.shift;
        out.quantum = 2.0 * e.quantum; // difference of two quantized values
        out.scaled.reserve(e.size() - 1);
        for (std::size_t n = 0; n + 1 < e.size(); ++n)
            out.scaled.push_back(e.scaled[n + 1] - e.scaled[n]);
    }
    return out;
}

struct ChainLimitReport {
    EstimateReport e_dif_limit; // the primary infinite-chain estimate
    EstimateReport e_av_limit;  // cross-check only
    ConvergenceClass classification_dif;
    ConvergenceClass classification_av;
    Method method_dif = Method::epsilon;
    Method method_av = Method::epsilon;
    Tableau tableau_dif;
    Tableau tableau_av;
};

namespace detail {

// Auto-mode method map: geometric-looking tails go to epsilon; clean
// logarithmic decay with a credible alpha goes to the weighted delta^2 with
// that alpha; anything else falls back to Richardson at beta = 1 (or epsilon
// when the diagnostics gave nothing to work with).
inline AcceleratorConfig pick_method(const ConvergenceClass& cls) {
    AcceleratorConfig cfg;
    switch (cls.kind) {
    case ConvergenceKind::linear:
    case ConvergenceKind::exponential_tail:
        cfg.method = Method::epsilon;
        break;
    case ConvergenceKind::logarithmic:
        if (cls.alpha_hat && *cls.alpha_hat > 0.0) {
            cfg.method = Method::bdg;
            cfg.alpha = *cls.alpha_hat;
        } else {
            cfg.method = Method::richardson_standard;
        }
        break;
    default:
        cfg.method = Method::epsilon;
        break;
    }
    return cfg;
}

inline ConvergenceClass classify_or_note(const RealSequence& s, double tol) {
    if (s.size() < 5) {
        ConvergenceClass c;
        c.note = "sequence too short to classify";
        return c;
    }
    return classify(s, tol);
}

} // namespace detail

// The end-to-end workflow: derive both sequences, classify them, extrapolate
// the energy differences as the primary estimate and the averages as a
// cross-check.
inline ChainLimitReport chain_limit(const EnergyTable& t,
                                    std::optional<AcceleratorConfig> cfg = std::nullopt) {
    t.validate();
    if (!cfg && t.rows.size() < 5)
        throw InsufficientDataError("auto chain_limit needs at least 5 rows");
    if (t.rows.size() < 4)
        throw InsufficientDataError("chain_limit needs at least 4 rows");

    double tol = cfg ? cfg->breakdown_tol : default_breakdown_tol;
    RealSequence e_av = average_energies(t);
    RealSequence e_dif = energy_differences(t);

    ChainLimitReport rep;
    rep.classification_av = detail::classify_or_note(e_av, tol);
    rep.classification_dif = detail::classify_or_note(e_dif, tol);

    AcceleratorConfig cfg_dif = cfg ? *cfg : detail::pick_method(rep.classification_dif);
    AcceleratorConfig cfg_av = cfg ? *cfg : detail::pick_method(rep.classification_av);

    rep.method_dif = cfg_dif.method;
    rep.method_av = cfg_av.method;
    rep.tableau_dif = build_tableau(e_dif, cfg_dif);
    rep.tableau_av = build_tableau(e_av, cfg_av);
    rep.e_dif_limit = select_best(rep.tableau_dif);
    rep.e_av_limit = select_best(rep.tableau_av);
    return rep;
}

} // namespace seqaccel
