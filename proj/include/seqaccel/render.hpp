#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diagnostics.hpp"
#include "euler_maclaurin.hpp"
#include "oligomer.hpp"
#include "tableau.hpp"

namespace seqaccel {

// 17 significant digits: enough to reparse to the identical double.
inline std::string format_sig17(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, p);
}

inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    return format_sig17(v);
}

inline std::string json_number(const std::optional<double>& v) {
    return v ? json_number(*v) : "null";
}

inline std::string json_string(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char esc[8];
                std::snprintf(esc, sizeof esc, "\\u%04x", c);
                out += esc;
            } else {
                out += c;
            }
        }
    }
    out += '"';
    return out;
}

namespace detail {

template <typename T, typename F>
std::string json_array(const std::vector<T>& xs, F&& elem) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += elem(xs[i]);
    }
    out += "]";
    return out;
}

inline std::string report_json(const EstimateReport& r) {
    std::string out = "{";
    out += "\"estimate\":" + json_number(r.estimate);
    out += ",\"k\":" + std::to_string(r.order_k);
    out += ",\"n\":" + std::to_string(r.start_n);
    out += ",\"stage_deltas\":" +
           json_array(r.stage_deltas, [](double d) { return json_number(d); });
    out += "}";
    return out;
}

inline std::string classification_json(const ConvergenceClass& c, bool evidence) {
    std::string out = "{";
    out += "\"kind\":" + json_string(convergence_kind_name(c.kind));
    out += ",\"rho_hat\":" + json_number(c.rho_hat);
    out += ",\"alpha_hat\":" + json_number(c.alpha_hat);
    out += ",\"reliable_ratios\":" + std::to_string(c.reliable_ratios);
    out += ",\"note\":" + json_string(c.note);
    if (evidence) {
        auto opt = [](const std::optional<double>& v) { return json_number(v); };
        out += ",\"ratios\":" + json_array(c.ratios, opt);
        out += ",\"decay\":" + json_array(c.decay, opt);
    }
    out += "}";
    return out;
}

} // namespace detail

inline std::string tableau_json(const Tableau& t, const EstimateReport& r,
                                const AcceleratorConfig& cfg) {
    std::string out = "{";
    out += "\"method\":" + json_string(method_name(t.method));
    out += ",\"params\":{\"beta\":" + json_number(cfg.beta);
    if (cfg.alpha) out += ",\"alpha\":" + json_number(*cfg.alpha);
    out += ",\"tol\":" + json_number(t.breakdown_tol) + "}";
    out += ",\"columns\":" + detail::json_array(t.columns, [](const TableauColumn& c) {
        std::string col = "{\"k\":" + std::to_string(c.k);
        col += ",\"auxiliary\":" + std::string(c.auxiliary ? "true" : "false");
        col += ",\"entries\":[";
        for (std::size_t n = 0; n < c.entries.size(); ++n) {
            const auto& e = c.entries[n];
            if (n) col += ",";
            col += "{\"n\":" + std::to_string(n);
            col += ",\"value\":" + json_number(e.value);
            col += ",\"valid\":" + std::string(e.valid ? "true" : "false");
            if (!e.valid) col += ",\"reason\":" + json_string(e.reason);
            col += "}";
        }
        col += "]}";
        return col;
    });
    out += ",\"report\":" + detail::report_json(r);
    out += "}";
    return out;
}

inline std::string classify_json(const ConvergenceClass& c) {
    return detail::classification_json(c, true);
}

inline std::string zeta_json(const ZetaTailExpansion& tail, double partial_sum) {
    std::string out = "{";
    out += "\"z\":" + json_number(tail.z);
    out += ",\"n\":" + std::to_string(tail.n);
    out += ",\"k\":" + std::to_string(tail.k);
    out += ",\"partial_sum\":" + json_number(partial_sum);
    out += ",\"integral_term\":" + json_number(tail.integral_term);
    out += ",\"half_term\":" + json_number(tail.half_term);
    out += ",\"bernoulli_terms\":" +
           detail::json_array(tail.bernoulli_terms, [](double d) { return json_number(d); });
    out += ",\"total\":" + json_number(partial_sum + tail.total());
    out += "}";
    return out;
}

inline std::string oligomer_json(const ChainLimitReport& r) {
    std::string out = "{";
    out += "\"e_dif_limit\":" + detail::report_json(r.e_dif_limit);
    out += ",\"e_av_limit\":" + detail::report_json(r.e_av_limit);
    out += ",\"method_dif\":" + json_string(method_name(r.method_dif));
    out += ",\"method_av\":" + json_string(method_name(r.method_av));
    out += ",\"classification_dif\":" + detail::classification_json(r.classification_dif, false);
    out += ",\"classification_av\":" + detail::classification_json(r.classification_av, false);
    out += "}";
    return out;
}

// Plain-text views. Invalid entries render as "-" so columns stay aligned.
inline std::string report_text(const EstimateReport& r) {
    std::string out = "estimate " + format_sig17(r.estimate);
    out += "  (column k=" + std::to_string(r.order_k);
    out += ", entry n=" + std::to_string(r.start_n) + ")\n";
    if (r.degraded) out += "warning: no transformed column was usable; this is the raw tail\n";
    out += "stage deltas:";
    for (std::size_t i = 0; i < r.stage_deltas.size(); ++i) {
        out += " k=" + std::to_string(r.stage_orders[i]) + ":" +
               format_sig17(r.stage_deltas[i]);
    }
    out += "\n";
    return out;
}

inline std::string tableau_text(const Tableau& t, const EstimateReport& r) {
    std::string out = "method " + std::string(method_name(t.method)) + "\n";
    std::vector<const TableauColumn*> cols;
    for (const auto& c : t.columns)
        if (!c.auxiliary) cols.push_back(&c);
    out += "n";
    for (auto* c : cols) out += "\tk=" + std::to_string(c->k);
    out += "\n";
    for (std::size_t n = 0; n < t.input_len; ++n) {
        out += std::to_string(n);
        for (auto* c : cols) {
            out += "\t";
            if (n < c->entries.size() && c->entries[n].valid)
                out += format_sig17(c->entries[n].value);
            else
                out += "-";
        }
        out += "\n";
    }
    out += report_text(r);
    return out;
}

inline std::string classify_text(const ConvergenceClass& c) {
    std::string out = "kind " + std::string(convergence_kind_name(c.kind)) + "\n";
    if (c.rho_hat) out += "rho_hat " + format_sig17(*c.rho_hat) + "\n";
    if (c.alpha_hat) out += "alpha_hat " + format_sig17(*c.alpha_hat) + "\n";
    out += "reliable ratios " + std::to_string(c.reliable_ratios) + "\n";
    out += "note " + c.note + "\n";
    out += "n\tratio\tdecay\n";
    for (std::size_t n = 0; n < c.ratios.size(); ++n) {
        out += std::to_string(n) + "\t";
        out += c.ratios[n] ? format_sig17(*c.ratios[n]) : std::string("-");
        out += "\t";
        out += (n < c.decay.size() && c.decay[n]) ? format_sig17(*c.decay[n])
                                                  : std::string("-");
        out += "\n";
    }
    return out;
}

inline std::string zeta_text(const ZetaTailExpansion& tail, double partial_sum) {
    std::string out;
    out += "partial_sum    " + format_sig17(partial_sum) + "\n";
    out += "integral_term  " + format_sig17(tail.integral_term) + "\n";
    out += "half_term      " + format_sig17(tail.half_term) + "\n";
    for (std::size_t j = 0; j < tail.bernoulli_terms.size(); ++j)
        out += "bernoulli_" + std::to_string(j + 1) + "    " +
               format_sig17(tail.bernoulli_terms[j]) + "\n";
    out += "total          " + format_sig17(partial_sum + tail.total()) + "\n";
    return out;
}

inline std::string oligomer_text(const ChainLimitReport& r) {
    std::string out;
    out += "difference pipeline: method " + std::string(method_name(r.method_dif));
    out += ", class " + std::string(convergence_kind_name(r.classification_dif.kind));
    if (r.classification_dif.rho_hat)
        out += " (rho_hat " + format_sig17(*r.classification_dif.rho_hat) + ")";
    out += "\n";
    out += "  chain limit " + format_sig17(r.e_dif_limit.estimate);
    out += "  (k=" + std::to_string(r.e_dif_limit.order_k);
    out += ", n=" + std::to_string(r.e_dif_limit.start_n) + ")\n";
    out += "average pipeline:    method " + std::string(method_name(r.method_av));
    out += ", class " + std::string(convergence_kind_name(r.classification_av.kind));
    if (r.classification_av.alpha_hat)
        out += " (alpha_hat " + format_sig17(*r.classification_av.alpha_hat) + ")";
    out += "\n";
    out += "  chain limit " + format_sig17(r.e_av_limit.estimate);
    out += "  (k=" + std::to_string(r.e_av_limit.order_k);
    out += ", n=" + std::to_string(r.e_av_limit.start_n) + ")\n";
    return out;
}

} // namespace seqaccel
