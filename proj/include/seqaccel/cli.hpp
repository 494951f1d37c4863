#pragma once

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csv.hpp"
#include "fixtures.hpp"
#include "linear.hpp"
#include "log_accel.hpp"
#include "render.hpp"

namespace seqaccel {

struct RunSpec {
    enum class Command { transform, classify, zeta, oligomer, reproduce };
    enum class Format { table, json };

    Command command = Command::transform;
    std::optional<std::string> input_path;
    std::optional<std::string> fixture;
    AcceleratorConfig accel;
    bool method_given = false; // oligomer picks its own method unless set
    Format output_format = Format::table;
    double z = 0.0; // zeta
    int n = 0;
    int k = 0;
    int table = 0; // reproduce: 0 = all tables plus the worked example
};

// Thrown by parse_args on --help; the caller prints the text and exits 0.
struct HelpRequest {
    std::string text;
};

namespace detail {

inline double default_tol_from_env() {
    const char* env = std::getenv("SEQACCEL_TOL");
    if (!env) return default_breakdown_tol;
    auto v = parse_double(env);
    if (!v || !(*v > 0.0))
        throw UsageError("SEQACCEL_TOL must be a positive number, got '" +
                         std::string(env) + "'");
    return *v;
}

inline InterpolationPoints parse_points(const std::string& text, double beta) {
    if (text == "reciprocal") return InterpolationPoints::reciprocal(beta);
    if (text == "linear") return InterpolationPoints::linear();
    std::vector<double> xs;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view tok(text.data() + start,
                             (comma == std::string::npos ? text.size() : comma) - start);
        auto v = parse_double(trim(tok));
        if (!v)
            throw UsageError("--points expects 'reciprocal', 'linear', or a comma list "
                             "of numbers; bad token '" + std::string(tok) + "'");
        xs.push_back(*v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return InterpolationPoints::explicit_list(std::move(xs));
}

} // namespace detail

inline RunSpec parse_args(const std::vector<std::string>& args) {
    CLI::App app{"sequence-transformation toolkit: extrapolates slowly convergent "
                 "sequences and reproduces the bundled reference tables"};
    app.require_subcommand(1);

    std::string method_s, points_s, input_s, fixture_s, format_s = "table";
    double alpha = 0.0, beta = 1.0;
    double tol = detail::default_tol_from_env();
    double z = 0.0;
    int n = 0, k = 0, table = 0;

    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--input", input_s, "CSV input path, or '-' for stdin");
        sub->add_option("--fixture", fixture_s, "bundled dataset (table1)");
        sub->add_option("--format", format_s, "output format")
            ->check(CLI::IsMember({"table", "json"}));
        sub->add_option("--tol", tol, "breakdown guard tolerance");
    };
    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--alpha", alpha, "decay exponent (required by osada/bdg)");
        sub->add_option("--beta", beta, "index shift for interpolation points");
        sub->add_option("--points", points_s,
                        "interpolation points: reciprocal | linear | x0,x1,...");
    };

    auto* cmd_transform =
        app.add_subcommand("transform", "run one transformation, print tableau and estimate");
    cmd_transform->add_option("--method", method_s, "transformation name")->required();
    add_params(cmd_transform);
    add_io(cmd_transform);

    auto* cmd_classify =
        app.add_subcommand("classify", "diagnose the convergence type of a sequence");
    add_io(cmd_classify);

    auto* cmd_zeta =
        app.add_subcommand("zeta", "sum an inverse-power series by tail expansion");
    cmd_zeta->add_option("--z", z, "exponent, must be > 1")->required();
    cmd_zeta->add_option("--n", n, "partial-sum cutoff")->required();
    cmd_zeta->add_option("--k", k, "number of correction terms")->required();
    cmd_zeta->add_option("--format", format_s, "output format")
        ->check(CLI::IsMember({"table", "json"}));

    auto* cmd_oligomer = app.add_subcommand(
        "oligomer", "extrapolate an energy-per-size table to the infinite chain");
    cmd_oligomer->add_option("--method", method_s,
                             "force this transformation instead of auto selection");
    add_params(cmd_oligomer);
    add_io(cmd_oligomer);

    auto* cmd_reproduce = app.add_subcommand(
        "reproduce", "regenerate the bundled reference tables and tag each cell");
    cmd_reproduce->add_option("--table", table, "render a single table")
        ->check(CLI::Range(1, 4));
    cmd_reproduce->add_option("--tol", tol, "breakdown guard tolerance");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("seqaccel");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success&) {
        throw HelpRequest{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\n\n" + app.help());
    }

    RunSpec spec;
    spec.output_format =
        format_s == "json" ? RunSpec::Format::json : RunSpec::Format::table;
    spec.accel.breakdown_tol = tol;
    spec.accel.beta = beta;

    auto take_io = [&](CLI::App* sub, const char* what) {
        if (!input_s.empty()) spec.input_path = input_s;
        if (!fixture_s.empty()) {
            if (fixture_s != "table1")
                throw UsageError("unknown fixture '" + fixture_s + "' (have: table1)");
            spec.fixture = fixture_s;
        }
        if (!spec.input_path && !spec.fixture)
            throw UsageError(std::string(what) + " requires --input or --fixture");
        (void)sub;
    };
    auto take_params = [&](CLI::App* sub) {
        if (sub->count("--alpha")) spec.accel.alpha = alpha;
        if (!points_s.empty())
            spec.accel.points = detail::parse_points(points_s, beta);
    };
    auto validated = [&] {
        try {
            spec.accel.validate();
        } catch (const DomainError& e) {
            throw UsageError(std::string(e.what()) + "\n\n" + app.help());
        }
    };

    if (cmd_transform->parsed()) {
        spec.command = RunSpec::Command::transform;
        auto m = parse_method(method_s);
        if (!m) throw UsageError("unknown method '" + method_s + "'");
        spec.accel.method = *m;
        take_params(cmd_transform);
        take_io(cmd_transform, "transform");
        validated();
    } else if (cmd_classify->parsed()) {
        spec.command = RunSpec::Command::classify;
        take_io(cmd_classify, "classify");
    } else if (cmd_zeta->parsed()) {
        spec.command = RunSpec::Command::zeta;
        if (!(z > 1.0)) throw UsageError("zeta requires --z > 1");
        spec.z = z;
        spec.n = n;
        spec.k = k;
    } else if (cmd_oligomer->parsed()) {
        spec.command = RunSpec::Command::oligomer;
        if (cmd_oligomer->count("--method")) {
            auto m = parse_method(method_s);
            if (!m) throw UsageError("unknown method '" + method_s + "'");
            spec.accel.method = *m;
            spec.method_given = true;
        }
        take_params(cmd_oligomer);
        take_io(cmd_oligomer, "oligomer");
        if (spec.method_given) validated();
    } else {
        spec.command = RunSpec::Command::reproduce;
        spec.table = table;
    }
    return spec;
}

namespace detail {

inline RealSequence cli_sequence(const RunSpec& spec) {
    if (spec.input_path) return read_sequence_csv(*spec.input_path);
    // table1 as a plain sequence means its difference column: that is the
    // one the bundled diagnostics and tableaus were built from.
    return fixtures::table1_differences_sequence();
}

inline EnergyTable cli_energy_table(const RunSpec& spec) {
    if (spec.input_path) return read_energy_csv(*spec.input_path);
    return fixtures::table1();
}

struct ReproduceStats {
    int cells = 0;
    int mismatches = 0;
};

inline int printed_decimals(const std::string& printed) {
    auto dot = printed.find('.');
    if (dot == std::string::npos) return 0;
    std::size_t end = printed.find_first_of("eE", dot);
    if (end == std::string::npos) end = printed.size();
    return static_cast<int>(end - dot - 1);
}

inline double last_digit_units(const std::string& printed, double units) {
    return units * std::pow(10.0, -printed_decimals(printed));
}

inline std::string pad(std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
}

// Render one regenerated cell at the printed precision and tag it.
inline std::string check_cell(std::optional<double> computed, const std::string& printed,
                              double tol, ReproduceStats& st, std::size_t width = 0) {
    ++st.cells;
    double expect = *parse_double(printed);
    std::string s;
    bool ok = false;
    if (computed) {
        ok = std::abs(*computed - expect) <= tol;
        s = format_fixed(*computed, printed_decimals(printed));
    } else {
        s = "(undefined)";
    }
    if (!ok) {
        ++st.mismatches;
        s += " MISMATCH(printed " + printed + ")";
    } else {
        s += " ok";
    }
    return width ? pad(std::move(s), width) : s;
}

inline void reproduce_table1(std::ostream& out, ReproduceStats& st) {
    const EnergyTable t = fixtures::table1();
    const RealSequence av = average_energies(t);
    const RealSequence dif = energy_differences(t);
    const auto& p_av = fixtures::table1_averages();
    const auto& p_dif = fixtures::table1_differences();
    out << "table 1: total energies, per-unit averages, successive differences\n";
    out << "  N  " << pad("E_total", 17) << pad("E_av", 21) << "E_dif\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        out << std::setw(3) << t.rows[i].n_units << "  "
            << pad(t.energy_text[i], 17)
            << check_cell(av.values[i], p_av[i], last_digit_units(p_av[i], 5.0), st, 21);
        if (i < p_dif.size())
            out << check_cell(dif.values[i], p_dif[i], last_digit_units(p_dif[i], 5.0), st);
        out << "\n";
    }
}

inline void reproduce_table2(std::ostream& out, ReproduceStats& st, double tol) {
    const RealSequence av = average_energies(fixtures::table1());
    const RealSequence dif = fixtures::table1_differences_sequence();
    const auto t_av = decay_parameter(av, tol);
    const auto t_dif = decay_parameter(dif, tol);
    const auto& p_av = fixtures::table2_decay_av();
    const auto& p_dif = fixtures::table2_decay_dif();
    out << "table 2: decay-parameter probe on both derived columns\n";
    out << "  n  " << pad("T(E_av)", 15) << "T(E_dif)\n";
    for (std::size_t i = 0; i < p_av.size() || i < p_dif.size(); ++i) {
        out << std::setw(3) << i << "  ";
        if (i < p_av.size())
            out << check_cell(i < t_av.size() ? t_av[i] : std::nullopt, p_av[i],
                              last_digit_units(p_av[i], 5.0), st, 15);
        else
            out << pad("", 15);
        if (i < p_dif.size())
            out << check_cell(i < t_dif.size() ? t_dif[i] : std::nullopt, p_dif[i],
                              last_digit_units(p_dif[i], 5.0), st);
        out << "\n";
    }
}

inline void reproduce_table3(std::ostream& out, ReproduceStats& st, double tol) {
    const RealSequence dif = fixtures::table1_differences_sequence();
    const auto r = ratio_test(dif, tol);
    const auto& p = fixtures::table3_ratios();
    out << "table 3: remainder ratios of the difference column\n";
    out << "  n  R\n";
    // half a unit in the fourth decimal: the regenerated ratios are exact
    // rationals of the printed data, so rounding is the only slack needed
    for (std::size_t i = 0; i < p.size(); ++i) {
        out << std::setw(3) << i << "  "
            << check_cell(i < r.size() ? r[i] : std::nullopt, p[i], 5e-5, st) << "\n";
    }
}

inline void reproduce_table4(std::ostream& out, ReproduceStats& st, double tol) {
    const RealSequence dif = fixtures::table1_differences_sequence();
    AcceleratorConfig cfg;
    cfg.breakdown_tol = tol;
    const Tableau t = wynn_epsilon(dif, cfg).tableau;
    const std::vector<std::string>* printed[3] = {&fixtures::table4_eps2(),
                                                  &fixtures::table4_eps4(),
                                                  &fixtures::table4_eps6()};
    // inputs carry 11-12 digits, so agreement is checked to 3 units in the
    // ninth decimal rather than bit-for-bit
    const double cell_tol = 3e-9;
    out << "table 4: even epsilon columns of the difference column\n";
    out << "  n  " << pad("eps2", 32) << pad("eps4", 32) << "eps6\n";
    for (std::size_t n = 0; n < printed[0]->size(); ++n) {
        out << std::setw(3) << n << "  ";
        for (int c = 0; c < 3; ++c) {
            const auto& col = *printed[c];
            int k = 2 * (c + 1);
            if (n < col.size()) {
                std::optional<double> v;
                if (t.has(k, static_cast<int>(n)) && t.at(k, static_cast<int>(n)).valid)
                    v = t.at(k, static_cast<int>(n)).value;
                out << check_cell(v, col[n], cell_tol, st, c < 2 ? 32 : 0);
            } else if (c < 2) {
                out << pad("", 32);
            }
        }
        out << "\n";
    }
}

inline std::string check_rel(double computed, double expect, double rtol,
                             ReproduceStats& st) {
    ++st.cells;
    bool ok = std::abs(computed - expect) <= rtol * std::abs(expect);
    if (!ok) ++st.mismatches;
    return format_sig17(computed) + (ok ? " ok" : " MISMATCH(expected " +
                                                      format_sig17(expect) + ")");
}

inline void reproduce_example(std::ostream& out, ReproduceStats& st) {
    const fixtures::ZetaExample ex;
    const ZetaTailExpansion tail = zeta_tail(ex.z, ex.n, ex.k);
    const double ps = zeta_partial_sum(ex.z, ex.n);
    out << "worked example: inverse-power series, z=" << ex.z << ", n=" << ex.n
        << ", k=" << ex.k << "\n";
    out << "  partial_sum    " << check_rel(ps, ex.partial_sum, 1e-14, st) << "\n";
    out << "  integral_term  " << check_rel(tail.integral_term, ex.integral_term, 1e-14, st)
        << "\n";
    out << "  half_term      " << check_rel(tail.half_term, ex.half_term, 1e-14, st) << "\n";
    for (std::size_t j = 0; j < tail.bernoulli_terms.size(); ++j)
        out << "  bernoulli_" << j + 1 << "    "
            << check_rel(tail.bernoulli_terms[j], ex.bernoulli_terms[j], 1e-14, st) << "\n";
    out << "  total          " << check_rel(ps + tail.total(), ex.total, 5e-15, st) << "\n";
}

} // namespace detail

inline int run(const RunSpec& spec, std::ostream& out, std::ostream& diag) {
    const bool json = spec.output_format == RunSpec::Format::json;
    switch (spec.command) {
    case RunSpec::Command::transform: {
        const RealSequence s = detail::cli_sequence(spec);
        const Tableau t = build_tableau(s, spec.accel);
        const EstimateReport r = select_best(t);
        if (r.degraded)
            diag << "warning: every transformed column broke down; reporting the raw tail\n";
        if (json)
            out << tableau_json(t, r, spec.accel) << "\n";
        else
            out << tableau_text(t, r);
        return 0;
    }
    case RunSpec::Command::classify: {
        const RealSequence s = detail::cli_sequence(spec);
        const ConvergenceClass c = classify(s, spec.accel.breakdown_tol);
        out << (json ? classify_json(c) + "\n" : classify_text(c));
        return 0;
    }
    case RunSpec::Command::zeta: {
        const ZetaTailExpansion tail = zeta_tail(spec.z, spec.n, spec.k);
        const double ps = zeta_partial_sum(spec.z, spec.n);
        out << (json ? zeta_json(tail, ps) + "\n" : zeta_text(tail, ps));
        return 0;
    }
    case RunSpec::Command::oligomer: {
        const EnergyTable t = detail::cli_energy_table(spec);
        std::optional<AcceleratorConfig> cfg;
        if (spec.method_given) cfg = spec.accel;
        const ChainLimitReport r = chain_limit(t, cfg);
        if (r.e_dif_limit.degraded || r.e_av_limit.degraded)
            diag << "warning: a pipeline degraded to its raw tail\n";
        out << (json ? oligomer_json(r) + "\n" : oligomer_text(r));
        return 0;
    }
    case RunSpec::Command::reproduce: {
        detail::ReproduceStats st;
        const double tol = spec.accel.breakdown_tol;
        if (spec.table == 0 || spec.table == 1) detail::reproduce_table1(out, st);
        if (spec.table == 0 || spec.table == 2) detail::reproduce_table2(out, st, tol);
        if (spec.table == 0 || spec.table == 3) detail::reproduce_table3(out, st, tol);
        if (spec.table == 0 || spec.table == 4) detail::reproduce_table4(out, st, tol);
        if (spec.table == 0) detail::reproduce_example(out, st);
        out << st.cells << " cells checked, " << st.mismatches << " mismatched\n";
        if (st.mismatches) {
            diag << "reproduce: " << st.mismatches << " cell(s) outside tolerance\n";
            return static_cast<int>(ErrorCode::mismatch);
        }
        return 0;
    }
    }
    return static_cast<int>(ErrorCode::usage);
}

// Full front end: argv in, exit status out. Errors map to their code buckets.
inline int run_main(int argc, const char* const* argv, std::ostream& out,
                    std::ostream& diag) {
    try {
        const RunSpec spec = parse_args(std::vector<std::string>(argv + 1, argv + argc));
        return run(spec, out, diag);
    } catch (const HelpRequest& h) {
        out << h.text;
        return 0;
    } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        diag << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace seqaccel
