#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "points.hpp"
#include "sequence.hpp"
#include "tableau.hpp"

namespace seqaccel {

// Remainder ratios R_n = (s_{n+2}-s_{n+1})/(s_{n+1}-s_n), n = 0..len-3.
// Computed on the scaled decimal view so that last-digit differences of
// printed data stay exact; the ratio is invariant under that scaling.
inline std::vector<std::optional<double>> ratio_test(const RealSequence& s,
                                                     double tol = default_breakdown_tol) {
    if (s.size() < 3) throw InsufficientDataError("ratio_test needs at least 3 values");
    const auto& v = s.scaled_view();
    std::vector<std::optional<double>> out;
    out.reserve(v.size() - 2);
    for (std::size_t n = 0; n + 2 < v.size(); ++n) {
        double den = v[n + 1] - v[n];
        if (!guard_denominator(den, std::max(std::abs(v[n]), std::abs(v[n + 1])), tol))
            out.push_back(std::nullopt);
        else
            out.push_back((v[n + 2] - v[n + 1]) / den);
    }
    return out;
}

// Decay-parameter probe T_n, n = 0..len-4: for remainders behaving like
// (n+beta)^-alpha the values approach alpha. Evaluated as
//   u = ds_{n+1}/d2s_n,  v = ds_{n+2}/d2s_{n+1},  T = 1/(u-v) - 1,
// which is the printed weighted-delta^3 form rearranged; the raw product form
// underflows the guard on near-converged tails (products of ~1e-9 differences)
// while u and v stay O(1).
inline std::vector<std::optional<double>> decay_parameter(const RealSequence& s,
                                                          double tol = default_breakdown_tol) {
    if (s.size() < 4) throw InsufficientDataError("decay_parameter needs at least 4 values");
    const auto& v = s.scaled_view();
    std::vector<std::optional<double>> out;
    out.reserve(v.size() - 3);
    for (std::size_t n = 0; n + 3 < v.size(); ++n) {
        double d0 = v[n + 1] - v[n];
        double d1 = v[n + 2] - v[n + 1];
        double d2 = v[n + 3] - v[n + 2];
        double dd0 = d1 - d0, dd1 = d2 - d1;
        if (!guard_denominator(dd0, std::max(std::abs(d0), std::abs(d1)), tol) ||
            !guard_denominator(dd1, std::max(std::abs(d1), std::abs(d2)), tol)) {
            out.push_back(std::nullopt);
            continue;
        }
        double u = d1 / dd0;
        double w = d2 / dd1;
        double den = u - w;
        if (!guard_denominator(den, std::max(std::abs(u), std::abs(w)), tol)) {
            out.push_back(std::nullopt);
            continue;
        }
        out.push_back(1.0 / den - 1.0);
    }
    return out;
}

enum class ConvergenceKind { linear, logarithmic, exponential_tail, undetermined };

inline std::string_view convergence_kind_name(ConvergenceKind k) {
    switch (k) {
    case ConvergenceKind::linear: return "linear";
    case ConvergenceKind::logarithmic: return "logarithmic";
    case ConvergenceKind::exponential_tail: return "exponential_tail";
    default: return "undetermined";
    }
}

struct ConvergenceClass {
    ConvergenceKind kind = ConvergenceKind::undetermined;
    std::optional<double> rho_hat;   // remainder ratio estimate
    std::optional<double> alpha_hat; // decay parameter estimate (logarithmic)
    // evidence trail
    std::vector<std::optional<double>> ratios;
    std::vector<std::optional<double>> decay;
    int reliable_ratios = 0;
    std::string note;
};

// Classify convergence from the two diagnostics. Policy (thresholds are ours,
// tuned on the bundled data):
//  - a ratio only counts when both differences forming it clear 20x the data
//    quantum: beyond that the last printed digits are quantization noise
//    (e.g. final energy-difference ratios 0.1, 0.0 of the bundled table);
//  - logarithmic: last three T_n defined and tight, alpha_hat > 0, ratios
//    rising toward 1 from below (rho_hat <= 1.05 tolerates slow tails);
//  - linear: reliable ratios essentially constant (spread <= 1e-6);
//  - exponential_tail: ratios stable to 5% at |rho| < 0.9 but T_n erratic --
//    a geometric tail riding on a converged base value;
//  - otherwise undetermined.
inline ConvergenceClass classify(const RealSequence& s, double tol = default_breakdown_tol) {
    if (s.size() < 5) throw InsufficientDataError("classify needs at least 5 values");
    ConvergenceClass out;
    out.ratios = ratio_test(s, tol);
    out.decay = decay_parameter(s, tol);

    const auto& v = s.scaled_view();
    double qs = s.scaled_quantum();
    constexpr double quantum_margin = 20.0;

    std::vector<double> reliable;
    for (std::size_t n = 0; n < out.ratios.size(); ++n) {
        if (!out.ratios[n]) continue;
        if (qs > 0.0) {
            double a = std::abs(v[n + 1] - v[n]);
            double b = std::abs(v[n + 2] - v[n + 1]);
            if (std::min(a, b) < quantum_margin * qs) continue;
        }
        reliable.push_back(*out.ratios[n]);
    }
    out.reliable_ratios = static_cast<int>(reliable.size());
    if (reliable.size() < 2) {
        out.note = "too few usable ratios";
        return out;
    }

    std::size_t rw = std::min<std::size_t>(3, reliable.size());
    std::vector<double> last_r(reliable.end() - static_cast<std::ptrdiff_t>(rw), reliable.end());
    double rho = last_r.back();
    double rmin = last_r[0], rmax = last_r[0];
    bool increasing = true;
    for (std::size_t i = 0; i < last_r.size(); ++i) {
        rmin = std::min(rmin, last_r[i]);
        rmax = std::max(rmax, last_r[i]);
        if (i > 0 && !(last_r[i - 1] < last_r[i])) increasing = false;
    }
    double spread_r = rmax - rmin;

    bool t_stable = false;
    double alpha = 0.0;
    if (out.decay.size() >= 3) {
        auto t0 = out.decay[out.decay.size() - 3];
        auto t1 = out.decay[out.decay.size() - 2];
        auto t2 = out.decay[out.decay.size() - 1];
        if (t0 && t1 && t2) {
            alpha = (*t0 + *t1 + *t2) / 3.0;
            double lo = std::min({*t0, *t1, *t2}), hi = std::max({*t0, *t1, *t2});
            t_stable = (hi - lo) < 0.05 * std::max(1.0, std::abs(alpha)) && alpha > 0.0;
        }
    }

    if (t_stable && increasing && rho > 0.0 && rho <= 1.05) {
        out.kind = ConvergenceKind::logarithmic;
        out.alpha_hat = alpha;
        out.rho_hat = rho;
        out.note = "ratios rising toward 1 with stable decay parameter";
    } else if (spread_r <= 1e-6 * std::max(1.0, std::abs(rho)) && std::abs(rho) < 0.9) {
        out.kind = ConvergenceKind::linear;
        out.rho_hat = rho;
        out.note = "constant remainder ratio";
    } else if (spread_r < 0.05 * std::max(1.0, std::abs(rho)) && std::abs(rho) < 0.9) {
        out.kind = ConvergenceKind::exponential_tail;
        out.rho_hat = rho;
        out.note = "stable geometric ratio with erratic decay parameter";
    } else {
        out.note = "diagnostics did not stabilize";
    }
    return out;
}

// ---- model sequences --------------------------------------------------

struct ModelSequenceSpec {
    enum class Kind { single_exponential, multi_exponential, power_tail, polynomial_in_x,
                      rational_sample };
    Kind kind = Kind::single_exponential;
    std::size_t length = 0;
    double limit = 0.0;
    double c = 0.0, lambda = 0.0;            // single_exponential
    std::vector<double> cs, lambdas;         // multi_exponential
    double alpha = 0.0, beta = 1.0;          // power_tail
    std::vector<double> coeffs;              // power_tail / polynomial_in_x
    std::vector<double> num, den;            // rational_sample, ascending powers
    InterpolationPoints pts = InterpolationPoints::linear();

    static ModelSequenceSpec single_exponential(double s, double c, double lambda,
                                                std::size_t len) {
        ModelSequenceSpec m;
        m.kind = Kind::single_exponential;
        m.limit = s; m.c = c; m.lambda = lambda; m.length = len;
        return m;
    }
    static ModelSequenceSpec multi_exponential(double s, std::vector<double> cs,
                                               std::vector<double> lambdas, std::size_t len) {
        ModelSequenceSpec m;
        m.kind = Kind::multi_exponential;
        m.limit = s; m.cs = std::move(cs); m.lambdas = std::move(lambdas); m.length = len;
        return m;
    }
    static ModelSequenceSpec power_tail(double s, double alpha, double beta,
                                        std::vector<double> cs, std::size_t len) {
        ModelSequenceSpec m;
        m.kind = Kind::power_tail;
        m.limit = s; m.alpha = alpha; m.beta = beta; m.coeffs = std::move(cs); m.length = len;
        return m;
    }
    static ModelSequenceSpec polynomial_in_x(double s, std::vector<double> cs,
                                             InterpolationPoints pts, std::size_t len) {
        ModelSequenceSpec m;
        m.kind = Kind::polynomial_in_x;
        m.limit = s; m.coeffs = std::move(cs); m.pts = std::move(pts); m.length = len;
        return m;
    }
    static ModelSequenceSpec rational_sample(std::vector<double> num, std::vector<double> den,
                                             InterpolationPoints pts, std::size_t len) {
        ModelSequenceSpec m;
        m.kind = Kind::rational_sample;
        m.num = std::move(num); m.den = std::move(den); m.pts = std::move(pts); m.length = len;
        return m;
    }
};

inline RealSequence generate(const ModelSequenceSpec& spec) {
    if (spec.length == 0) throw InvalidSpecError("model sequence length must be positive");
    std::vector<double> v;
    v.reserve(spec.length);
    switch (spec.kind) {
    case ModelSequenceSpec::Kind::single_exponential:
        for (std::size_t n = 0; n < spec.length; ++n)
            v.push_back(spec.limit + spec.c * std::pow(spec.lambda, static_cast<double>(n)));
        break;
    case ModelSequenceSpec::Kind::multi_exponential: {
        if (spec.cs.size() != spec.lambdas.size() || spec.cs.empty())
            throw InvalidSpecError("multi_exponential needs matching c_j, lambda_j");
        for (std::size_t j = 0; j + 1 < spec.lambdas.size(); ++j)
            if (!(std::abs(spec.lambdas[j]) > std::abs(spec.lambdas[j + 1])))
                throw InvalidSpecError("lambda_j must decrease strictly in magnitude");
        for (std::size_t n = 0; n < spec.length; ++n) {
            double x = spec.limit;
            for (std::size_t j = 0; j < spec.cs.size(); ++j)
                x += spec.cs[j] * std::pow(spec.lambdas[j], static_cast<double>(n));
            v.push_back(x);
        }
        break;
    }
    case ModelSequenceSpec::Kind::power_tail: {
        if (!(spec.alpha > 0.0) || !(spec.beta > 0.0))
            throw InvalidSpecError("power_tail needs alpha > 0 and beta > 0");
        if (spec.coeffs.empty()) throw InvalidSpecError("power_tail needs coefficients");
        for (std::size_t n = 0; n < spec.length; ++n) {
            double base = static_cast<double>(n) + spec.beta;
            double x = spec.limit;
            for (std::size_t j = 0; j < spec.coeffs.size(); ++j)
                x += spec.coeffs[j] * std::pow(base, -spec.alpha - static_cast<double>(j));
            v.push_back(x);
        }
        break;
    }
    case ModelSequenceSpec::Kind::polynomial_in_x:
        for (std::size_t n = 0; n < spec.length; ++n) {
            double x = spec.pts(n);
            double acc = 0.0; // sum c_j x^{j+1}, the Richardson exactness model
            for (std::size_t j = spec.coeffs.size(); j-- > 0;) acc = (acc + spec.coeffs[j]) * x;
            v.push_back(spec.limit + acc);
        }
        break;
    case ModelSequenceSpec::Kind::rational_sample: {
        if (spec.num.empty() || spec.den.empty())
            throw InvalidSpecError("rational_sample needs numerator and denominator");
        for (std::size_t n = 0; n < spec.length; ++n) {
            double x = spec.pts(n);
            double p = 0.0, q = 0.0;
            for (std::size_t j = spec.num.size(); j-- > 0;) p = p * x + spec.num[j];
            for (std::size_t j = spec.den.size(); j-- > 0;) q = q * x + spec.den[j];
            double y = p / q;
            if (!std::isfinite(y)) throw InvalidSpecError("rational model hits a pole");
            v.push_back(y);
        }
        break;
    }
    }
    return make_sequence(std::move(v), "model", SequenceSource::generated);
}

// ---- Pade oracle -------------------------------------------------------

struct PadeApproximant {
    std::vector<double> p, q; // q[0] == 1
    double eval(double z) const {
        double pn = 0.0, qd = 0.0;
        for (std::size_t j = p.size(); j-- > 0;) pn = pn * z + p[j];
        for (std::size_t j = q.size(); j-- > 0;) qd = qd * z + q[j];
        return pn / qd;
    }
};

// Accuracy-through-order fit of [l/m]: solve for q_1..q_m from the linear
// system sum_i q_i c_{l+j-i} = -c_{l+j}, then read off p. Dense Gaussian
// elimination with partial pivoting; a pivot-ratio guard at 1e12 rejects
// near-singular systems (this oracle only ever runs at tiny degrees).
inline PadeApproximant pade_fit(const std::vector<double>& c, int l, int m) {
    if (l < 0 || m < 0) throw DomainError("pade degrees must be non-negative");
    if (c.size() < static_cast<std::size_t>(l + m + 1))
        throw DomainError("pade needs l+m+1 series coefficients");
    auto coeff = [&](int j) { return j >= 0 && j < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(j)] : 0.0; };

    std::vector<double> qv(static_cast<std::size_t>(m), 0.0);
    if (m > 0) {
        std::vector<std::vector<double>> M(static_cast<std::size_t>(m),
                                           std::vector<double>(static_cast<std::size_t>(m) + 1));
        for (int j = 1; j <= m; ++j) {
            for (int i = 1; i <= m; ++i) M[j - 1][i - 1] = coeff(l + j - i);
            M[j - 1][static_cast<std::size_t>(m)] = -coeff(l + j);
        }
        double piv_max = 0.0, piv_min = 0.0;
        for (int col = 0; col < m; ++col) {
            int piv = col;
            for (int r = col + 1; r < m; ++r)
                if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
            std::swap(M[static_cast<std::size_t>(col)], M[static_cast<std::size_t>(piv)]);
            double pv = std::abs(M[col][col]);
            if (pv == 0.0) throw SingularSystemError("pade denominator system is singular");
            piv_max = col == 0 ? pv : std::max(piv_max, pv);
            piv_min = col == 0 ? pv : std::min(piv_min, pv);
            for (int r = col + 1; r < m; ++r) {
                double f = M[r][col] / M[col][col];
                for (int cc = col; cc <= m; ++cc) M[r][cc] -= f * M[col][cc];
            }
        }
        if (piv_min == 0.0 || piv_max / piv_min > 1e12)
            throw SingularSystemError("pade denominator system is ill-conditioned");
        for (int r = m - 1; r >= 0; --r) {
            double acc = M[r][static_cast<std::size_t>(m)];
            for (int cc = r + 1; cc < m; ++cc) acc -= M[r][cc] * qv[static_cast<std::size_t>(cc)];
            qv[static_cast<std::size_t>(r)] = acc / M[r][r];
        }
    }

    PadeApproximant pa;
    pa.q.push_back(1.0);
    for (double x : qv) pa.q.push_back(x);
    for (int j = 0; j <= l; ++j) {
        double acc = 0.0;
        for (int i = 0; i <= std::min(j, m); ++i) acc += pa.q[static_cast<std::size_t>(i)] * coeff(j - i);
        pa.p.push_back(acc);
    }
    return pa;
}

inline double pade(const std::vector<double>& c, int l, int m, double z) {
    return pade_fit(c, l, m).eval(z);
}

} // namespace seqaccel
