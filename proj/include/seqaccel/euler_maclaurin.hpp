#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace seqaccel {

// Exact Bernoulli numbers B_0..B_30 (even indices; odd ones vanish beyond
// B_1, which this expansion never uses). Stored as numerator/denominator so
// the only rounding is the final division.
inline double bernoulli_number(int m) {
    if (m < 0 || m > 30 || m % 2 != 0)
        throw OutOfRangeError("bernoulli_number: need even m in [0,30], got " + std::to_string(m));
    static constexpr double num[] = {1.0, 1.0, -1.0, 1.0, -1.0, 5.0, -691.0, 7.0,
                                     -3617.0, 43867.0, -174611.0, 854513.0, -236364091.0,
                                     8553103.0, -23749461029.0, 8615841276005.0};
    static constexpr double den[] = {1.0, 6.0, 30.0, 42.0, 30.0, 66.0, 2730.0, 6.0,
                                     510.0, 798.0, 330.0, 138.0, 2730.0, 6.0, 870.0, 14322.0};
    return num[m / 2] / den[m / 2];
}

// (z)_m = z (z+1) ... (z+m-1), empty product for m = 0.
inline double pochhammer(double z, int m) {
    if (m < 0) throw DomainError("pochhammer: m must be non-negative");
    double acc = 1.0;
    for (int i = 0; i < m; ++i) acc *= z + static_cast<double>(i);
    return acc;
}

struct ZetaTailExpansion {
    double z = 0.0;
    int n = 0;
    int k = 0;
    double integral_term = 0.0;
    double half_term = 0.0;
    std::vector<double> bernoulli_terms; // j = 1..k

    double total() const {
        double t = integral_term + half_term;
        for (double b : bernoulli_terms) t += b;
        return t;
    }
};

// Truncated Euler-Maclaurin expansion of the Dirichlet tail
// sum_{nu=n+1..inf} (nu+1)^-z. Asymptotic in n, NOT convergent in k: the
// useful k stops where the Bernoulli terms stop shrinking.
inline ZetaTailExpansion zeta_tail(double z, int n, int k) {
    if (!(z > 1.0)) throw DomainError("zeta tail requires z > 1");
    if (n < 0) throw DomainError("zeta tail requires n >= 0");
    if (k < 0 || k > 15) throw OutOfRangeError("zeta tail supports 0 <= k <= 15 correction terms");

    ZetaTailExpansion e;
    e.z = z;
    e.n = n;
    e.k = k;
    double base = static_cast<double>(n) + 2.0;
    e.integral_term = std::pow(base, 1.0 - z) / (z - 1.0);
    e.half_term = 0.5 * std::pow(base, -z);
    double fact = 1.0; // (2j)!
    for (int j = 1; j <= k; ++j) {
        fact *= (2.0 * j - 1.0) * (2.0 * j);
        e.bernoulli_terms.push_back(pochhammer(z, 2 * j - 1) * bernoulli_number(2 * j) *
                                    std::pow(base, -z - 2.0 * j + 1.0) / fact);
    }
    return e;
}

inline double zeta_partial_sum(double z, int n) {
    double s = 0.0;
    for (int nu = 0; nu <= n; ++nu) s += std::pow(static_cast<double>(nu) + 1.0, -z);
    return s;
}

inline double zeta_estimate(double z, int n, int k) {
    return zeta_partial_sum(z, n) + zeta_tail(z, n, k).total();
}

} // namespace seqaccel
