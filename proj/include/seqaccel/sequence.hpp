#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace seqaccel {

enum class SequenceSource { generated, file, fixture };

// A real sequence, optionally with an exact decimal view.
//
// When every element came from fixed-point decimal text we also keep
// scaled[i] = values[i] * 10^shift as exact integers (in doubles). For data
// like the bundled energy tables (~1e2 magnitude, 8..10 decimals) the plain
// doubles have already rounded away the last printed digits of any
// *difference* (ulp is ~1.4e-14), while the scaled view differences exactly.
// Diagnostics are invariant under this scaling and run on scaled_view();
// extrapolation works in original units on values.
//
// quantum is one unit in the coarsest decimal place of the source text
// (0 for generated data): the resolution below which differences are noise.
struct RealSequence {
    std::vector<double> values;
    std::vector<double> scaled;
    int shift = 0;
    double quantum = 0.0;
    std::string label;
    SequenceSource source = SequenceSource::generated;

    std::size_t size() const noexcept { return values.size(); }
    bool empty() const noexcept { return values.empty(); }
    double operator[](std::size_t i) const { return values[i]; }

    const std::vector<double>& scaled_view() const noexcept {
        return scaled.empty() ? values : scaled;
    }
    // quantum expressed in scaled units (comparable against scaled differences)
    double scaled_quantum() const noexcept {
        return scaled.empty() ? quantum : quantum * std::pow(10.0, shift);
    }
};

inline RealSequence make_sequence(std::vector<double> v, std::string label = {},
                                  SequenceSource src = SequenceSource::generated) {
    RealSequence s;
    s.values = std::move(v);
    s.label = std::move(label);
    s.source = src;
    return s;
}

namespace detail {

struct DecimalParts {
    std::int64_t mantissa = 0;
    int decimals = 0; // value == mantissa * 10^-decimals
};

// Plain decimal tokens only ("-75.945694649", "1.5e-3"); anything else
// (hex floats, inf/nan, huge digit counts) disqualifies the exact capture.
inline std::optional<DecimalParts> parse_decimal_parts(std::string_view t) {
    std::size_t i = 0;
    bool neg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
    std::string digits;
    int frac = 0;
    bool seen_point = false, seen_digit = false;
    for (; i < t.size(); ++i) {
        char c = t[i];
        if (c == '.') {
            if (seen_point) return std::nullopt;
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            seen_digit = true;
            digits.push_back(c);
            if (seen_point) ++frac;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            return std::nullopt;
        }
    }
    int exp10 = 0;
    if (i < t.size()) { // exponent part
        ++i;
        auto [p, ec] = std::from_chars(t.data() + i, t.data() + t.size(), exp10);
        if (ec != std::errc() || p != t.data() + t.size()) return std::nullopt;
    }
    if (!seen_digit || digits.size() > 18) return std::nullopt;

    std::int64_t m = 0;
    for (char c : digits) m = m * 10 + (c - '0');
    int dec = frac - exp10;
    while (dec < 0) { // integer scaled up, e.g. "1e3"
        if (m > (std::int64_t{1} << 53) / 10) return std::nullopt;
        m *= 10;
        ++dec;
    }
    if (neg) m = -m;
    return DecimalParts{m, dec};
}

inline std::optional<double> parse_double(std::string_view t) {
    double v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) return std::nullopt;
    return v;
}

} // namespace detail

// Build a sequence from decimal tokens, attempting the exact scaled capture.
// Tokens must all parse as finite numbers (ParseError otherwise); the scaled
// view is dropped silently if any token is non-decimal or the integers would
// not fit in 53 bits.
inline RealSequence sequence_from_decimals(const std::vector<std::string>& tokens,
                                           std::string label = {},
                                           SequenceSource src = SequenceSource::file) {
    RealSequence s;
    s.label = std::move(label);
    s.source = src;
    s.values.reserve(tokens.size());

    std::vector<detail::DecimalParts> parts;
    parts.reserve(tokens.size());
    bool exact = true;
    int max_dec = 0, min_dec = 0;
    for (const auto& t : tokens) {
        auto v = detail::parse_double(t);
        if (!v || !std::isfinite(*v))
            throw ParseError("not a finite number: '" + t + "'");
        s.values.push_back(*v);
        if (exact) {
            auto dp = detail::parse_decimal_parts(t);
            if (dp) {
                if (parts.empty()) {
                    max_dec = min_dec = dp->decimals;
                } else {
                    max_dec = std::max(max_dec, dp->decimals);
                    min_dec = std::min(min_dec, dp->decimals);
                }
                parts.push_back(*dp);
            } else {
                exact = false;
            }
        }
    }
    if (exact && !parts.empty()) {
        constexpr std::int64_t limit = std::int64_t{1} << 53;
        std::vector<double> scaled;
        scaled.reserve(parts.size());
        for (const auto& dp : parts) {
            std::int64_t m = dp.mantissa;
            for (int d = dp.decimals; d < max_dec && exact; ++d) {
                if (m > limit / 10 || m < -(limit / 10)) exact = false;
                else m *= 10;
            }
            if (m >= limit || m <= -limit) exact = false;
            if (!exact) break;
            scaled.push_back(static_cast<double>(m));
        }
        if (exact) {
            s.scaled = std::move(scaled);
            s.shift = max_dec;
            s.quantum = std::pow(10.0, -min_dec);
        }
    }
    return s;
}

} // namespace seqaccel
