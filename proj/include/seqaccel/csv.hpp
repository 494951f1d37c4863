#pragma once

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "oligomer.hpp"
#include "sequence.hpp"

namespace seqaccel {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

inline long parse_index(std::string_view t, int line_no, const char* what) {
    long n = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
    if (ec != std::errc{} || p != t.data() + t.size())
        throw ParseError("line " + std::to_string(line_no) + ": expected integer " +
                         what + ", got '" + std::string(t) + "'");
    return n;
}

// Splits raw text into (line_no, content) pairs, dropping comments and blanks.
struct CsvLine {
    int no;
    std::string text;
};

inline std::vector<CsvLine> csv_lines(std::string_view text) {
    std::vector<CsvLine> out;
    int no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : nl - pos);
        ++no;
        auto t = trim(line);
        if (!t.empty() && t.front() != '#') out.push_back({no, std::string(t)});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

} // namespace detail

inline std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    if (f.bad()) throw IoError("error reading '" + path + "'");
    return buf.str();
}

// Sequence CSV: header `n,value`, then one row per term. The value tokens are
// kept as text so that digit counts survive into the scaled representation.
inline RealSequence parse_sequence_csv(std::string_view text, const std::string& label) {
    auto lines = detail::csv_lines(text);
    if (lines.empty()) throw ParseError("empty input: expected header 'n,value'");
    {
        auto h = detail::split_fields(lines[0].text);
        if (h.size() != 2 || h[0] != "n" || h[1] != "value")
            throw ParseError("line " + std::to_string(lines[0].no) +
                             ": expected header 'n,value'");
    }
    std::vector<std::string> tokens;
    tokens.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = detail::split_fields(lines[i].text);
        if (f.size() != 2)
            throw ParseError("line " + std::to_string(lines[i].no) +
                             ": expected 2 fields, got " + std::to_string(f.size()));
        detail::parse_index(f[0], lines[i].no, "index n");
        if (!detail::parse_double(f[1]))
            throw ParseError("line " + std::to_string(lines[i].no) +
                             ": bad value '" + std::string(f[1]) + "'");
        tokens.emplace_back(f[1]);
    }
    if (tokens.empty()) throw ParseError("no data rows after header");
    return sequence_from_decimals(tokens, label, SequenceSource::file);
}

// Energy CSV: header `N,E_total`, rows must carry N = 1,2,3,...
inline EnergyTable parse_energy_csv(std::string_view text, const std::string& label) {
    auto lines = detail::csv_lines(text);
    if (lines.empty()) throw ParseError("empty input: expected header 'N,E_total'");
    {
        auto h = detail::split_fields(lines[0].text);
        if (h.size() != 2 || h[0] != "N" || h[1] != "E_total")
            throw ParseError("line " + std::to_string(lines[0].no) +
                             ": expected header 'N,E_total'");
    }
    EnergyTable t;
    t.label = label;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = detail::split_fields(lines[i].text);
        if (f.size() != 2)
            throw ParseError("line " + std::to_string(lines[i].no) +
                             ": expected 2 fields, got " + std::to_string(f.size()));
        long n = detail::parse_index(f[0], lines[i].no, "repeat-unit count N");
        auto v = detail::parse_double(f[1]);
        if (!v)
            throw ParseError("line " + std::to_string(lines[i].no) +
                             ": bad energy '" + std::string(f[1]) + "'");
        t.rows.push_back({static_cast<int>(n), *v});
        t.energy_text.emplace_back(f[1]);
    }
    t.validate();
    return t;
}

inline RealSequence read_sequence_csv(const std::string& path) {
    return parse_sequence_csv(read_text(path), path == "-" ? "stdin" : path);
}

inline EnergyTable read_energy_csv(const std::string& path) {
    return parse_energy_csv(read_text(path), path == "-" ? "stdin" : path);
}

} // namespace seqaccel
