#pragma once

// Flat-file formats: single-column return CSV (header `return`), frontier
// curve CSV (B,value,c_star,alpha_star) and trajectory CSV
// (n,sharpe,sortino,wealth). Doubles are written in shortest round-trip
// form; absent ratios are written as empty fields.

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "anomaly.hpp"
#include "error.hpp"
#include "frontier.hpp"
#include "metrics.hpp"

namespace sharpe_bound::csv {

[[nodiscard]] inline std::string_view trim(std::string_view s) noexcept {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

/// Parses a whole field as a double; nullopt on any leftover characters.
[[nodiscard]] inline std::optional<double> parse_double(std::string_view field) noexcept {
    field = trim(field);
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    double v = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
        return std::nullopt;
    }
    return v;
}

[[nodiscard]] inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Reads the single-column return CSV. Accepts LF or CRLF line endings and a
/// UTF-8 byte order mark; blank lines are ignored. Throws input_error on a
/// bad header or an unparsable row, domain_error on a return below -1.
[[nodiscard]] inline ReturnSeries read_returns(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) {
            view.remove_prefix(3);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        if (!have_header) {
            if (view != "return") {
                throw input_error("line " + std::to_string(line_no) + ": expected header 'return', got '" +
                                  std::string(view) + "'");
            }
            have_header = true;
            continue;
        }
        const auto v = parse_double(view);
        if (!v) {
            throw input_error("line " + std::to_string(line_no) + ": not a number: '" + std::string(view) + "'");
        }
        values.push_back(*v);
    }
    if (!have_header) {
        throw input_error("missing header 'return'");
    }
    if (values.empty()) {
        throw input_error("no returns after the header");
    }
    return ReturnSeries(std::move(values));
}

inline void write_returns(std::ostream& out, std::span<const double> returns) {
    out << "return\n";
    for (double x : returns) {
        out << format_double(x) << '\n';
    }
}

inline void write_curve(std::ostream& out, const FrontierCurve& curve) {
    out << "B,value,c_star,alpha_star\n";
    for (const auto& p : curve.points) {
        out << format_double(p.lower_bound) << ',' << format_double(p.value) << ','
            << format_double(p.c_star) << ',' << format_double(p.alpha_star) << '\n';
    }
}

inline void write_trajectory(std::ostream& out, const Trajectory& t) {
    out << "n,sharpe,sortino,wealth\n";
    for (const auto& p : t.points) {
        out << p.n << ',' << (p.sharpe ? format_double(*p.sharpe) : "") << ','
            << (p.sortino ? format_double(*p.sortino) : "") << ',' << format_double(p.wealth) << '\n';
    }
}

/// Generic comma-separated table with `#` comment lines and a header row.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                return i;
            }
        }
        throw input_error("missing column '" + std::string(name) + "'");
    }
};

[[nodiscard]] inline std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> fields;
    for (;;) {
        const auto comma = line.find(',');
        fields.emplace_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) {
            return fields;
        }
        line.remove_prefix(comma + 1);
    }
}

[[nodiscard]] inline Table read_table(std::istream& in) {
    Table t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') {
            continue;
        }
        auto fields = split(view);
        if (t.header.empty()) {
            t.header = std::move(fields);
        } else if (fields.size() != t.header.size()) {
            throw input_error("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(t.header.size()) + " fields");
        } else {
            t.rows.push_back(std::move(fields));
        }
    }
    if (t.header.empty()) {
        throw input_error("table has no header");
    }
    return t;
}

}  // namespace sharpe_bound::csv
