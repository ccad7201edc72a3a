#pragma once

// Published reference values of the frontier (F1, F2, G1, G2), read from
// the fixture CSVs under data/reference/, and the tolerances used when
// recomputed values are compared against them.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "csv.hpp"
#include "error.hpp"
#include "frontier.hpp"

namespace sharpe_bound {

struct ReferenceRow {
    std::string family;  // F1, F2, G1 or G2
    double lower_bound = 0.0;
    double value = 0.0;
    std::optional<double> c;  // published only for F1
    double alpha = 0.0;
    std::string source;
};

struct FamilyKinds {
    RatioKind ratio;
    BoundKind bound;
};

[[nodiscard]] inline FamilyKinds family_kinds(std::string_view family) {
    if (family == "F1") return {RatioKind::sharpe, BoundKind::one_sided};
    if (family == "F2") return {RatioKind::sharpe, BoundKind::two_sided};
    if (family == "G1") return {RatioKind::sortino, BoundKind::one_sided};
    if (family == "G2") return {RatioKind::sortino, BoundKind::two_sided};
    throw input_error("unknown frontier family '" + std::string(family) + "'");
}

/// Columns: family,B,value,c,alpha,source (c may be empty).
[[nodiscard]] inline std::vector<ReferenceRow> parse_reference_table(std::istream& in) {
    const csv::Table t = csv::read_table(in);
    const auto fam = t.column("family");
    const auto b = t.column("B");
    const auto val = t.column("value");
    const auto c = t.column("c");
    const auto alpha = t.column("alpha");
    const auto src = t.column("source");
    auto number = [](const std::string& s) {
        const auto v = csv::parse_double(s);
        if (!v) {
            throw input_error("reference table: bad number '" + s + "'");
        }
        return *v;
    };
    std::vector<ReferenceRow> rows;
    for (const auto& r : t.rows) {
        ReferenceRow row;
        row.family = r[fam];
        (void)family_kinds(row.family);
        row.lower_bound = number(r[b]);
        row.value = number(r[val]);
        if (!r[c].empty()) {
            row.c = number(r[c]);
        }
        row.alpha = number(r[alpha]);
        row.source = r[src];
        rows.push_back(std::move(row));
    }
    return rows;
}

[[nodiscard]] inline std::vector<ReferenceRow> parse_reference_table(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_reference_table(in);
}

/// Agreement thresholds against the published (rounded) values. c is
/// looser than the value because the ratio is flat near its argmax.
struct ReferenceTolerance {
    double value = 0.002;
    double alpha = 0.005;
    double c_small_b = 0.1;   // B <= 0.9
    double c_large_b = 0.05;  // B >= 0.99

    [[nodiscard]] double c_for(double lower_bound) const {
        return lower_bound <= 0.9 ? c_small_b : c_large_b;
    }
};

struct ReferenceComparison {
    ReferenceRow reference;
    FrontierPoint computed;
    double value_delta = 0.0;
    double alpha_delta = 0.0;
    std::optional<double> c_delta;
    bool pass = false;
};

[[nodiscard]] inline ReferenceComparison compare_to_reference(const ReferenceRow& row,
                                                              const ReferenceTolerance& tol = {}) {
    const FamilyKinds kinds = family_kinds(row.family);
    ReferenceComparison cmp;
    cmp.reference = row;
    cmp.computed = frontier_value(row.lower_bound, kinds.ratio, kinds.bound);
    cmp.value_delta = cmp.computed.value - row.value;
    cmp.alpha_delta = cmp.computed.alpha_star - row.alpha;
    cmp.pass = std::abs(cmp.value_delta) <= tol.value && std::abs(cmp.alpha_delta) <= tol.alpha;
    if (row.c) {
        cmp.c_delta = cmp.computed.c_star - *row.c;
        cmp.pass = cmp.pass && std::abs(*cmp.c_delta) <= tol.c_for(row.lower_bound);
    }
    if (kinds.bound == BoundKind::two_sided) {
        cmp.pass = cmp.pass && cmp.computed.c_star == row.lower_bound;
    }
    return cmp;
}

}  // namespace sharpe_bound
