#pragma once

// Scalar maximisation: golden-section refinement on a bracket, and a
// scan-and-expand bracketing step for maxima whose location is unknown.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <vector>

#include "error.hpp"

namespace sharpe_bound {

struct ScalarMaximum {
    double x = 0.0;
    double value = -std::numeric_limits<double>::infinity();
    int evaluations = 0;
};

/// Golden-section search for a maximum of f on [lo, hi].
///
/// Stops once the bracket width falls below rel_tol * max(|lo|, |hi|) or
/// after max_iter contractions. The endpoints are evaluated as well, so a
/// function that is monotone on the interval returns the better endpoint.
template <std::invocable<double> F>
[[nodiscard]] ScalarMaximum golden_section_maximize(F&& f, double lo, double hi, double rel_tol,
                                                    int max_iter = 400) {
    if (!(lo <= hi)) {
        throw domain_error("golden_section_maximize: empty bracket");
    }
    ScalarMaximum best;
    auto consider = [&](double x, double fx) {
        ++best.evaluations;
        if (fx > best.value || (std::isnan(best.value) && !std::isnan(fx))) {
            best.x = x;
            best.value = fx;
        }
    };
    consider(lo, f(lo));
    if (hi == lo) {
        return best;
    }
    consider(hi, f(hi));

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    consider(c, fc);
    consider(d, fd);

    const double scale = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
    for (int it = 0; it < max_iter && (b - a) > rel_tol * scale; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
            consider(d, fd);
        }
        if (!(c < d)) {
            break;  // bracket collapsed to adjacent doubles
        }
    }
    return best;
}

struct BracketOptions {
    double lower = 0.0;
    double initial_upper = 1.0;
    double upper_cap = 1.0;   // expansion stops once the upper end would exceed this
    double growth = 2.0;      // upper end is multiplied by this on each expansion
    std::size_t scan_points = 65;
    double rel_tol = 1e-12;
};

/// Maximises f over [lower, upper_cap] by scanning [lower, upper] on a
/// uniform grid, growing upper geometrically while the best grid point is
/// the upper end, then polishing with golden-section search between the
/// neighbours of the best grid point.
template <std::invocable<double> F>
[[nodiscard]] ScalarMaximum bracket_and_maximize(F&& f, const BracketOptions& opt) {
    if (!(opt.lower < opt.initial_upper) || opt.scan_points < 3 || !(opt.growth > 1.0)) {
        throw domain_error("bracket_and_maximize: invalid options");
    }
    double upper = std::min(opt.initial_upper, opt.upper_cap);
    std::vector<double> grid(opt.scan_points);
    std::vector<double> values(opt.scan_points);
    int evaluations = 0;
    std::size_t best = 0;
    for (;;) {
        const double step = (upper - opt.lower) / static_cast<double>(opt.scan_points - 1);
        for (std::size_t i = 0; i < opt.scan_points; ++i) {
            grid[i] = i + 1 == opt.scan_points ? upper : opt.lower + step * static_cast<double>(i);
            values[i] = f(grid[i]);
            ++evaluations;
        }
        best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
        if (best + 1 < opt.scan_points || upper >= opt.upper_cap) {
            break;
        }
        upper = std::min(upper * opt.growth, opt.upper_cap);
    }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, opt.scan_points - 1)];
    ScalarMaximum m = golden_section_maximize(f, lo, hi, opt.rel_tol);
    if (values[best] > m.value) {
        m.x = grid[best];
        m.value = values[best];
    }
    m.evaluations += evaluations;
    return m;
}

}  // namespace sharpe_bound
