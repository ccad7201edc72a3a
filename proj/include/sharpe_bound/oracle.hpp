#pragma once

// Independent checks of the continuum frontier at finite N: exhaustive
// search over multisets drawn from a finite level grid, a seeded random
// search, and the best two-level sequence of a fixed length.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "frontier.hpp"
#include "golden.hpp"
#include "metrics.hpp"
#include "random.hpp"

namespace sharpe_bound {

struct OracleResult {
    std::size_t n = 0;
    std::string grid_spec;
    double best_value = 0.0;
    ReturnSeries best_series;
    double continuum_value = 0.0;
    double gap = 0.0;  // continuum_value - best_value
};

inline constexpr std::size_t kMaxBruteForceLength = 6;
inline constexpr std::size_t kDefaultLevelCount = 41;
/// Wealth multiple targeted when a candidate is pushed onto the losing boundary.
inline constexpr double kBoundaryWealth = 1.0 - 1e-9;

namespace detail {

[[nodiscard]] inline std::optional<double> pick_ratio(const RatioReport& r, RatioKind kind) {
    return kind == RatioKind::sharpe ? r.sharpe : r.sortino;
}

// Rescales the gains in log-wealth space, ln(1 + x) -> lambda ln(1 + x), so
// that the wealth multiple becomes kBoundaryWealth, then nudges lambda down
// until the product is strictly below 1. Returns false when the sequence has
// no gains or no losses, or when a rescaled gain would exceed gain_cap.
inline bool scale_to_boundary(std::span<double> xs, double gain_cap) {
    double log_losses = 0.0;
    double log_gains = 0.0;
    for (double x : xs) {
        (x < 0.0 ? log_losses : log_gains) += std::log1p(x);
    }
    if (!(log_gains > 0.0) || !(log_losses < 0.0) || std::isinf(log_losses)) {
        return false;
    }
    double lambda = (std::log(kBoundaryWealth) - log_losses) / log_gains;
    if (!(lambda > 0.0)) {
        return false;
    }
    std::array<double, kMaxBruteForceLength> original{};
    const bool small = xs.size() <= original.size();
    std::vector<double> big;
    std::span<double> keep;
    if (small) {
        keep = std::span<double>(original.data(), xs.size());
    } else {
        big.resize(xs.size());
        keep = big;
    }
    std::copy(xs.begin(), xs.end(), keep.begin());
    for (int attempt = 0; attempt < 64; ++attempt) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = keep[i] > 0.0 ? std::expm1(lambda * std::log1p(keep[i])) : keep[i];
            if (xs[i] > gain_cap) {
                return false;
            }
        }
        if (wealth_product(xs) < 1.0) {
            return true;
        }
        lambda *= 1.0 - 1e-12 * static_cast<double>(1 << std::min(attempt, 30));
    }
    return false;
}

struct Candidate {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<double> series;
    bool found = false;
};

// Replace only on a strict improvement; earlier (lexicographically
// smaller) witnesses win ties.
inline void offer(Candidate& best, double value, std::span<const double> xs) {
    if (!best.found || value > best.value + 1e-15) {
        best.value = value;
        best.series.assign(xs.begin(), xs.end());
        best.found = true;
    }
}

inline void evaluate_candidate(Candidate& best, std::span<double> xs, RatioKind ratio,
                               Convention convention, double gain_cap) {
    if (wealth_product(xs) < 1.0) {
        if (auto v = pick_ratio(analyze_unchecked(xs, convention), ratio)) {
            offer(best, *v, xs);
        }
    }
    if (scale_to_boundary(xs, gain_cap)) {
        if (auto v = pick_ratio(analyze_unchecked(xs, convention), ratio)) {
            offer(best, *v, xs);
        }
    }
}

[[nodiscard]] inline OracleResult finish(std::size_t n, std::string spec, const Candidate& best,
                                         double lower_bound, RatioKind ratio, BoundKind bound,
                                         Convention convention) {
    if (!best.found) {
        throw infeasible_error("no losing sequence with a defined " + to_string(ratio) +
                               " ratio exists on the searched set");
    }
    ReturnSeries series(best.series);
    if (!losing(series)) {
        throw error("internal: oracle witness does not lose money");
    }
    const double value = *pick_ratio(analyze(series, convention), ratio);
    const double continuum = frontier_value(lower_bound, ratio, bound).value;
    return {n, std::move(spec), value, std::move(series), continuum, continuum - value};
}

[[nodiscard]] inline double gain_cap_for(double lower_bound, BoundKind bound) {
    return bound == BoundKind::two_sided ? lower_bound : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// count levels spaced geometrically in 1 + x between 1 - B and 1 + top;
/// the first level is exactly -B and the last exactly top.
[[nodiscard]] inline std::vector<double> geometric_levels(double lower_bound, double top,
                                                          std::size_t count) {
    if (count < 2 || !(top > -lower_bound)) {
        throw domain_error("geometric_levels: need at least 2 levels and top > -B");
    }
    const double lo = std::log1p(-lower_bound);
    const double hi = std::log1p(top);
    std::vector<double> levels(count);
    for (std::size_t i = 0; i < count; ++i) {
        levels[i] = std::expm1(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    levels.front() = -lower_bound;
    levels.back() = top;
    return levels;
}

/// Default grid: 41 geometric levels from -B up to 2 c* (one-sided, c* the
/// continuum argmax for this ratio) or up to B (two-sided).
[[nodiscard]] inline std::vector<double> default_levels(double lower_bound, RatioKind ratio,
                                                        BoundKind bound,
                                                        std::size_t count = kDefaultLevelCount) {
    const double top = bound == BoundKind::two_sided
                           ? lower_bound
                           : 2.0 * frontier_value(lower_bound, ratio, bound).c_star;
    return geometric_levels(lower_bound, top, count);
}

/// Exhaustive search over all multisets of size n drawn from levels. Each
/// multiset is scored as is (when losing) and after being pushed onto the
/// losing boundary. threads == 0 uses the hardware concurrency; the result
/// does not depend on it.
[[nodiscard]] inline OracleResult brute_force_sup(double lower_bound, std::size_t n,
                                                  std::span<const double> levels, RatioKind ratio,
                                                  BoundKind bound,
                                                  Convention convention = Convention::population,
                                                  unsigned threads = 0) {
    detail::check_bound(lower_bound);
    if (n < 2 || n > kMaxBruteForceLength) {
        throw input_error("brute force needs 2 <= N <= 6, got " + std::to_string(n));
    }
    std::vector<double> grid(levels.begin(), levels.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty()) {
        throw input_error("brute force needs at least one level");
    }
    const double cap = detail::gain_cap_for(lower_bound, bound);
    if (grid.front() < -lower_bound || grid.back() > cap || std::isnan(grid.back())) {
        throw domain_error("levels must lie in [-B, " +
                           std::string(bound == BoundKind::two_sided ? "B]" : "inf)"));
    }

    const std::size_t m = grid.size();
    std::vector<detail::Candidate> per_head(m);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        std::array<std::size_t, kMaxBruteForceLength> idx{};
        std::array<double, kMaxBruteForceLength> xs{};
        for (std::size_t head = next++; head < m; head = next++) {
            detail::Candidate& best = per_head[head];
            std::fill(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n), head);
            for (;;) {
                for (std::size_t i = 0; i < n; ++i) {
                    xs[i] = grid[idx[i]];
                }
                detail::evaluate_candidate(best, std::span<double>(xs.data(), n), ratio, convention, cap);
                // Next nondecreasing index tuple with idx[0] fixed.
                std::size_t pos = n;
                while (pos > 1 && idx[pos - 1] + 1 == m) {
                    --pos;
                }
                if (pos == 1) {
                    break;
                }
                const std::size_t v = idx[pos - 1] + 1;
                std::fill(idx.begin() + static_cast<std::ptrdiff_t>(pos - 1),
                          idx.begin() + static_cast<std::ptrdiff_t>(n), v);
            }
        }
    };
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(m));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
    }

    detail::Candidate best;
    for (const auto& c : per_head) {
        if (c.found) {
            detail::offer(best, c.value, c.series);
        }
    }
    std::ostringstream spec;
    spec << m << " levels on [" << grid.front() << ", " << grid.back() << "]";
    return detail::finish(n, spec.str(), best, lower_bound, ratio, bound, convention);
}

/// Seeded random search: returns drawn uniformly in ln(1 + x) between
/// ln(1 - B) and ln(1 + top); sequences that do not lose are pushed onto the
/// losing boundary (or dropped when that is impossible).
[[nodiscard]] inline OracleResult random_search_sup(double lower_bound, std::size_t n, double top,
                                                    RatioKind ratio, BoundKind bound,
                                                    std::size_t samples, std::uint64_t seed,
                                                    Convention convention = Convention::population) {
    detail::check_bound(lower_bound);
    if (n < 2) {
        throw input_error("random search needs N >= 2");
    }
    const double cap = detail::gain_cap_for(lower_bound, bound);
    if (!(top > 0.0) || top > cap) {
        throw domain_error("random search: top level must be in (0, cap]");
    }
    RandomStream rng(seed);
    const double lo = std::log1p(-lower_bound);
    const double hi = std::log1p(top);
    std::vector<double> xs(n);
    detail::Candidate best;
    for (std::size_t s = 0; s < samples; ++s) {
        for (double& x : xs) {
            x = std::max(-lower_bound, std::min(top, std::expm1(lo + (hi - lo) * rng.uniform())));
        }
        if (detail::wealth_product(xs) >= 1.0 && !detail::scale_to_boundary(xs, cap)) {
            continue;
        }
        if (auto v = detail::pick_ratio(detail::analyze_unchecked(xs, convention), ratio)) {
            detail::offer(best, *v, xs);
        }
    }
    std::ostringstream spec;
    spec << "random: " << samples << " samples on [" << -lower_bound << ", " << top << "], seed " << seed;
    return detail::finish(n, spec.str(), best, lower_bound, ratio, bound, convention);
}

/// Best sequence of length n using only the levels -B (n - k times) and
/// c (k times), for k = 1..n-1, with c maximised subject to c <= B
/// (two-sided) and k ln(1 + c) + (n - k) ln(1 - B) <= -1e-12.
[[nodiscard]] inline OracleResult two_level_discrete(double lower_bound, std::size_t n,
                                                     RatioKind ratio, BoundKind bound,
                                                     Convention convention = Convention::population) {
    detail::check_bound(lower_bound);
    if (n < 2) {
        throw input_error("two-level search needs N >= 2");
    }
    const double loss = detail::loss_log(lower_bound);
    const double nn = static_cast<double>(n);
    const double rescale =
        convention == Convention::population ? 1.0 : std::sqrt((nn - 1.0) / nn);
    const double cap = detail::gain_cap_for(lower_bound, bound);

    double best_value = -std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    double best_c = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double t_bound = ((nn - kk) * loss - 1e-12) / kk;
        if (!(t_bound > 0.0) || t_bound > 700.0) {
            continue;
        }
        const double c_hi = std::min(cap, std::expm1(t_bound));
        const double p = kk / nn;
        auto value = [&](double c) {
            return rescale * detail::mix_ratio(p, lower_bound / (c + lower_bound), ratio);
        };
        const ScalarMaximum m = golden_section_maximize(value, 0.0, c_hi, 1e-12);
        if (m.value > best_value) {
            best_value = m.value;
            best_k = k;
            best_c = m.x;
        }
    }
    if (best_k == 0) {
        throw infeasible_error("no finite two-level sequence of this length");
    }

    std::vector<double> xs(n, -lower_bound);
    double c = best_c;
    for (int attempt = 0;; ++attempt) {
        std::fill(xs.end() - static_cast<std::ptrdiff_t>(best_k), xs.end(), c);
        if (detail::wealth_product(xs) < 1.0 || attempt == 64 || !(c > 0.0)) {
            break;
        }
        c = std::expm1(std::log1p(c) - 1e-12 * static_cast<double>(1 << std::min(attempt, 30)));
    }
    detail::Candidate best;
    detail::offer(best, 0.0, xs);
    std::ostringstream spec;
    spec << "two levels {" << -lower_bound << ", " << c << "}, k = " << best_k << " of " << n;
    return detail::finish(n, spec.str(), best, lower_bound, ratio, bound, convention);
}

}  // namespace sharpe_bound
