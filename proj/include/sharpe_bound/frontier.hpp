#pragma once

// Best achievable Sharpe / Sortino ratio of return sequences that lose
// money, when every return is >= -B (one-sided) or lies in [-B, B]
// (two-sided). The suprema are evaluated on the continuum of two-level
// return mixtures: a fraction alpha of periods at +c and 1 - alpha at -B,
// with the losing constraint held at equality,
//     alpha * ln(1 + c) + (1 - alpha) * ln(1 - B) = 0.
// One-sided values maximise over c on the scale t = ln(1 + c); two-sided
// values take c = B.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "golden.hpp"

namespace sharpe_bound {

enum class RatioKind { sharpe, sortino };
enum class BoundKind { one_sided, two_sided };

[[nodiscard]] inline std::string to_string(RatioKind k) {
    return k == RatioKind::sharpe ? "sharpe" : "sortino";
}
[[nodiscard]] inline std::string to_string(BoundKind k) {
    return k == BoundKind::one_sided ? "one-sided" : "two-sided";
}

/// Two-point return law: -B with probability 1 - alpha, c with probability alpha.
class TwoLevelMix {
public:
    TwoLevelMix(double lower_bound, double upper_level, double alpha)
        : bound_(lower_bound), upper_(upper_level), alpha_(alpha) {
        if (!(bound_ > 0.0 && bound_ < 1.0)) {
            throw domain_error("two-level mix: B must lie in (0, 1), got " + std::to_string(bound_));
        }
        if (!(upper_ > 0.0)) {
            throw domain_error("two-level mix: c must be positive, got " + std::to_string(upper_));
        }
        if (!(alpha_ > 0.0 && alpha_ < 1.0)) {
            throw domain_error("two-level mix: alpha must lie in (0, 1), got " +
                               std::to_string(alpha_));
        }
    }

    [[nodiscard]] double lower_bound() const noexcept { return bound_; }
    [[nodiscard]] double upper_level() const noexcept { return upper_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }

    /// Whether the mix is admissible under the two-sided bound (c <= B).
    [[nodiscard]] bool two_sided_admissible() const noexcept { return upper_ <= bound_; }

private:
    double bound_;
    double upper_;
    double alpha_;
};

struct MixMoments {
    double mean = 0.0;
    double volatility = 0.0;
    double downside_deviation = 0.0;
};

/// Continuum (N -> infinity) mean, volatility and downside deviation.
/// Only -B lies below the mean, which gives the closed forms
///   mu = alpha c - (1 - alpha) B,  sigma = sqrt(alpha (1 - alpha)) (c + B),
///   sigma' = alpha sqrt(1 - alpha) (c + B).
[[nodiscard]] inline MixMoments mix_moments(const TwoLevelMix& mix) noexcept {
    const double a = mix.alpha();
    const double b = mix.lower_bound();
    const double c = mix.upper_level();
    return {a * c - (1.0 - a) * b, std::sqrt(a * (1.0 - a)) * (c + b), a * std::sqrt(1.0 - a) * (c + b)};
}

namespace detail {

inline void check_bound(double lower_bound) {
    if (!(lower_bound > 0.0)) {
        throw domain_error("B must be positive, got " + std::to_string(lower_bound));
    }
    if (!(lower_bound < 1.0)) {
        throw domain_error("B must be below 1, got " + std::to_string(lower_bound));
    }
}

// -ln(1 - B)
[[nodiscard]] inline double loss_log(double lower_bound) noexcept { return -std::log1p(-lower_bound); }

// Ratio of the mix as a function of alpha and w = B / (c + B); the mean
// divided by (c + B) is exactly alpha - w.
[[nodiscard]] inline double mix_ratio(double alpha, double w, RatioKind kind) noexcept {
    const double numerator = alpha - w;
    return kind == RatioKind::sharpe ? numerator / std::sqrt(alpha * (1.0 - alpha))
                                     : numerator / (alpha * std::sqrt(1.0 - alpha));
}

// Ratio at the binding constraint for upper level c = expm1(t). Finite for
// every t > 0, including t large enough that c overflows.
[[nodiscard]] inline double binding_ratio_at_log_level(double lower_bound, double t,
                                                       RatioKind kind) noexcept {
    const double l = loss_log(lower_bound);
    const double alpha = l / (t + l);
    const double w = lower_bound / (std::expm1(t) + lower_bound);
    return mix_ratio(alpha, w, kind);
}

inline void check_frontier_args(double lower_bound, BoundKind bound) {
    if (bound == BoundKind::one_sided && lower_bound >= 1.0) {
        throw divergence_error("one-sided supremum diverges for B >= 1 (F1(1) = inf)");
    }
    check_bound(lower_bound);
}

}  // namespace detail

/// Fraction of periods at level c for which the log-wealth drift
/// alpha ln(1 + c) + (1 - alpha) ln(1 - B) is zero.
[[nodiscard]] inline double binding_alpha(double lower_bound, double upper_level) {
    detail::check_bound(lower_bound);
    if (!(upper_level > 0.0)) {
        throw domain_error("c must be positive, got " + std::to_string(upper_level));
    }
    const double l = detail::loss_log(lower_bound);
    return l / (std::log1p(upper_level) + l);
}

/// Expected per-period log-wealth growth of the mix.
[[nodiscard]] inline double log_wealth_drift(const TwoLevelMix& mix) noexcept {
    return mix.alpha() * std::log1p(mix.upper_level()) +
           (1.0 - mix.alpha()) * std::log1p(-mix.lower_bound());
}

/// Sharpe (mu / sigma) or Sortino (mu / sigma') ratio of the mix.
[[nodiscard]] inline double ratio_of_mix(const TwoLevelMix& mix, RatioKind kind) {
    const MixMoments m = mix_moments(mix);
    const double dev = kind == RatioKind::sharpe ? m.volatility : m.downside_deviation;
    if (!(dev > 0.0)) {
        throw undefined_ratio_error("ratio of a degenerate two-level mix is undefined");
    }
    const double w = mix.lower_bound() / (mix.upper_level() + mix.lower_bound());
    return detail::mix_ratio(mix.alpha(), w, kind);
}

struct FrontierPoint {
    double lower_bound = 0.0;
    RatioKind ratio = RatioKind::sharpe;
    BoundKind bound = BoundKind::one_sided;
    double value = 0.0;
    double c_star = 0.0;
    double alpha_star = 0.0;
};

/// Search settings for the one-sided maximisation over t = ln(1 + c).
struct FrontierSearch {
    double t_lower = std::log1p(1e-6);
    double t_initial_upper = std::log1p(10.0);
    double t_cap = std::log1p(1e12);
    double rel_tol = 1e-12;
    std::size_t scan_points = 65;
};

/// F1/F2 (Sharpe) or G1/G2 (Sortino) at bound B: the best ratio over losing
/// two-level mixes. For F1, F2 and G2 this is the supremum over all losing
/// return laws. For G1 it is not: laws with two distinct gain levels do
/// better (see the oracle tests).
///
/// Throws divergence_error for one-sided B >= 1, whose supremum is infinite
/// (a single -100% period can follow arbitrarily many gains), and
/// domain_error for B <= 0 or two-sided B >= 1.
[[nodiscard]] inline FrontierPoint frontier_value(double lower_bound, RatioKind ratio, BoundKind bound,
                                                  const FrontierSearch& search = {}) {
    detail::check_frontier_args(lower_bound, bound);

    FrontierPoint p;
    p.lower_bound = lower_bound;
    p.ratio = ratio;
    p.bound = bound;
    if (bound == BoundKind::two_sided) {
        p.c_star = lower_bound;
        p.alpha_star = binding_alpha(lower_bound, lower_bound);
        p.value = ratio_of_mix(TwoLevelMix(lower_bound, lower_bound, p.alpha_star), ratio);
        return p;
    }

    BracketOptions opt;
    opt.lower = search.t_lower;
    opt.initial_upper = search.t_initial_upper;
    opt.upper_cap = search.t_cap;
    opt.rel_tol = search.rel_tol;
    opt.scan_points = search.scan_points;
    const ScalarMaximum best = bracket_and_maximize(
        [&](double t) { return detail::binding_ratio_at_log_level(lower_bound, t, ratio); }, opt);
    p.value = best.value;
    p.c_star = std::expm1(best.x);
    p.alpha_star = detail::loss_log(lower_bound) / (best.x + detail::loss_log(lower_bound));
    return p;
}

struct FrontierCurve {
    RatioKind ratio = RatioKind::sharpe;
    BoundKind bound = BoundKind::one_sided;
    double from = 0.0;
    double to = 0.0;
    std::size_t count = 0;  // grid is linear in B: from + i (to - from) / (count - 1)
    std::vector<FrontierPoint> points;
};

/// Frontier on a linear grid of B. A single point is allowed when from == to.
/// Grid points may be evaluated on several threads; the result does not
/// depend on the thread count.
[[nodiscard]] inline FrontierCurve frontier_curve(double from, double to, std::size_t count,
                                                  RatioKind ratio, BoundKind bound,
                                                  unsigned threads = 1,
                                                  const FrontierSearch& search = {}) {
    const bool single = count == 1 && from == to;
    if (!single && !(count >= 2 && from < to)) {
        throw domain_error("frontier curve needs from < to and at least 2 points (or one point with from == to)");
    }
    FrontierCurve curve{ratio, bound, from, to, count, std::vector<FrontierPoint>(count)};
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = single ? from
                  : i + 1 == count
                      ? to
                      : from + (to - from) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    // Errors surface on the caller's thread, before any worker starts.
    for (double b : grid) {
        detail::check_frontier_args(b, bound);
    }

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    auto work = [&](unsigned id) {
        for (std::size_t i = id; i < count; i += threads) {
            curve.points[i] = frontier_value(grid[i], ratio, bound, search);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned id = 0; id < threads; ++id) {
            pool.emplace_back(work, id);
        }
    }
    return curve;
}

}  // namespace sharpe_bound
