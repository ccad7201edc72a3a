#pragma once

// High Sharpe ratio while losing everything. Deterministic family: k - 1
// periods of +gain followed by one period of -100%. I.i.d. family: each
// period is +gain with probability (k - 1)/k and -100% with probability 1/k.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "metrics.hpp"
#include "random.hpp"

namespace sharpe_bound {

inline constexpr double kDefaultGain = 0.05;

/// k - 1 returns of gain followed by a single -1.
[[nodiscard]] inline ReturnSeries deterministic_series(std::size_t k, double gain = kDefaultGain) {
    if (k < 2) {
        throw input_error("deterministic family needs k >= 2, got " + std::to_string(k));
    }
    if (!(gain > 0.0) || std::isinf(gain)) {
        throw input_error("gain must be positive and finite");
    }
    std::vector<double> xs(k, gain);
    xs.back() = -1.0;
    return ReturnSeries(std::move(xs));
}

[[nodiscard]] inline RatioReport deterministic_family(std::size_t k, double gain = kDefaultGain,
                                                      Convention convention = Convention::population) {
    return analyze(deterministic_series(k, gain), convention);
}

struct IidSpec {
    std::size_t k = 2;           // loss probability 1/k
    double gain = kDefaultGain;  // return on the good outcome
    std::size_t periods = 2;
    std::uint64_t seed = 0;

    void validate() const {
        if (k < 2) {
            throw input_error("iid spec: k must be >= 2");
        }
        if (periods < 2) {
            throw input_error("iid spec: N must be >= 2");
        }
        if (!(gain > 0.0) || std::isinf(gain)) {
            throw input_error("iid spec: gain must be positive and finite");
        }
    }
};

/// Sharpe ratio of the two-point law itself, the almost-sure limit of Sh_N:
/// (gain - (1 + gain)/k) / ((1 + gain) sqrt((1/k)(1 - 1/k))).
[[nodiscard]] inline double population_sharpe_iid(const IidSpec& spec) {
    spec.validate();
    const double p = 1.0 / static_cast<double>(spec.k);
    const double mean = spec.gain - (1.0 + spec.gain) * p;
    const double sd = (1.0 + spec.gain) * std::sqrt(p * (1.0 - p));
    return mean / sd;
}

struct TrajectoryPoint {
    std::size_t n = 0;
    std::optional<double> sharpe;
    std::optional<double> sortino;
    double wealth = 1.0;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    std::vector<double> returns;  // the full simulated sample
};

/// Checkpoints ceil(10^(j/8)) for j = 0, 1, ..., deduplicated, restricted
/// to n >= 2 and capped at periods; periods itself is always the last one.
[[nodiscard]] inline std::vector<std::size_t> log_checkpoints(std::size_t periods) {
    std::vector<std::size_t> out;
    for (int j = 0;; ++j) {
        const double raw = std::ceil(std::pow(10.0, j / 8.0) - 1e-9);
        if (raw >= static_cast<double>(periods)) {
            break;
        }
        const auto n = static_cast<std::size_t>(raw);
        if (n >= 2 && (out.empty() || out.back() != n)) {
            out.push_back(n);
        }
    }
    if (periods >= 2) {
        out.push_back(periods);
    }
    return out;
}

/// Simulates the i.i.d. family. Each checkpoint evaluates the stored prefix
/// with analyze(), so the last point equals analyze(returns) exactly.
/// Draw rule: period n is a loss iff RandomStream::uniform() < 1/k.
[[nodiscard]] inline Trajectory simulate_iid(const IidSpec& spec,
                                             Convention convention = Convention::population) {
    spec.validate();
    RandomStream rng(spec.seed);
    const double loss_probability = 1.0 / static_cast<double>(spec.k);
    Trajectory t;
    t.returns.resize(spec.periods);
    for (double& x : t.returns) {
        x = rng.uniform() < loss_probability ? -1.0 : spec.gain;
    }
    const std::span<const double> all(t.returns);
    for (std::size_t n : log_checkpoints(spec.periods)) {
        const RatioReport r = detail::analyze_unchecked(all.first(n), convention);
        t.points.push_back({n, r.sharpe, r.sortino, r.wealth_multiple});
    }
    return t;
}

}  // namespace sharpe_bound
