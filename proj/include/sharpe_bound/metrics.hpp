#pragma once

// Sample statistics of a finite sequence of simple per-period returns:
// mean, volatility, downside deviation, Sharpe and Sortino ratios and the
// wealth multiple prod(1 + x_n). Benchmark return is zero throughout.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "summation.hpp"

namespace sharpe_bound {

/// Normalisation of the second moments: 1/N (population) or 1/(N-1) (sample).
enum class Convention { population, sample };

/// A validated sequence of simple returns; every element is >= -1 and N >= 1.
class ReturnSeries {
public:
    explicit ReturnSeries(std::vector<double> returns) : returns_(std::move(returns)) {
        validate(returns_);
    }

    /// Throws input_error on an empty range, domain_error on x < -1 or NaN.
    static void validate(std::span<const double> returns) {
        if (returns.empty()) {
            throw input_error("return series is empty");
        }
        for (std::size_t i = 0; i < returns.size(); ++i) {
            const double x = returns[i];
            if (!(x >= -1.0) || std::isinf(x)) {
                throw domain_error("return #" + std::to_string(i + 1) + " = " + std::to_string(x) +
                                   " is outside [-1, inf)");
            }
        }
    }

    [[nodiscard]] std::span<const double> values() const noexcept { return returns_; }
    [[nodiscard]] std::size_t size() const noexcept { return returns_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return returns_[i]; }

    friend bool operator==(const ReturnSeries&, const ReturnSeries&) = default;

private:
    std::vector<double> returns_;
};

struct RatioReport {
    std::size_t count = 0;
    double mean = 0.0;
    double volatility = 0.0;
    double downside_deviation = 0.0;
    std::optional<double> sharpe;   // absent iff volatility == 0
    std::optional<double> sortino;  // absent iff downside_deviation == 0
    double wealth_multiple = 1.0;

    friend bool operator==(const RatioReport&, const RatioReport&) = default;
};

namespace detail {

/// prod(1 + x_n), multiplied left to right. The binary exponent is carried
/// separately so intermediate products cannot overflow or get stuck in the
/// subnormal range; the result matches plain multiplication whenever that
/// stays in range.
[[nodiscard]] inline double wealth_product(std::span<const double> returns) noexcept {
    double m = 1.0;
    long long e = 0;
    for (double x : returns) {
        m *= 1.0 + x;
        if (m == 0.0) {
            return 0.0;
        }
        int ex = 0;
        m = std::frexp(m, &ex);
        e += ex;
    }
    constexpr long long limit = 1 << 20;
    return std::ldexp(m, static_cast<int>(std::clamp(e, -limit, limit)));
}

// Assumes the domain was already checked.
[[nodiscard]] inline RatioReport analyze_unchecked(std::span<const double> returns,
                                                   Convention convention) {
    const std::size_t n = returns.size();
    if (n < 2) {
        throw input_error("degenerate series: at least 2 returns are required, got " +
                          std::to_string(n));
    }
    CompensatedSum sum;
    for (double x : returns) {
        sum += x;
    }
    const auto [lo, hi] = std::minmax_element(returns.begin(), returns.end());
    // A constant series has that constant as its exact mean, so its
    // deviations vanish instead of leaving rounding residue.
    const double mean = *lo == *hi ? *lo
                                   : std::clamp(sum.value() / static_cast<double>(n), *lo, *hi);

    CompensatedSum sq;
    CompensatedSum down_sq;
    for (double x : returns) {
        const double d = x - mean;
        sq += d * d;
        if (d < 0.0) {
            down_sq += d * d;
        }
    }
    const double denom =
        convention == Convention::population ? static_cast<double>(n) : static_cast<double>(n - 1);

    RatioReport r;
    r.count = n;
    r.mean = mean;
    r.volatility = std::sqrt(sq.value() / denom);
    r.downside_deviation = std::sqrt(down_sq.value() / denom);
    if (r.volatility > 0.0) {
        r.sharpe = mean / r.volatility;
    }
    if (r.downside_deviation > 0.0) {
        r.sortino = mean / r.downside_deviation;
    }
    r.wealth_multiple = wealth_product(returns);
    return r;
}

}  // namespace detail

/// Mean, volatility, downside deviation, Sharpe, Sortino and wealth multiple.
/// Throws input_error when the series has fewer than two returns.
[[nodiscard]] inline RatioReport analyze(const ReturnSeries& series,
                                         Convention convention = Convention::population) {
    return detail::analyze_unchecked(series.values(), convention);
}

/// Span overload; validates the domain first.
[[nodiscard]] inline RatioReport analyze(std::span<const double> returns,
                                         Convention convention = Convention::population) {
    ReturnSeries::validate(returns);
    return detail::analyze_unchecked(returns, convention);
}

/// True iff the wealth multiple is strictly below 1.
[[nodiscard]] inline bool losing(const ReturnSeries& series) noexcept {
    return detail::wealth_product(series.values()) < 1.0;
}

[[nodiscard]] inline std::string to_string(Convention c) {
    return c == Convention::population ? "n" : "n-1";
}

}  // namespace sharpe_bound
