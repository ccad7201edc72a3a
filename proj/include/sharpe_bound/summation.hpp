#pragma once

#include <cmath>

namespace sharpe_bound {

// Neumaier's variant of Kahan summation. The running compensation also
// captures the low-order bits lost when an addend is larger than the sum.
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;

    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

    [[nodiscard]] constexpr double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace sharpe_bound
