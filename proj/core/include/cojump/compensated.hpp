#pragma once

#include <cmath>

namespace cojump {

// Neumaier-compensated accumulator. Long sums stay exact to ~1 ulp, which is
// what keeps the algebraic identities between the estimators intact at n ~ 1e5.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace cojump
