#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace latinfo {

/// Neumaier's improved Kahan summation.
class NeumaierSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <class Range>
double compensated_sum(const Range& values) {
    NeumaierSum s;
    for (double v : values) s.add(v);
    return s.value();
}

/// Compensated sum in ascending order; independent of input order.
inline double sorted_sum(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return compensated_sum(values);
}

}  // namespace latinfo
