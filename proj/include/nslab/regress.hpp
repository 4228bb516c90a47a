#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace nslab {

struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
};

/// Least squares of log(value) on log(t) over series[lo, hi). Requires at
/// least 5 points, all strictly positive.
SlopeFit slope_regress(const std::vector<std::pair<double, double>>& series, std::size_t lo,
                       std::size_t hi);

}  // namespace nslab
