#include "nslab/regress.hpp"

#include <cmath>
#include <stdexcept>

namespace nslab {

SlopeFit slope_regress(const std::vector<std::pair<double, double>>& series, std::size_t lo,
                       std::size_t hi) {
    if (hi > series.size()) hi = series.size();
    if (hi < lo || hi - lo < 5)
        throw std::invalid_argument("slope_regress: need at least 5 points");
    const std::size_t n = hi - lo;
    double sx = 0.0, sy = 0.0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [t, v] = series[lo + i];
        if (!(t > 0.0) || !(v > 0.0))
            throw std::invalid_argument("slope_regress: nonpositive sample");
        xs[i] = std::log(t);
        ys[i] = std::log(v);
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = ys[i] - my - fit.slope * (xs[i] - mx);
        ss += r * r;
    }
    if (n > 2) fit.stderr_ = std::sqrt(ss / (double(n - 2) * sxx));
    return fit;
}

}  // namespace nslab
