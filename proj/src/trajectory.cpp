#include "nslab/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace nslab {

double weighted_sup_norm(const Trajectory& traj, double beta, double p) {
    if (beta < 0.0) throw std::invalid_argument("weighted_sup_norm: beta must be >= 0");
    double sup = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        double v = std::pow(traj.times()[k], beta) * lp_norm(traj[k], p);
        sup = std::max(sup, v);
    }
    return sup;
}

Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b) {
    if (a.size() != b.size() || !a.grid().same_layout(b.grid()))
        throw std::invalid_argument("trajectory_difference: layout mismatch");
    Trajectory d(a.grid(), a.times());
    for (std::size_t k = 0; k < a.size(); ++k) {
        d[k] = a[k];
        d[k].axpy(-1.0, b[k]);
    }
    return d;
}

}  // namespace nslab
