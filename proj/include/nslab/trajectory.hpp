#pragma once

#include <vector>

#include "nslab/field.hpp"
#include "nslab/grid.hpp"
#include "nslab/ops.hpp"

namespace nslab {

/// Time-indexed velocity samples on a shared grid and geometric time grid.
class Trajectory {
  public:
    Trajectory(const HalfSpaceGrid& grid, const TimeGrid& times)
        : grid_(&grid), times_(times) {
        fields_.reserve(times.size());
        for (std::size_t k = 0; k < times.size(); ++k) fields_.emplace_back(grid);
    }

    const HalfSpaceGrid& grid() const { return *grid_; }
    const TimeGrid& times() const { return times_; }
    std::size_t size() const { return fields_.size(); }
    VectorField& operator[](std::size_t k) { return fields_[k]; }
    const VectorField& operator[](std::size_t k) const { return fields_[k]; }

    void require_finite(const char* where) const {
        for (const auto& f : fields_) f.require_finite(where);
    }

  private:
    const HalfSpaceGrid* grid_;
    TimeGrid times_;
    std::vector<VectorField> fields_;
};

/// sup_k t_k^beta * ||f(t_k)||_p.
double weighted_sup_norm(const Trajectory& traj, double beta, double p);

/// Pointwise-in-time difference a - b (same grids and time grids).
Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b);

}  // namespace nslab
