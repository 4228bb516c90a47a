#pragma once

#include <cstddef>
#include <vector>

namespace nslab {

/// Discretized half space: periodic tangential box of period L with N_tan
/// points per tangential axis (n-1 axes), normal interval [0, H] with N_nor
/// cells (N_nor + 1 node rows, the wall row x_n = 0 included). An optional
/// algebraic grading (exponent 2) clusters normal nodes at the wall; the
/// spectral paths require the uniform mesh and say so.
class HalfSpaceGrid {
  public:
    HalfSpaceGrid(int n, std::size_t n_tan, std::size_t n_nor, double length,
                  double height, double grading = 1.0);

    int dim() const { return n_; }
    std::size_t n_tan() const { return n_tan_; }
    std::size_t n_nor() const { return n_nor_; }
    double length() const { return length_; }
    double height() const { return height_; }
    double grading() const { return grading_; }
    bool uniform_normal() const { return grading_ == 1.0; }

    double tan_spacing() const { return length_ / double(n_tan_); }
    double nor_spacing() const { return height_ / double(n_nor_); }

    /// Node rows in the normal direction (size n_nor() + 1, x[0] = 0, x.back() = H).
    const std::vector<double>& normal_nodes() const { return x_nor_; }
    /// Trapezoid weights matching normal_nodes().
    const std::vector<double>& normal_weights() const { return w_nor_; }

    std::size_t rows() const { return n_nor_ + 1; }
    std::size_t tan_points() const { return tan_points_; }     // N_tan^(n-1)
    std::size_t node_count() const { return rows() * tan_points_; }

    /// Resolvable dyadic band range: 2^{j_min} >= 2*pi/L, 2^{j_max} <= pi*N_tan/L.
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }

    /// Signed tangential wavenumber of DFT bin k along one axis, in physical
    /// units xi = 2*pi*k_signed/L.
    double tan_frequency(std::size_t bin) const;

    /// Grid with every resolution parameter scaled by the given factors
    /// (tangential points, normal cells); box unchanged.
    HalfSpaceGrid refined(double tan_factor, double nor_factor) const;

    /// Grid for the scaling experiment: box shrunk by lambda, same node counts.
    HalfSpaceGrid rescaled(double lambda) const;

    bool same_layout(const HalfSpaceGrid& o) const;

  private:
    int n_;
    std::size_t n_tan_, n_nor_;
    double length_, height_, grading_;
    std::size_t tan_points_;
    std::vector<double> x_nor_, w_nor_;
    int j_min_, j_max_;
};

/// Geometric time grid t_k = t0 * ratio^k, k = 0..count-1.
class TimeGrid {
  public:
    TimeGrid(double t0, double ratio, std::size_t count);

    std::size_t size() const { return times_.size(); }
    double operator[](std::size_t k) const { return times_[k]; }
    const std::vector<double>& times() const { return times_; }
    double t0() const { return times_.front(); }
    double ratio() const { return ratio_; }

    TimeGrid rescaled(double lambda) const { return TimeGrid(t0() / (lambda * lambda), ratio_, size()); }

  private:
    double ratio_;
    std::vector<double> times_;
};

}  // namespace nslab
