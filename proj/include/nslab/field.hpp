#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nslab/grid.hpp"

namespace nslab {

/// Sample layout shared by all field types: component-major, then normal row,
/// then flattened tangential index (x1 fastest). value(c, row, it) =
/// data[(c*rows + row)*tan_points + it].
class FieldBase {
  public:
    FieldBase(const HalfSpaceGrid& grid, std::size_t components);
    virtual ~FieldBase() = default;
    FieldBase(const FieldBase&) = default;
    FieldBase& operator=(const FieldBase&) = default;
    FieldBase(FieldBase&&) = default;
    FieldBase& operator=(FieldBase&&) = default;

    const HalfSpaceGrid& grid() const { return *grid_; }
    std::size_t components() const { return comps_; }
    std::size_t size() const { return data_.size(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double& at(std::size_t c, std::size_t row, std::size_t it) {
        return data_[(c * rows_ + row) * tan_ + it];
    }
    double at(std::size_t c, std::size_t row, std::size_t it) const {
        return data_[(c * rows_ + row) * tan_ + it];
    }
    double* component(std::size_t c) { return data_.data() + c * rows_ * tan_; }
    const double* component(std::size_t c) const { return data_.data() + c * rows_ * tan_; }
    std::size_t component_size() const { return rows_ * tan_; }

    /// True when every sample is finite.
    bool finite() const;
    /// Throws std::runtime_error when a sample is NaN/Inf.
    void require_finite(const char* where) const;

    double max_abs() const;

    void fill(double v);
    void scale(double a);
    /// this += a * other (same grid and component count required).
    void axpy(double a, const FieldBase& other);

  protected:
    const HalfSpaceGrid* grid_;
    std::size_t comps_, rows_, tan_;
    std::vector<double> data_;
};

class ScalarField : public FieldBase {
  public:
    explicit ScalarField(const HalfSpaceGrid& grid) : FieldBase(grid, 1) {}
    double& at(std::size_t row, std::size_t it) { return FieldBase::at(0, row, it); }
    double at(std::size_t row, std::size_t it) const { return FieldBase::at(0, row, it); }
};

class VectorField : public FieldBase {
  public:
    explicit VectorField(const HalfSpaceGrid& grid)
        : FieldBase(grid, std::size_t(grid.dim())) {}
};

/// Symmetric tensor with upper-triangle storage; (k,l) and (l,k) alias the
/// same samples by construction.
class SymTensorField : public FieldBase {
  public:
    explicit SymTensorField(const HalfSpaceGrid& grid)
        : FieldBase(grid, std::size_t(grid.dim()) * (grid.dim() + 1) / 2) {}

    /// Packed index of the (k, l) component, 0-based indices in [0, n).
    std::size_t pack(std::size_t k, std::size_t l) const {
        if (k > l) std::swap(k, l);
        std::size_t n = std::size_t(grid_->dim());
        return k * n - k * (k + 1) / 2 + l;
    }
    double& at(std::size_t k, std::size_t l, std::size_t row, std::size_t it) {
        return FieldBase::at(pack(k, l), row, it);
    }
    double at(std::size_t k, std::size_t l, std::size_t row, std::size_t it) const {
        return FieldBase::at(pack(k, l), row, it);
    }
    double* comp(std::size_t k, std::size_t l) { return component(pack(k, l)); }
    const double* comp(std::size_t k, std::size_t l) const { return component(pack(k, l)); }
};

/// General n x n tensor (not necessarily symmetric), row-major components.
class MatrixField : public FieldBase {
  public:
    explicit MatrixField(const HalfSpaceGrid& grid)
        : FieldBase(grid, std::size_t(grid.dim()) * std::size_t(grid.dim())) {}

    std::size_t pack(std::size_t row, std::size_t col) const {
        return row * std::size_t(grid_->dim()) + col;
    }
    double* comp(std::size_t row, std::size_t col) { return component(pack(row, col)); }
    const double* comp(std::size_t row, std::size_t col) const {
        return component(pack(row, col));
    }
};

/// Tangential-only field (boundary data on the wall grid).
class BoundaryField {
  public:
    explicit BoundaryField(const HalfSpaceGrid& grid)
        : grid_(&grid), data_(grid.tan_points(), 0.0) {}

    const HalfSpaceGrid& grid() const { return *grid_; }
    std::size_t size() const { return data_.size(); }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

  private:
    const HalfSpaceGrid* grid_;
    std::vector<double> data_;
};

}  // namespace nslab
