#include "nslab/field.hpp"

#include <cmath>
#include <string>

namespace nslab {

FieldBase::FieldBase(const HalfSpaceGrid& grid, std::size_t components)
    : grid_(&grid),
      comps_(components),
      rows_(grid.rows()),
      tan_(grid.tan_points()),
      data_(components * grid.rows() * grid.tan_points(), 0.0) {}

bool FieldBase::finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

void FieldBase::require_finite(const char* where) const {
    if (!finite()) throw std::runtime_error(std::string(where) + ": non-finite sample");
}

double FieldBase::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

void FieldBase::fill(double v) {
    for (double& x : data_) x = v;
}

void FieldBase::scale(double a) {
    for (double& x : data_) x *= a;
}

void FieldBase::axpy(double a, const FieldBase& other) {
    if (other.data_.size() != data_.size())
        throw std::invalid_argument("FieldBase::axpy: layout mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * other.data_[i];
}

}  // namespace nslab
