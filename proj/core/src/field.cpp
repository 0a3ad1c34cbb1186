#include "wnls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace wnls {

Field::Field(GridPtr grid, std::vector<cplx> samples)
    : grid_(std::move(grid)), v_(std::move(samples)) {
    if (v_.size() != grid_->point_count())
        throw std::invalid_argument("Field: sample count does not match grid");
}

bool Field::all_finite() const {
    for (const cplx& z : v_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Field& Field::operator+=(const Field& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

Field& Field::operator*=(cplx a) {
    for (cplx& z : v_) z *= a;
    return *this;
}

Field abs2_field(const Field& f) {
    Field out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::norm(f[i]);
    return out;
}

Field hadamard(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

Field conj_field(const Field& f) {
    Field out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::conj(f[i]);
    return out;
}

double max_abs_diff(const Field& a, const Field& b) {
    require_same_grid(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

void require_same_grid(const Field& a, const Field& b) {
    if (!a.grid() || !b.grid() || !a.grid()->same_as(*b.grid()))
        throw std::invalid_argument("fields live on different grids");
}

}  // namespace wnls
