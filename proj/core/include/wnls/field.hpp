#pragma once

#include <complex>
#include <vector>

#include "wnls/grid.hpp"

namespace wnls {

using cplx = std::complex<double>;

/// Complex spatial samples on a Grid.  Radial fields store u(r_j) itself,
/// not r·u(r); the r-weighting lives inside the transform.  Fields are
/// immutable values from the caller's point of view: every operation
/// returns a fresh Field.
class Field {
public:
    Field() = default;
    explicit Field(GridPtr grid) : grid_(std::move(grid)), v_(grid_->point_count()) {}
    Field(GridPtr grid, std::vector<cplx> samples);

    const GridPtr& grid() const { return grid_; }
    std::size_t size() const { return v_.size(); }

    cplx& operator[](std::size_t i) { return v_[i]; }
    const cplx& operator[](std::size_t i) const { return v_[i]; }
    std::vector<cplx>& samples() { return v_; }
    const std::vector<cplx>& samples() const { return v_; }

    bool all_finite() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(cplx a);

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(cplx a, Field f) { return f *= a; }

private:
    GridPtr grid_;
    std::vector<cplx> v_;
};

/// Frequency coefficients f̂(ξ) on a Grid's mode set, under the convention
/// f̂(ξ) = ∫ e^{-2πi x·ξ} f(x) dx.  Parseval: Σ_k w_k |f̂_k|² = ||f||_2²
/// with w_k the grid's parseval_weights().
struct SpectralField {
    GridPtr grid;
    std::vector<cplx> coeffs;
};

/// Pointwise |f|² as a real-valued (stored complex) field.
Field abs2_field(const Field& f);
/// Pointwise product a·b.
Field hadamard(const Field& a, const Field& b);
/// Complex conjugate.
Field conj_field(const Field& f);

/// max_i |a_i - b_i| over samples.
double max_abs_diff(const Field& a, const Field& b);
double max_abs(const Field& f);

void require_same_grid(const Field& a, const Field& b);

}  // namespace wnls
