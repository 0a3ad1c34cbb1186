#pragma once

#include "wnls/field.hpp"

namespace wnls {

/// L^p norm by quadrature.  radial1d: (4π Σ_j |u(r_j)|^p r_j² Δr)^{1/p}
/// (composite trapezoid with vanishing end members); periodic3d:
/// ((L/n)³ Σ |u|^p)^{1/p}.  p = ∞ is max |u|, with the r→0 limit included
/// on the radial grid.  Throws for p < 1.
double lebesgue_norm(const Field& f, double p);

/// Ḣ^s (homogeneous) or H^s norm computed in spectral space with Parseval
/// weights: ||·||² = Σ_k w_k sym(|ξ_k|)² |f̂_k|², sym = |ξ|^s or (1+|ξ|²)^{s/2}.
double sobolev_norm(const Field& f, double s, bool homogeneous);

/// ||f||_2 via quadrature (identical to sobolev_norm(f, 0, ·) up to roundoff).
double l2_norm(const Field& f);

/// ∫ a(x) conj(b(x)) dx.
cplx inner_l2(const Field& a, const Field& b);

/// ||∇f||_2 = 2π ||f||_{Ḣ^1} under the 2π Fourier convention.
double grad_l2(const Field& f);

/// Value of a radial field at r = 0, evaluated as the limit of its sine
/// interpolant: u(0) = (2π/R) Σ_k ρ_k² f̂_k.  Exact for the grid interpolant.
cplx origin_value(const Field& f);

/// Pointwise |∇f| as a (real-valued) field: |∂_r f| on the radial backend,
/// Euclidean magnitude of the spectral gradient on the periodic backend.
Field gradient_magnitude(const Field& f);

/// ∂_r f at the radial sample points (radial1d only).
Field radial_derivative(const Field& f);

/// The three Cartesian components of ∇f (periodic3d only).
std::vector<Field> gradient_components(const Field& f);

}  // namespace wnls
