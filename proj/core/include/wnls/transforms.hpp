#pragma once

#include "wnls/field.hpp"

namespace wnls {

/// Forward transform under f̂(ξ) = ∫ e^{-2πi x·ξ} f(x) dx.
///
/// radial1d: the 3D radial Fourier transform collapses to a sine transform
/// of U(r) = r·u(r),
///     ρ f̂(ρ) = 2 ∫_0^∞ U(r) sin(2πρr) dr,
/// which on r_j = jR/n, ρ_k = k/(2R) is an (unnormalized) DST-I; every
/// radial |ξ|-multiplier is exactly diagonal on the coefficients.
///
/// periodic3d: plain 3D DFT scaled by the cell volume (L/n)³.
///
/// Round trips are exact to machine precision and Parseval holds exactly
/// on the grid.  Throws on non-finite input.
SpectralField transform(const Field& f);
Field inverse_transform(const SpectralField& s);

/// inverse_transform(transform(f)) without the intermediate object;
/// multiplies coefficient k by symbol[k] in between.
Field apply_symbol_table(const Field& f, const std::vector<cplx>& symbol);

}  // namespace wnls
