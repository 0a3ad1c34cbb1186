#pragma once

#include <cmath>
#include <stdexcept>

namespace wnls {

// Physical gradient vs. |∇|^s bookkeeping: with the Fourier convention
// f̂(ξ) = ∫ e^{-2πi x·ξ} f(x) dx the multiplier of ∇ is 2πiξ, so
// ||∇f||_2 = 2π ||f||_{Ḣ^1}.  Energies use the physical gradient; Sobolev
// norms use the bare |ξ|^s symbol.  Every 2π of this kind comes from here.
inline constexpr double grad_symbol_factor = 2.0 * 3.14159265358979323846;
inline constexpr double pi = 3.14159265358979323846;

/// Coupling constants and I-method parameters for the system
///   i u_t + Δu = λ|v|²u,   i v_t + Δv = μ|u|²v.
/// λ = μ = 0 is admitted as a linear test mode.
struct PhysParams {
    double lambda = 1.0;  // coupling on the u equation, >= 0
    double mu = 1.0;      // coupling on the v equation, >= 0
    double s = 0.75;      // regularity exponent
    double N = 16.0;      // I-operator threshold frequency, > 0

    void validate() const {
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("PhysParams: lambda must be >= 0 and finite");
        if (!(mu >= 0.0) || !std::isfinite(mu))
            throw std::invalid_argument("PhysParams: mu must be >= 0 and finite");
        if (!(N > 0.0) || !std::isfinite(N))
            throw std::invalid_argument("PhysParams: N must be > 0 and finite");
        if (!std::isfinite(s))
            throw std::invalid_argument("PhysParams: s must be finite");
    }

    // Norm operations tolerate any s in [-2, 2]; the I-method needs 1/2 < s < 1.
    void require_i_method() const {
        validate();
        if (!(s > 0.5 && s < 1.0))
            throw std::invalid_argument("PhysParams: I-method operations require 1/2 < s < 1");
    }
};

/// Enforced at every I-operator entry point.
inline void require_i_exponent(double s) {
    if (!(s > 0.5 && s < 1.0))
        throw std::invalid_argument("I-operator requires 1/2 < s < 1");
}

}  // namespace wnls
