#pragma once

#include "wnls/field.hpp"

namespace wnls {

/// Littlewood–Paley bump: ψ(x) = 1 for |x| <= 1, 0 for |x| >= 2, with a
/// C¹ cubic smoothstep in between; radial and nonincreasing.  Any profile
/// with this support works; one is pinned for bit-reproducibility.
double psi_profile(double x);
/// χ(x) = ψ(x/2) − ψ(x), supported on 1 <= |x| <= 4.
double chi_profile(double x);

/// Radial Fourier-multiplier symbols m(|ξ|).  All symbols used here are
/// functions of |ξ| alone, so they are diagonal on both backends and
/// commute pairwise.
struct MultiplierSpec {
    enum class Kind {
        fractional_power,     // |ξ|^s              (a = s)
        inhomogeneous_power,  // (1+|ξ|²)^{s/2}     (a = s)
        littlewood_paley,     // φ_j(ξ) = ψ(2^{-j}ξ) − ψ(2^{-j+1}ξ)   (j = band)
        low_pass,             // ψ(|ξ|/N)           (a = N)
        high_pass,            // 1 − ψ(|ξ|/N)       (a = N)
        i_operator,           // m_N: 1 below N, (N/|ξ|)^{1-s} above 2N (a = N, b = s)
        schrodinger_phase,    // e^{-4π²it|ξ|²}     (a = t)
    };

    Kind kind;
    double a = 0.0;
    double b = 0.0;
    int band = 0;

    static MultiplierSpec fractional_power(double s) { return {Kind::fractional_power, s, 0.0, 0}; }
    static MultiplierSpec inhomogeneous_power(double s) { return {Kind::inhomogeneous_power, s, 0.0, 0}; }
    static MultiplierSpec littlewood_paley(int j) { return {Kind::littlewood_paley, 0.0, 0.0, j}; }
    static MultiplierSpec low_pass(double N) { return {Kind::low_pass, N, 0.0, 0}; }
    static MultiplierSpec high_pass(double N) { return {Kind::high_pass, N, 0.0, 0}; }
    static MultiplierSpec i_operator(double N, double s) { return {Kind::i_operator, N, s, 0}; }
    static MultiplierSpec schrodinger_phase(double t) { return {Kind::schrodinger_phase, t, 0.0, 0}; }
};

/// Exact symbol value at |ξ| = xi_mag >= 0.  Total function: never throws.
/// In the i_operator gap N < |ξ| < 2N the value is the C¹ monotone log-space
/// smoothstep blend pinned to both closed forms at the endpoints.
cplx eval_symbol(const MultiplierSpec& spec, double xi_mag);

/// transform → pointwise multiply by the symbol at each grid frequency →
/// inverse transform.  Linear in the field.
Field apply_multiplier(const Field& f, const MultiplierSpec& spec);
/// Composition of several (commuting) multipliers in one transform pass.
Field apply_multipliers(const Field& f, const std::vector<MultiplierSpec>& specs);

/// Littlewood–Paley projections.
struct LpMode {
    enum class Kind { band, low, high };
    Kind kind;
    int j = 0;
    double N = 0.0;
    static LpMode Band(int j) { return {Kind::band, j, 0.0}; }
    static LpMode Low(double N) { return {Kind::low, 0, N}; }
    static LpMode High(double N) { return {Kind::high, 0, N}; }
};

/// P_j f, P_{<=N} f, or P_{>N} f = f − P_{<=N} f.  High and Low are exact
/// complements by construction.
Field lp_project(const Field& f, const LpMode& mode);

/// The I-operator: apply_multiplier with i_operator(N, s).
/// Requires 1/2 < s < 1 and N > 0.
Field i_apply(const Field& f, double N, double s);

}  // namespace wnls
