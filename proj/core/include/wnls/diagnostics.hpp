#pragma once

#include <array>
#include <optional>

#include "wnls/dynamics.hpp"
#include "wnls/multipliers.hpp"

namespace wnls {

/// One row of the quantities the theory tracks along a run.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass_u = 0.0, mass_v = 0.0;      // L² squares
    double M_w = 0.0;                       // μ||u||₂² + λ||v||₂²
    double E_w = 0.0;                       // weighted energy
    double E_w_mod = 0.0;                   // E_w(Iu, Iv)
    double hs_u = 0.0, hs_v = 0.0;          // H^s norms
    double dEmod_dt = 0.0;                  // commutator-formula derivative
    double interaction_L4 = 0.0;            // instantaneous ∫(|u|⁴+|v|⁴+|u|²|v|²)
    std::optional<double> morawetz_M;       // 3D backend only
};

/// μ||u||₂² + λ||v||₂² (squared-norm convention).
double weighted_mass(const CoupledState& state);

/// E_w(u,v) = ½ ∫ [μ|∇u|² + λ|∇v|² + λμ|u|²|v|²] dx, the gradient part
/// spectral (physical gradient, 2π included), the quartic by quadrature.
double weighted_energy(const CoupledState& state);
double weighted_energy(const Field& u, const Field& v, double lambda, double mu);

/// E_w(Iu, Iv).
double modified_energy(const CoupledState& state, double N, double s);

enum class Side { u, v };

/// |Iv|²(Iu) − I(|v|²u) (u side) or |Iu|²(Iv) − I(|u|²v) (v side).
Field commutator_field(const CoupledState& state, double N, double s, Side side);

/// The five-term frequency decomposition of the commutator across the N/8
/// low/high split; the terms sum to commutator_field up to the vanishing
/// all-low commutator (its product spectrum stays below N, where I is the
/// identity).
std::array<Field, 5> commutator_terms(const CoupledState& state, double N, double s, Side side);

/// d/dt E_w(Iu, Iv) evaluated through the commutator pairing
///   λμ Re ∫ [ conj(∂_t Iu) C_u + conj(∂_t Iv) C_v ] dx
/// with ∂_t Iu substituted from the equation i∂_t Iu = λI(|v|²u) − ΔIu.
/// No finite differencing anywhere in the formula.
double modified_energy_derivative(const CoupledState& state, double N, double s);

/// Weight-coupled interaction Morawetz potential with a(x,y) = |x−y|:
/// all four double integrals evaluated as a direct O(n⁶) double sum with
/// the x = y diagonal excluded and gradients computed spectrally first.
/// periodic3d with n <= 24 only (cost guard).
double morawetz_potential(const CoupledState& state);

/// M together with its analytic time derivative: the momentum and mass
/// densities are differentiated through the equation (∂_t u = i(Δu − λ|v|²u))
/// and pushed through the same double sum.  Independent of any finite
/// differencing of M itself.
std::pair<double, double> morawetz_potential_and_rate(const CoupledState& state);

/// ∫_J ∫ (|u|⁴ + |v|⁴ + |u|²|v|²) dx dt by trapezoid over the samples.
double interaction_functional(const Trajectory& traj);

/// Optional multiplier/derivative prefix for space-time norms, e.g.
/// High(N/8)∘∇∘I.  The commuting multipliers are fused into one pass; the
/// gradient (if requested) is applied last and the L^r_x norm is taken of
/// its pointwise magnitude.
struct TransformChain {
    std::vector<MultiplierSpec> specs;
    bool gradient = false;
};

/// L^q_t L^r_x over the sampled trajectory (>= 16 samples), trapezoid in t,
/// max for q = ∞.
double spacetime_norm(const Trajectory& traj, double q, double r,
                      const TransformChain& chain = {}, Side component = Side::u);

/// ||F||_{X_R}: R^{1/q-1}||ψ(Rx)F||_{L^q_tL²_x}
///            + R^{1/q-1} Σ_{j>=0} 2^{j(1-1/q)} ||χ(2^{-j}Rx)F||_{L^q_tL²_x},
/// χ(x) = ψ(x/2) − ψ(x), the sum running until the annulus leaves the grid.
/// Requires 1 <= q < 2.
double xr_norm(const Trajectory& traj, double R_cutoff, double q, Side component = Side::u);

/// Full record at one sampled state; morawetz only when requested (and the
/// backend admits it).
DiagnosticsRecord make_record(const CoupledState& state, bool with_morawetz = false);

}  // namespace wnls
