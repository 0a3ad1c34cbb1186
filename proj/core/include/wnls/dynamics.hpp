#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wnls/field.hpp"
#include "wnls/params.hpp"

namespace wnls {

/// The pair (u, v) at time t, the object evolved by
///   i u_t + Δu = λ|v|²u,   i v_t + Δv = μ|u|²v.
struct CoupledState {
    double t = 0.0;
    Field u, v;
    PhysParams params;

    void validate() const {
        params.validate();
        require_same_grid(u, v);
        if (!u.all_finite() || !v.all_finite())
            throw std::invalid_argument("CoupledState: non-finite samples");
    }
};

/// Raised when an evolution produces non-finite samples or a single-step
/// mass jump beyond 1e-3 relative; defocusing theory predicts neither, so
/// this flags discretization failure.
struct BlowupError : std::runtime_error {
    double t;
    explicit BlowupError(double when)
        : std::runtime_error("blow-up detected at t = " + std::to_string(when)), t(when) {}
};

struct TrajectorySample {
    double t;
    Field u, v;
    double interaction_cum = 0.0;  // ∫_0^t ∫ (|u|⁴+|v|⁴+|u|²|v|²) dx ds
    double l5_cum_pow = 0.0;       // ∫_0^t (||u||_5^5 + ||v||_5^5) ds
};

/// Time-sampled states plus running space-time integrals, accumulated by
/// per-step trapezoid.  Sample times are strictly increasing; both
/// accumulators are nondecreasing.
class Trajectory {
public:
    Trajectory(PhysParams params, double t_safe) : params_(params), t_safe_(t_safe) {}

    const std::vector<TrajectorySample>& samples() const { return samples_; }
    const PhysParams& params() const { return params_; }

    /// Horizon before domain-truncation artifacts (boundary reflection or
    /// periodic wrap) can contaminate the solution.
    double t_safe() const { return t_safe_; }
    bool beyond_t_safe(double t) const { return t > t_safe_; }

    bool blew_up() const { return blowup_time_.has_value(); }
    double blowup_time() const { return blowup_time_.value(); }

    /// Sample with time closest to t; throws if no sample is within
    /// 1e-9·max(1,|t|).
    const TrajectorySample& at_time(double t) const;
    std::size_t index_of_time(double t) const;

    void push(TrajectorySample s);
    void mark_blowup(double t) { blowup_time_ = t; }

private:
    PhysParams params_;
    double t_safe_;
    std::vector<TrajectorySample> samples_;
    std::optional<double> blowup_time_;
};

/// e^{itΔ}: the multiplier e^{-4π²it|ξ|²}.  Exactly unitary on the grid;
/// t may be negative.
Field free_propagate(const Field& f, double t);

/// One Strang step: half kinetic, exact potential flow for dt using the
/// moduli at substep entry (which that flow conserves), half kinetic.
/// Preserves both L² norms to roundoff; dt may be negative (the step is
/// time-symmetric).  Throws BlowupError on non-finite output or a mass
/// jump > 1e-3 relative.
CoupledState strang_step(const CoupledState& state, double dt);

/// Scalar cubic NLS path i w_t + Δw = λ|w|²w, same substep structure.
Field scalar_strang_step(const Field& w, double lambda, double dt);

using Observer = std::function<void(const TrajectorySample&)>;

/// March strang_step over [t0, t0+T], sampling every sample_every steps
/// (first and last states always sampled).  Observers see immutable
/// snapshots.  On blow-up the partial trajectory is returned with the
/// blow-up time marked.  Deterministic given inputs.
Trajectory evolve(const CoupledState& initial, double T, double dt, std::size_t sample_every,
                  const std::vector<Observer>& observers = {});

/// || u(t1) - e^{i(t1-t0)Δ} u(t0) + i ∫_{t0}^{t1} e^{i(t1-s)Δ} (λ|v|²u)(s) ds ||_2
/// plus the symmetric v residual, the integral by trapezoid over the saved
/// samples in [t0, t1].  Both endpoints must be sampled times.
double duhamel_residual(const Trajectory& traj, double t0, double t1);

/// (u,v)(x) → a(u(ax), v(ax)) by spectral resampling onto a grid with
/// extent scaled by 1/a (frequency bins map one-to-one).  This scaling
/// leaves the system itself and the Ḣ^{1/2} norm invariant; couplings are
/// left untouched.  Throws if the resampled L² mass disagrees with the
/// exact a^{-1/2} scaling by more than 1%.
CoupledState rescale(const CoupledState& state, double a);

/// Largest bisected a <= 1 with E_w(Iu_a, Iv_a) <= 1/2.
double choose_rescaling(const CoupledState& state, double N, double s);

/// T_safe = extent / (2 · max group speed), the group speed estimated as
/// 4π times the 99.9% spectral mass quantile of the initial pair.
double t_safe_estimate(const CoupledState& state);

/// Instantaneous ∫ (|u|⁴ + |v|⁴ + |u|²|v|²) dx.
double interaction_density(const CoupledState& state);
double interaction_density(const Field& u, const Field& v);

}  // namespace wnls
