#include "wnls/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wnls/multipliers.hpp"
#include "wnls/norms.hpp"
#include "wnls/transforms.hpp"

namespace wnls {

void Trajectory::push(TrajectorySample s) {
    if (!samples_.empty()) {
        if (!(s.t > samples_.back().t))
            throw std::invalid_argument("Trajectory: sample times must increase");
        if (s.interaction_cum < samples_.back().interaction_cum - 1e-14 ||
            s.l5_cum_pow < samples_.back().l5_cum_pow - 1e-14)
            throw std::invalid_argument("Trajectory: accumulators must be nondecreasing");
    }
    samples_.push_back(std::move(s));
}

std::size_t Trajectory::index_of_time(double t) const {
    const double tol = 1e-9 * std::max(1.0, std::abs(t));
    for (std::size_t i = 0; i < samples_.size(); ++i)
        if (std::abs(samples_[i].t - t) <= tol) return i;
    throw std::invalid_argument("Trajectory: time " + std::to_string(t) + " was not sampled");
}

const TrajectorySample& Trajectory::at_time(double t) const { return samples_[index_of_time(t)]; }

Field free_propagate(const Field& f, double t) {
    return apply_multiplier(f, MultiplierSpec::schrodinger_phase(t));
}

namespace {

// Exact flow of i u_t = λ|v|²u, i v_t = μ|u|²v with both moduli frozen at
// entry (the flow itself conserves them): pure pointwise phases.
void potential_flow(Field& u, Field& v, double lambda, double mu, double dt) {
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double au = std::norm(u[j]);
        const double av = std::norm(v[j]);
        u[j] *= std::polar(1.0, -lambda * av * dt);
        v[j] *= std::polar(1.0, -mu * au * dt);
    }
}

}  // namespace

CoupledState strang_step(const CoupledState& state, double dt) {
    if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("strang_step: dt must be nonzero");
    const double mass_in = l2_norm(state.u) + l2_norm(state.v);

    CoupledState out;
    out.t = state.t + dt;
    out.params = state.params;
    out.u = free_propagate(state.u, dt / 2.0);
    out.v = free_propagate(state.v, dt / 2.0);
    potential_flow(out.u, out.v, state.params.lambda, state.params.mu, dt);
    if (!out.u.all_finite() || !out.v.all_finite()) throw BlowupError(out.t);
    out.u = free_propagate(out.u, dt / 2.0);
    out.v = free_propagate(out.v, dt / 2.0);

    if (!out.u.all_finite() || !out.v.all_finite()) throw BlowupError(out.t);
    const double mass_out = l2_norm(out.u) + l2_norm(out.v);
    if (mass_in > 0.0 && std::abs(mass_out - mass_in) > 1e-3 * mass_in) throw BlowupError(out.t);
    return out;
}

Field scalar_strang_step(const Field& w, double lambda, double dt) {
    Field out = free_propagate(w, dt / 2.0);
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] *= std::polar(1.0, -lambda * std::norm(out[j]) * dt);
    return free_propagate(out, dt / 2.0);
}

double interaction_density(const Field& u, const Field& v) {
    const Grid& g = *u.grid();
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double a = std::norm(u[j]);
        const double b = std::norm(v[j]);
        acc += (a * a + b * b + a * b) * g.volume_weight(j);
    }
    return acc;
}

double interaction_density(const CoupledState& state) {
    return interaction_density(state.u, state.v);
}

namespace {

double l5_pow_density(const Field& u, const Field& v) {
    const Grid& g = *u.grid();
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double a = std::abs(u[j]);
        const double b = std::abs(v[j]);
        acc += (a * a * a * a * a + b * b * b * b * b) * g.volume_weight(j);
    }
    return acc;
}

}  // namespace

Trajectory evolve(const CoupledState& initial, double T, double dt, std::size_t sample_every,
                  const std::vector<Observer>& observers) {
    if (!(T >= 0.0)) throw std::invalid_argument("evolve: T must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be > 0");
    if (sample_every < 1) throw std::invalid_argument("evolve: sample_every must be >= 1");
    initial.validate();

    Trajectory traj(initial.params, t_safe_estimate(initial));
    const std::size_t nsteps = static_cast<std::size_t>(std::llround(T / dt));

    CoupledState cur = initial;
    double interaction_cum = 0.0, l5_cum = 0.0;
    double prev_inter = interaction_density(cur);
    double prev_l5 = l5_pow_density(cur.u, cur.v);

    // observers may signal blow-up too (a state beyond the diagnosable range
    // aborts the run the same way the stepper does)
    auto record = [&](const CoupledState& st) {
        TrajectorySample s{st.t, st.u, st.v, interaction_cum, l5_cum};
        for (const Observer& ob : observers) ob(s);
        traj.push(std::move(s));
    };
    try {
        record(cur);
        for (std::size_t i = 1; i <= nsteps; ++i) {
            cur = strang_step(cur, dt);
            const double inter = interaction_density(cur);
            const double l5 = l5_pow_density(cur.u, cur.v);
            interaction_cum += 0.5 * dt * (prev_inter + inter);
            l5_cum += 0.5 * dt * (prev_l5 + l5);
            prev_inter = inter;
            prev_l5 = l5;
            if (i % sample_every == 0 || i == nsteps) record(cur);
        }
    } catch (const BlowupError& e) {
        traj.mark_blowup(e.t);
    }
    return traj;
}

double duhamel_residual(const Trajectory& traj, double t0, double t1) {
    if (!(t0 < t1)) throw std::invalid_argument("duhamel_residual: need t0 < t1");
    const std::size_t i0 = traj.index_of_time(t0);
    const std::size_t i1 = traj.index_of_time(t1);
    const auto& samples = traj.samples();
    const double lambda = traj.params().lambda;
    const double mu = traj.params().mu;

    // trapezoid over samples of e^{i(t1-s)Δ}(coupling·|other|²·self)(s)
    Field acc_u(samples[i0].u.grid());
    Field acc_v(samples[i0].u.grid());
    for (std::size_t i = i0; i <= i1; ++i) {
        const auto& s = samples[i];
        double w = 0.0;
        if (i > i0) w += 0.5 * (s.t - samples[i - 1].t);
        if (i < i1) w += 0.5 * (samples[i + 1].t - s.t);

        Field nu = hadamard(abs2_field(s.v), s.u);
        nu *= cplx(lambda * w, 0.0);
        acc_u += free_propagate(nu, t1 - s.t);

        Field nv = hadamard(abs2_field(s.u), s.v);
        nv *= cplx(mu * w, 0.0);
        acc_v += free_propagate(nv, t1 - s.t);
    }

    Field res_u = samples[i1].u - free_propagate(samples[i0].u, t1 - t0) + cplx(0.0, 1.0) * acc_u;
    Field res_v = samples[i1].v - free_propagate(samples[i0].v, t1 - t0) + cplx(0.0, 1.0) * acc_v;
    return l2_norm(res_u) + l2_norm(res_v);
}

CoupledState rescale(const CoupledState& state, double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("rescale: a must be > 0");
    state.validate();
    const Grid& g = *state.u.grid();

    GridPtr scaled = g.kind() == Backend::radial1d ? Grid::radial(g.extent() / a, g.n())
                                                   : Grid::periodic(g.extent() / a, g.n());

    // u_a(x) = a u(ax), the scaling that leaves both the system and the
    // Ḣ^{1/2} norm invariant.  û_a(ξ') = a^{-2} û(ξ'/a): with extent/a the
    // frequency bins align one-to-one, so the resampling is a pure
    // coefficient scaling.
    const double cscale = 1.0 / (a * a);
    auto resample = [&](const Field& f) {
        SpectralField sp = transform(f);
        SpectralField out{scaled, std::move(sp.coeffs)};
        for (cplx& z : out.coeffs) z *= cscale;
        return inverse_transform(out);
    };

    CoupledState out;
    out.t = state.t;  // on-grid data rescaling; time reparametrization is the caller's business
    out.params = state.params;
    out.u = resample(state.u);
    out.v = resample(state.v);

    const double m_in = l2_norm(state.u) + l2_norm(state.v);
    const double m_expect = m_in / std::sqrt(a);
    const double m_out = l2_norm(out.u) + l2_norm(out.v);
    if (m_in > 0.0 && std::abs(m_out - m_expect) > 0.01 * m_expect)
        throw std::runtime_error("rescale: resampling lost more than 1% of L² mass");
    return out;
}

double t_safe_estimate(const CoupledState& state) {
    const Grid& g = *state.u.grid();
    SpectralField su = transform(state.u);
    SpectralField sv = transform(state.v);

    double total = 0.0;
    std::vector<std::pair<double, double>> mass(g.mode_count());
    for (std::size_t k = 0; k < g.mode_count(); ++k) {
        const double m =
            g.parseval_weights()[k] * (std::norm(su.coeffs[k]) + std::norm(sv.coeffs[k]));
        mass[k] = {g.freq_mag()[k], m};
        total += m;
    }
    if (total <= 0.0) return std::numeric_limits<double>::infinity();

    std::sort(mass.begin(), mass.end());
    double acc = 0.0, rho_q = mass.back().first;
    for (const auto& [rho, m] : mass) {
        acc += m;
        if (acc >= 0.999 * total) {
            rho_q = rho;
            break;
        }
    }
    if (rho_q <= 0.0) return std::numeric_limits<double>::infinity();
    const double speed = 2.0 * grad_symbol_factor * rho_q;  // 4π ρ
    return g.extent() / (2.0 * speed);
}

}  // namespace wnls
