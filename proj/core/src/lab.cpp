#include "wnls/lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wnls/norms.hpp"

namespace wnls {

std::pair<Field, Field> inverse_profile(const CoupledState& state) {
    return {free_propagate(state.u, -state.t), free_propagate(state.v, -state.t)};
}

ScatteringReport scattering_report(const Trajectory& traj, double s, double tol,
                                   const std::vector<double>& checkpoints) {
    if (checkpoints.size() < 3)
        throw std::invalid_argument("scattering_report: need at least 3 checkpoints");
    if (!(tol > 0.0)) throw std::invalid_argument("scattering_report: tol must be > 0");
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
        std::adjacent_find(checkpoints.begin(), checkpoints.end()) != checkpoints.end())
        throw std::invalid_argument("scattering_report: checkpoints must be strictly increasing");

    ScatteringReport rep;
    rep.checkpoint_times = checkpoints;

    std::vector<Field> w, z;
    for (double t : checkpoints) {
        const TrajectorySample& smp = traj.at_time(t);
        rep.beyond_t_safe.push_back(traj.beyond_t_safe(t));
        CoupledState st{smp.t, smp.u, smp.v, traj.params()};
        auto [wi, zi] = inverse_profile(st);
        w.push_back(std::move(wi));
        z.push_back(std::move(zi));
    }

    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        rep.increments_u.push_back(sobolev_norm(w[k + 1] - w[k], s, false));
        rep.increments_v.push_back(sobolev_norm(z[k + 1] - z[k], s, false));
    }
    rep.u_plus = w.back();
    rep.v_plus = z.back();

    const auto& samples = traj.samples();
    rep.l5_accumulation = std::pow(samples.back().l5_cum_pow, 0.2);
    {
        const double t_end = samples.back().t;
        const double t_q = t_end - 0.25 * (t_end - samples.front().t);
        double at_q = samples.back().l5_cum_pow;
        for (const auto& smp : samples)
            if (smp.t >= t_q) {
                at_q = smp.l5_cum_pow;
                break;
            }
        const double total = samples.back().l5_cum_pow;
        rep.l5_last_quarter_growth = total > 0.0 ? (total - at_q) / total : 0.0;
    }

    std::vector<double> comb(rep.increments_u.size());
    for (std::size_t k = 0; k < comb.size(); ++k)
        comb[k] = rep.increments_u[k] + rep.increments_v[k];

    const bool all_small = std::all_of(comb.begin(), comb.end(),
                                       [&](double c) { return c <= tol; });
    const bool decreasing =
        std::adjacent_find(comb.begin(), comb.end(),
                           [](double a, double b) { return b >= a; }) == comb.end();
    const bool increasing =
        std::adjacent_find(comb.begin(), comb.end(),
                           [](double a, double b) { return b <= a; }) == comb.end();

    if (all_small || (decreasing && comb.back() < tol))
        rep.verdict = ScatteringReport::Verdict::converging;
    else if (increasing && comb.back() > 10.0 * tol)
        rep.verdict = ScatteringReport::Verdict::diverging;
    else
        rep.verdict = ScatteringReport::Verdict::inconclusive;
    return rep;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (y[i] > 0.0 && x[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    if (lx.size() < 3) throw std::invalid_argument("loglog_slope: need >= 3 positive points");
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepTable increment_sweep(const CoupledState& data, const std::vector<double>& N_list, double s,
                           double T, double dt) {
    if (N_list.size() < 3)
        throw std::invalid_argument("increment_sweep: slope fit requires >= 3 values of N");
    if (!std::is_sorted(N_list.begin(), N_list.end()) ||
        std::adjacent_find(N_list.begin(), N_list.end()) != N_list.end())
        throw std::invalid_argument("increment_sweep: N_list must be strictly increasing");
    require_i_exponent(s);

    // One evolution serves every N: the flow itself never sees the I-operator.
    const std::size_t nsteps = static_cast<std::size_t>(std::llround(T / dt));
    const std::size_t sample_every = std::max<std::size_t>(1, nsteps / 512);
    Trajectory traj = evolve(data, T, dt, sample_every);
    const auto& samples = traj.samples();

    SweepTable table;
    table.T = T;
    table.dt = dt;
    table.s = s;
    {
        std::ostringstream os;
        const Grid& g = *data.u.grid();
        os << (g.kind() == Backend::radial1d ? "radial R=" : "periodic L=") << g.extent()
           << " n=" << g.n();
        table.grid_desc = os.str();
    }

    for (double N : N_list) {
        SweepRow row;
        row.N = N;
        try {
            std::vector<double> rate(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i) {
                CoupledState st{samples[i].t, samples[i].u, samples[i].v, data.params};
                rate[i] = std::abs(modified_energy_derivative(st, N, s));
            }
            double acc = 0.0;
            for (std::size_t i = 1; i < samples.size(); ++i)
                acc += 0.5 * (samples[i].t - samples[i - 1].t) * (rate[i - 1] + rate[i]);
            row.total_increment = acc;
        } catch (const std::exception&) {
            row.failed = true;
        }
        table.rows.push_back(row);
    }

    std::vector<double> xs, ys;
    for (const auto& row : table.rows)
        if (!row.failed) {
            xs.push_back(row.N);
            ys.push_back(row.total_increment);
        }
    table.fitted_slope = loglog_slope(xs, ys);
    return table;
}

double reduction_check(const Field& w0, double lambda, double T, double dt) {
    if (!w0.all_finite()) throw std::invalid_argument("reduction_check: non-finite data");
    CoupledState st;
    st.u = w0;
    st.v = w0;
    st.params = PhysParams{lambda, lambda, 0.75, 16.0};

    Field w = w0;
    double worst = 0.0;
    const std::size_t nsteps = static_cast<std::size_t>(std::llround(T / dt));
    CoupledState cur = st;
    for (std::size_t i = 0; i < nsteps; ++i) {
        cur = strang_step(cur, dt);
        w = scalar_strang_step(w, lambda, dt);
        worst = std::max(worst, max_abs_diff(cur.u, cur.v) + max_abs_diff(cur.u, w));
    }
    return worst;
}

MorawetzReport morawetz_check(const CoupledState& initial, double T, double dt,
                              std::size_t sample_every) {
    const Grid& g = *initial.u.grid();
    if (g.kind() != Backend::periodic3d || g.n() > 24)
        throw std::invalid_argument("morawetz_check: periodic3d with n <= 24 only");

    Trajectory traj = evolve(initial, T, dt, sample_every);
    const auto& samples = traj.samples();

    MorawetzReport rep;
    rep.lhs = interaction_functional(traj);

    double mass = 0.0, hhalf = 0.0;
    std::vector<double> M(samples.size()), Mdot(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& smp = samples[i];
        const double nu = l2_norm(smp.u), nv = l2_norm(smp.v);
        mass = std::max(mass, nu * nu + nv * nv);
        const double hu = sobolev_norm(smp.u, 0.5, true), hv = sobolev_norm(smp.v, 0.5, true);
        hhalf = std::max(hhalf, hu * hu + hv * hv);
        CoupledState st{smp.t, smp.u, smp.v, initial.params};
        std::tie(M[i], Mdot[i]) = morawetz_potential_and_rate(st);
    }
    rep.rhs = mass * hhalf;
    rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
    rep.m_start = M.front();
    rep.m_end = M.back();

    // Fundamental-theorem consistency: the trapezoid of the analytic dM/dt
    // (equation-substituted, no finite differencing of M) against
    // M(T) − M(0).  The residual measures the time-sampling quadrature error
    // and cross-checks the potential against the flow.
    {
        double integral = 0.0;
        for (std::size_t i = 1; i < samples.size(); ++i)
            integral += 0.5 * (samples[i].t - samples[i - 1].t) * (Mdot[i - 1] + Mdot[i]);
        const double delta = rep.m_end - rep.m_start;
        const double scale = std::max({std::abs(delta), std::abs(rep.m_end), 1e-300});
        rep.ft_residual = std::abs(integral - delta) / scale;
    }
    return rep;
}

}  // namespace wnls
