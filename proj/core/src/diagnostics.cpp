#include "wnls/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "wnls/norms.hpp"
#include "wnls/transforms.hpp"

namespace wnls {

namespace {

Field laplacian(const Field& f) {
    Field out = apply_multiplier(f, MultiplierSpec::fractional_power(2.0));
    out *= cplx(-grad_symbol_factor * grad_symbol_factor, 0.0);
    return out;
}

double quartic_coupling(const Field& u, const Field& v) {
    const Grid& g = *u.grid();
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        acc += std::norm(u[j]) * std::norm(v[j]) * g.volume_weight(j);
    return acc;
}

// Pointwise Re(x conj(y)) as a real-valued field.
Field re_cross(const Field& x, const Field& y) {
    Field out(x.grid());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = 0.5 * (x[j] * std::conj(y[j]) + std::conj(x[j]) * y[j]);
    return out;
}

std::size_t worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NLS_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

}  // namespace

double weighted_mass(const CoupledState& state) {
    const double mu2 = l2_norm(state.u);
    const double mv2 = l2_norm(state.v);
    return state.params.mu * mu2 * mu2 + state.params.lambda * mv2 * mv2;
}

double weighted_energy(const Field& u, const Field& v, double lambda, double mu) {
    const double gu = grad_l2(u);
    const double gv = grad_l2(v);
    return 0.5 * (mu * gu * gu + lambda * gv * gv + lambda * mu * quartic_coupling(u, v));
}

double weighted_energy(const CoupledState& state) {
    return weighted_energy(state.u, state.v, state.params.lambda, state.params.mu);
}

double modified_energy(const CoupledState& state, double N, double s) {
    return weighted_energy(i_apply(state.u, N, s), i_apply(state.v, N, s), state.params.lambda,
                           state.params.mu);
}

Field commutator_field(const CoupledState& state, double N, double s, Side side) {
    const Field& self = side == Side::u ? state.u : state.v;
    const Field& other = side == Side::u ? state.v : state.u;
    Field i_self = i_apply(self, N, s);
    Field i_other = i_apply(other, N, s);
    Field direct = hadamard(abs2_field(i_other), i_self);
    Field inner = i_apply(hadamard(abs2_field(other), self), N, s);
    return direct - inner;
}

std::array<Field, 5> commutator_terms(const CoupledState& state, double N, double s, Side side) {
    const Field& self = side == Side::u ? state.u : state.v;
    const Field& other = side == Side::u ? state.v : state.u;

    // other = a + b and self = c + d across the N/8 split
    Field a = lp_project(other, LpMode::Low(N / 8.0));
    Field b = other - a;
    Field c = lp_project(self, LpMode::Low(N / 8.0));
    Field d = self - c;

    auto I = [&](const Field& f) { return i_apply(f, N, s); };
    Field Ia = I(a), Ib = I(b), Ic = I(c), Id = I(d);

    auto commutator = [&](const Field& weight_i, const Field& weight_raw, const Field& fac_i,
                          const Field& fac_raw) {
        return hadamard(weight_i, fac_i) - I(hadamard(weight_raw, fac_raw));
    };

    std::array<Field, 5> terms{
        // |a|² d : low-low weight on the high factor
        commutator(abs2_field(Ia), abs2_field(a), Id, d),
        // |b|² c
        commutator(abs2_field(Ib), abs2_field(b), Ic, c),
        // |b|² d
        commutator(abs2_field(Ib), abs2_field(b), Id, d),
        // 2 Re(b ā) d
        commutator(cplx(2.0, 0.0) * re_cross(Ib, Ia), cplx(2.0, 0.0) * re_cross(b, a), Id, d),
        // 2 Re(b ā) c
        commutator(cplx(2.0, 0.0) * re_cross(Ib, Ia), cplx(2.0, 0.0) * re_cross(b, a), Ic, c),
    };
    return terms;
}

double modified_energy_derivative(const CoupledState& state, double N, double s) {
    const double lambda = state.params.lambda;
    const double mu = state.params.mu;

    Field iu = i_apply(state.u, N, s);
    Field iv = i_apply(state.v, N, s);
    Field i_nl_u = i_apply(hadamard(abs2_field(state.v), state.u), N, s);  // I(|v|²u)
    Field i_nl_v = i_apply(hadamard(abs2_field(state.u), state.v), N, s);  // I(|u|²v)

    // i ∂_t Iu = λ I(|v|²u) − ΔIu  =>  ∂_t Iu = −i(λ I(|v|²u) − ΔIu)
    Field ut = cplx(0.0, -1.0) * (cplx(lambda, 0.0) * i_nl_u - laplacian(iu));
    Field vt = cplx(0.0, -1.0) * (cplx(mu, 0.0) * i_nl_v - laplacian(iv));

    // The commutators enter through their five-term decomposition: every
    // term carries a P_{>N/8} factor, so the evaluation floor scales with
    // the genuine high-frequency content instead of eps·(full field)³.
    auto five_term_sum = [&](Side side) {
        auto terms = commutator_terms(state, N, s, side);
        Field sum = std::move(terms[0]);
        for (int i = 1; i < 5; ++i) sum += terms[i];
        return sum;
    };
    Field cu = five_term_sum(Side::u);
    Field cv = five_term_sum(Side::v);

    return lambda * mu * (inner_l2(ut, cu).real() + inner_l2(vt, cv).real());
}

namespace {

struct MorawetzDensities {
    // per node: mass d, momentum p, and their time derivatives along the flow
    std::vector<double> d, ddot;
    std::vector<std::array<double, 3>> p, pdot;
};

// d = |w|², p = Im(conj(w)∇w); rates through w_t = i(Δw − c|other|²w):
// ∂_t d = 2 Re(conj(w) w_t), ∂_t p = Im(conj(w_t)∇w + conj(w)∇w_t).
MorawetzDensities morawetz_densities(const Field& w, const Field& other, double coupling,
                                     bool with_rate) {
    const std::size_t total = w.size();
    MorawetzDensities out;
    auto grad = gradient_components(w);
    out.d.resize(total);
    out.p.resize(total);
    for (std::size_t j = 0; j < total; ++j) {
        out.d[j] = std::norm(w[j]);
        for (int ax = 0; ax < 3; ++ax) out.p[j][ax] = std::imag(std::conj(w[j]) * grad[ax][j]);
    }
    if (!with_rate) return out;

    Field lap = apply_multiplier(w, MultiplierSpec::fractional_power(2.0));
    lap *= cplx(-grad_symbol_factor * grad_symbol_factor, 0.0);
    Field wt(w.grid());
    for (std::size_t j = 0; j < total; ++j)
        wt[j] = cplx(0.0, 1.0) * (lap[j] - coupling * std::norm(other[j]) * w[j]);
    auto grad_t = gradient_components(wt);

    out.ddot.resize(total);
    out.pdot.resize(total);
    for (std::size_t j = 0; j < total; ++j) {
        out.ddot[j] = 2.0 * std::real(std::conj(w[j]) * wt[j]);
        for (int ax = 0; ax < 3; ++ax)
            out.pdot[j][ax] = std::imag(std::conj(wt[j]) * grad[ax][j]) +
                              std::imag(std::conj(w[j]) * grad_t[ax][j]);
    }
    return out;
}

// The four coupled double integrals with ∇̃a = ((x−y)/|x−y|, (y−x)/|x−y|),
// diagonal excluded, as a direct pair sum.  Returns (M, dM/dt); the rate
// accumulator is only meaningful when the densities carry rates.
std::pair<double, double> morawetz_pair_sum(const Grid& g, const MorawetzDensities& U,
                                            const MorawetzDensities& V, double lambda, double mu,
                                            bool with_rate) {
    const std::size_t n = g.n();
    const std::size_t total = n * n * n;
    const double h = g.extent() / static_cast<double>(n);

    std::vector<std::array<double, 3>> pos(total);
    {
        std::size_t idx = 0;
        for (std::size_t i1 = 0; i1 < n; ++i1)
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t i3 = 0; i3 < n; ++i3, ++idx)
                    pos[idx] = {i1 * h, i2 * h, i3 * h};
    }

    // Fixed 64-chunk partition with in-order reduction: bit-reproducible for
    // any worker count.
    const std::size_t chunks = 64;
    std::vector<double> partial(chunks, 0.0), partial_rate(chunks, 0.0);
    auto run_chunk = [&](std::size_t ci) {
        const std::size_t lo = ci * total / chunks;
        const std::size_t hi = (ci + 1) * total / chunks;
        double acc = 0.0, acc_rate = 0.0;
        for (std::size_t x = lo; x < hi; ++x) {
            for (std::size_t y = 0; y < total; ++y) {
                if (x == y) continue;  // ∇a undefined on the diagonal
                double ex[3] = {pos[x][0] - pos[y][0], pos[x][1] - pos[y][1],
                                pos[x][2] - pos[y][2]};
                const double dist = std::sqrt(ex[0] * ex[0] + ex[1] * ex[1] + ex[2] * ex[2]);
                for (int ax = 0; ax < 3; ++ax) {
                    const double e = ex[ax] / dist;
                    acc += e * (mu * mu * (U.p[x][ax] * U.d[y] - U.d[x] * U.p[y][ax]) +
                                lambda * lambda * (V.p[x][ax] * V.d[y] - V.d[x] * V.p[y][ax]) +
                                lambda * mu * (U.p[x][ax] * V.d[y] - U.d[x] * V.p[y][ax]) +
                                lambda * mu * (V.p[x][ax] * U.d[y] - V.d[x] * U.p[y][ax]));
                    if (with_rate)
                        acc_rate +=
                            e * (mu * mu * (U.pdot[x][ax] * U.d[y] + U.p[x][ax] * U.ddot[y] -
                                            U.ddot[x] * U.p[y][ax] - U.d[x] * U.pdot[y][ax]) +
                                 lambda * lambda *
                                     (V.pdot[x][ax] * V.d[y] + V.p[x][ax] * V.ddot[y] -
                                      V.ddot[x] * V.p[y][ax] - V.d[x] * V.pdot[y][ax]) +
                                 lambda * mu * (U.pdot[x][ax] * V.d[y] + U.p[x][ax] * V.ddot[y] -
                                                U.ddot[x] * V.p[y][ax] - U.d[x] * V.pdot[y][ax]) +
                                 lambda * mu * (V.pdot[x][ax] * U.d[y] + V.p[x][ax] * U.ddot[y] -
                                                V.ddot[x] * U.p[y][ax] - V.d[x] * U.pdot[y][ax]));
                }
            }
        }
        partial[ci] = acc;
        partial_rate[ci] = acc_rate;
    };

    const std::size_t nworkers = std::min(worker_count(), chunks);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < nworkers; ++w)
        pool.emplace_back([&] {
            for (std::size_t ci = next.fetch_add(1); ci < chunks; ci = next.fetch_add(1))
                run_chunk(ci);
        });
    for (auto& th : pool) th.join();

    double sum = 0.0, sum_rate = 0.0;
    for (std::size_t ci = 0; ci < chunks; ++ci) {  // fixed order
        sum += partial[ci];
        sum_rate += partial_rate[ci];
    }
    const double w2 = g.cell_volume() * g.cell_volume();
    return {2.0 * w2 * sum, 2.0 * w2 * sum_rate};
}

void require_morawetz_grid(const Grid& g) {
    if (g.kind() != Backend::periodic3d)
        throw std::invalid_argument("morawetz_potential: periodic3d backend only");
    if (g.n() > 24)
        throw std::invalid_argument("morawetz_potential: n > 24 exceeds the O(n^6) cost guard");
}

}  // namespace

double morawetz_potential(const CoupledState& state) {
    const Grid& g = *state.u.grid();
    require_morawetz_grid(g);
    MorawetzDensities U = morawetz_densities(state.u, state.v, state.params.lambda, false);
    MorawetzDensities V = morawetz_densities(state.v, state.u, state.params.mu, false);
    return morawetz_pair_sum(g, U, V, state.params.lambda, state.params.mu, false).first;
}

std::pair<double, double> morawetz_potential_and_rate(const CoupledState& state) {
    const Grid& g = *state.u.grid();
    require_morawetz_grid(g);
    MorawetzDensities U = morawetz_densities(state.u, state.v, state.params.lambda, true);
    MorawetzDensities V = morawetz_densities(state.v, state.u, state.params.mu, true);
    return morawetz_pair_sum(g, U, V, state.params.lambda, state.params.mu, true);
}

double interaction_functional(const Trajectory& traj) {
    const auto& samples = traj.samples();
    if (samples.empty()) throw std::invalid_argument("interaction_functional: empty trajectory");
    if (samples.size() == 1) return 0.0;
    double acc = 0.0;
    double prev = interaction_density(samples[0].u, samples[0].v);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double cur = interaction_density(samples[i].u, samples[i].v);
        acc += 0.5 * (samples[i].t - samples[i - 1].t) * (prev + cur);
        prev = cur;
    }
    return acc;
}

double spacetime_norm(const Trajectory& traj, double q, double r, const TransformChain& chain,
                      Side component) {
    if (!(q >= 1.0) || !(r >= 1.0))
        throw std::invalid_argument("spacetime_norm: exponents must be >= 1");
    const auto& samples = traj.samples();
    if (samples.size() < 16)
        throw std::invalid_argument("spacetime_norm: need at least 16 samples");

    std::vector<double> snorm(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Field& raw = component == Side::u ? samples[i].u : samples[i].v;
        Field f = chain.specs.empty() ? raw : apply_multipliers(raw, chain.specs);
        if (chain.gradient) f = gradient_magnitude(f);
        snorm[i] = lebesgue_norm(f, r);
    }

    if (std::isinf(q)) return *std::max_element(snorm.begin(), snorm.end());
    double acc = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i)
        acc += 0.5 * (samples[i].t - samples[i - 1].t) *
               (std::pow(snorm[i - 1], q) + std::pow(snorm[i], q));
    return std::pow(acc, 1.0 / q);
}

namespace {

// |x| per sample for the window functions: radius on the radial grid,
// distance from the box center on the torus.
std::vector<double> window_radii(const Grid& g) {
    if (g.kind() == Backend::radial1d) return g.radii();
    const std::size_t n = g.n();
    const double h = g.extent() / static_cast<double>(n);
    const double c = g.extent() / 2.0;
    std::vector<double> out(n * n * n);
    std::size_t idx = 0;
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i2 = 0; i2 < n; ++i2)
            for (std::size_t i3 = 0; i3 < n; ++i3, ++idx) {
                const double x = i1 * h - c, y = i2 * h - c, z = i3 * h - c;
                out[idx] = std::sqrt(x * x + y * y + z * z);
            }
    return out;
}

}  // namespace

double xr_norm(const Trajectory& traj, double R_cutoff, double q, Side component) {
    if (!(q >= 1.0) || !(q < 2.0)) throw std::invalid_argument("xr_norm: requires 1 <= q < 2");
    if (!(R_cutoff > 0.0)) throw std::invalid_argument("xr_norm: R_cutoff must be > 0");
    const auto& samples = traj.samples();
    if (samples.size() < 2) throw std::invalid_argument("xr_norm: need a sampled trajectory");

    const Grid& g = *samples[0].u.grid();
    const std::vector<double> radii = window_radii(g);
    const double rmax = *std::max_element(radii.begin(), radii.end());

    // L^q_t L^2_x of the windowed field, trapezoid in t.
    auto windowed = [&](auto&& window) {
        std::vector<double> l2t(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const Field& f = component == Side::u ? samples[i].u : samples[i].v;
            double acc = 0.0;
            for (std::size_t j = 0; j < f.size(); ++j) {
                const double w = window(radii[j]);
                if (w != 0.0) acc += w * w * std::norm(f[j]) * g.volume_weight(j);
            }
            l2t[i] = std::sqrt(acc);
        }
        double acc = 0.0;
        for (std::size_t i = 1; i < samples.size(); ++i)
            acc += 0.5 * (samples[i].t - samples[i - 1].t) *
                   (std::pow(l2t[i - 1], q) + std::pow(l2t[i], q));
        return std::pow(acc, 1.0 / q);
    };

    const double prefactor = std::pow(R_cutoff, 1.0 / q - 1.0);
    double total = prefactor * windowed([&](double r) { return psi_profile(R_cutoff * r); });

    for (int j = 0;; ++j) {
        const double scale = std::ldexp(R_cutoff, -j);  // 2^{-j} R
        if (std::ldexp(1.0, j) / R_cutoff > rmax) break;  // annulus has left the grid
        const double term = windowed([&](double r) { return chi_profile(scale * r); });
        total += prefactor * std::pow(2.0, j * (1.0 - 1.0 / q)) * term;
    }
    return total;
}

DiagnosticsRecord make_record(const CoupledState& state, bool with_morawetz) {
    DiagnosticsRecord rec;
    rec.t = state.t;
    const double nu = l2_norm(state.u);
    const double nv = l2_norm(state.v);
    rec.mass_u = nu * nu;
    rec.mass_v = nv * nv;
    rec.M_w = state.params.mu * rec.mass_u + state.params.lambda * rec.mass_v;
    rec.E_w = weighted_energy(state);
    rec.E_w_mod = modified_energy(state, state.params.N, state.params.s);
    rec.hs_u = sobolev_norm(state.u, state.params.s, false);
    rec.hs_v = sobolev_norm(state.v, state.params.s, false);
    rec.dEmod_dt = modified_energy_derivative(state, state.params.N, state.params.s);
    rec.interaction_L4 = interaction_density(state);
    if (with_morawetz && state.u.grid()->kind() == Backend::periodic3d &&
        state.u.grid()->n() <= 24)
        rec.morawetz_M = morawetz_potential(state);
    return rec;
}

}  // namespace wnls
