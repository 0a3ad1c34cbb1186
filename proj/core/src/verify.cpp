#include "wnls/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "wnls/diagnostics.hpp"
#include "wnls/dynamics.hpp"
#include "wnls/lab.hpp"
#include "wnls/multipliers.hpp"
#include "wnls/norms.hpp"
#include "wnls/transforms.hpp"
#include "wnls/verify_pins.hpp"

namespace wnls::verify {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(5);
    ss << x;
    return ss.str();
}

bool within_band(double measured, double pin) {
    return std::isfinite(measured) && measured >= pin * (1.0 - pins::band) &&
           measured <= pin * (1.0 + pins::band);
}

// deterministic draws, independent of library distributions
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform() { return (eng() >> 11) * 0x1.0p-53; }
    double gaussian() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }
    cplx cgaussian() { return {gaussian(), gaussian()}; }
};

Field gaussian_radial(const GridPtr& g, double amplitude, double width) {
    Field f(g);
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double r = g->radii()[j] / width;
        f[j] = amplitude * std::exp(-pi * r * r);
    }
    return f;
}

Field gaussian_periodic(const GridPtr& g, double amplitude, double width) {
    const std::size_t n = g->n();
    const double h = g->extent() / static_cast<double>(n);
    const double c = g->extent() / 2.0;
    Field f(g);
    std::size_t idx = 0;
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i2 = 0; i2 < n; ++i2)
            for (std::size_t i3 = 0; i3 < n; ++i3, ++idx) {
                const double x = i1 * h - c, y = i2 * h - c, z = i3 * h - c;
                f[idx] = amplitude * std::exp(-pi * (x * x + y * y + z * z) / (width * width));
            }
    return f;
}

Field random_band(const GridPtr& g, double lo, double hi, std::uint64_t seed) {
    Rng rng(seed);
    SpectralField sp{g, std::vector<cplx>(g->mode_count(), cplx(0, 0))};
    for (std::size_t k = 0; k < sp.coeffs.size(); ++k) {
        const double f = g->freq_mag()[k];
        if (f > lo && f <= hi) sp.coeffs[k] = rng.cgaussian();
    }
    return inverse_transform(sp);
}

Field tail_field(const GridPtr& g, double beta, std::uint64_t seed, double amplitude) {
    Rng rng(seed);
    SpectralField sp{g, std::vector<cplx>(g->mode_count(), cplx(0, 0))};
    for (std::size_t k = 0; k < sp.coeffs.size(); ++k) {
        const double f = g->freq_mag()[k];
        if (f <= 0.0) continue;
        const double mag = amplitude * std::pow(1.0 + f * f, -beta / 2.0);
        const double phase = 2.0 * pi * rng.uniform();
        sp.coeffs[k] = mag * cplx(std::cos(phase), std::sin(phase));
    }
    return inverse_transform(sp);
}

Field periodic_wave(const GridPtr& g, int m1, int m2, int m3, cplx amp) {
    const std::size_t n = g->n();
    Field f(g);
    std::size_t idx = 0;
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i2 = 0; i2 < n; ++i2)
            for (std::size_t i3 = 0; i3 < n; ++i3, ++idx) {
                const double phase =
                    2.0 * pi * (m1 * double(i1) + m2 * double(i2) + m3 * double(i3)) / double(n);
                f[idx] = amp * cplx(std::cos(phase), std::sin(phase));
            }
    return f;
}

CoupledState pair_state(Field u, Field v, double lambda, double mu, double s, double N) {
    CoupledState st;
    st.u = std::move(u);
    st.v = std::move(v);
    st.params = PhysParams{lambda, mu, s, N};
    return st;
}

struct Gate {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!detail.str().empty()) detail << "; ";
        detail << what;
        if (!ok) {
            detail << " [FAILED]";
            pass = false;
        }
    }
    void pinned(double measured, double pin, const std::string& label) {
        require(within_band(measured, pin),
                label + "=" + fmt(measured) + " (pin " + fmt(pin) + " ±10%)");
    }
};

// ---------------------------------------------------------------- criteria

CheckResult check_spectral_substrate() {
    Gate gate;
    {
        auto g = Grid::radial(32.0, 1024);
        Field f = random_band(g, 0.0, 8.0, 42);
        f *= cplx(1.0 / max_abs(f), 0.0);
        const double rt = max_abs_diff(f, inverse_transform(transform(f)));
        gate.require(rt <= 1e-12, "radial round trip=" + fmt(rt) + " <=1e-12");

        Field low = lp_project(f, LpMode::Low(std::ldexp(1.0, -4)));
        Field acc = low;
        for (int j = -3; j <= 5; ++j) acc += lp_project(f, LpMode::Band(j));
        const double lp = max_abs_diff(acc, f);
        gate.require(lp <= 1e-12, "lp reconstruction=" + fmt(lp) + " <=1e-12");
    }
    {
        auto g = Grid::periodic(16.0, 16);
        Field f = random_band(g, 0.0, 0.4, 43);
        f *= cplx(1.0 / max_abs(f), 0.0);
        const double rt = max_abs_diff(f, inverse_transform(transform(f)));
        gate.require(rt <= 1e-12, "periodic round trip=" + fmt(rt) + " <=1e-12");
    }
    {
        auto g = Grid::radial(32.0, 2048);
        Field f = gaussian_radial(g, 1.0, 1.0);
        const double l2 = lebesgue_norm(f, 2.0);
        const double hhalf = sobolev_norm(f, 0.5, true);
        gate.require(std::abs(l2 - 0.5946036) <= 1e-5, "gaussian L2=" + fmt(l2));
        gate.require(std::abs(hhalf - 0.3989423) <= 1e-5, "gaussian H^1/2=" + fmt(hhalf));
        CoupledState st = pair_state(f, f, 1.0, 1.0, 0.75, 16.0);
        const double ew = weighted_energy(st);
        gate.require(std::abs(ew - 3.3947) <= 1e-4, "gaussian E_w=" + fmt(ew));
    }
    return {"spectral substrate", gate.pass, gate.detail.str(), 0.0, 10.0};
}

CheckResult check_conservation() {
    Gate gate;
    auto g = Grid::radial(32.0, 1024);
    CoupledState st = pair_state(gaussian_radial(g, 1.0, 1.0), gaussian_radial(g, 1.0, 1.0),
                                 1.0, 1.0, 0.75, 16.0);
    const double m0 = weighted_mass(st);
    const double e0 = weighted_energy(st);

    double drift[2];
    int k = 0;
    for (double dt : {2e-3, 1e-3}) {
        Trajectory traj = evolve(st, 1.0, dt, 1000000);
        const auto& last = traj.samples().back();
        CoupledState fin{last.t, last.u, last.v, st.params};
        if (dt == 1e-3) {
            const double mdrift = std::abs(weighted_mass(fin) - m0) / m0;
            gate.require(mdrift <= 1e-9, "mass drift=" + fmt(mdrift) + " <=1e-9");
        }
        drift[k++] = std::abs(weighted_energy(fin) - e0);
    }
    const double ratio = drift[0] / drift[1];
    gate.require(ratio >= 3.0 && ratio <= 5.0, "E_w drift ratio=" + fmt(ratio) + " in [3,5]");
    return {"conservation", gate.pass, gate.detail.str(), 0.0, 30.0};
}

CheckResult check_integrator_order() {
    Gate gate;
    {
        auto g = Grid::radial(16.0, 512);
        CoupledState st = pair_state(gaussian_radial(g, 1.0, 1.0), gaussian_radial(g, 1.0, 1.0),
                                     1.0, 1.0, 0.75, 16.0);
        Trajectory ref = evolve(st, 0.24, 0.012 / 8.0, 1000000);
        double err[2];
        int k = 0;
        for (double dt : {0.012, 0.006})
            err[k++] = l2_norm(evolve(st, 0.24, dt, 1000000).samples().back().u -
                               ref.samples().back().u);
        const double order = std::log2(err[0] / err[1]);
        gate.require(order >= 1.8 && order <= 2.2, "radial order=" + fmt(order));
    }
    {
        auto g = Grid::periodic(16.0, 16);
        // single plane-wave pair: Strang reproduces the closed form exactly
        CoupledState pw = pair_state(periodic_wave(g, 1, 0, 0, cplx(0.8, 0.0)),
                                     periodic_wave(g, 0, 2, 0, cplx(0.0, 0.5)),
                                     1.3, 0.7, 0.75, 16.0);
        const double dt = 1e-2;
        CoupledState stepped = strang_step(pw, dt);
        const double wu = 4.0 * pi * pi / 256.0 + 1.3 * 0.25;
        Field exact = std::polar(1.0, -wu * dt) * pw.u;
        const double pw_err = max_abs_diff(stepped.u, exact);
        gate.require(pw_err <= 1e-10, "plane-wave step error=" + fmt(pw_err) + " <=1e-10");

        // the order fit needs a non-constant-modulus superposition
        Field u0 = periodic_wave(g, 1, 0, 0, cplx(0.8, 0.0));
        u0 += periodic_wave(g, 2, 1, 0, cplx(0.4, 0.1));
        Field v0 = periodic_wave(g, 0, 1, 0, cplx(0.6, 0.0));
        v0 += periodic_wave(g, 1, -1, 1, cplx(0.0, 0.5));
        CoupledState st = pair_state(std::move(u0), std::move(v0), 1.0, 1.0, 0.75, 16.0);
        Trajectory ref = evolve(st, 0.24, 0.012 / 8.0, 1000000);
        double err[2];
        int k = 0;
        for (double dt2 : {0.012, 0.006})
            err[k++] = l2_norm(evolve(st, 0.24, dt2, 1000000).samples().back().u -
                               ref.samples().back().u);
        const double order = std::log2(err[0] / err[1]);
        gate.require(order >= 1.8 && order <= 2.2, "periodic order=" + fmt(order));
    }
    return {"integrator order", gate.pass, gate.detail.str(), 0.0, 60.0};
}

CheckResult check_duhamel() {
    Gate gate;
    auto g = Grid::radial(16.0, 512);
    {
        CoupledState lin = pair_state(gaussian_radial(g, 1.0, 1.0), gaussian_radial(g, 1.0, 1.0),
                                      0.0, 0.0, 0.75, 16.0);
        Trajectory traj = evolve(lin, 0.2, 1e-2, 1);
        const double res = duhamel_residual(traj, 0.0, 0.2);
        gate.require(res <= 1e-12, "linear residual=" + fmt(res) + " <=1e-12");
    }
    {
        CoupledState st = pair_state(gaussian_radial(g, 1.5, 1.0), gaussian_radial(g, 1.5, 1.0),
                                     1.0, 1.0, 0.75, 16.0);
        double res[2];
        int k = 0;
        for (double dt : {2e-3, 1e-3})
            res[k++] = duhamel_residual(evolve(st, 0.1, dt, 1), 0.0, 0.1);
        const double ratio = res[0] / res[1];
        gate.require(ratio >= 3.0 && ratio <= 5.0,
                     "nonlinear refinement ratio=" + fmt(ratio) + " in [3,5]");
    }
    return {"duhamel residual", gate.pass, gate.detail.str(), 0.0, 30.0};
}

CheckResult check_dispersive_decay() {
    Gate gate;
    auto g = Grid::radial(32.0, 1024);
    Field f = gaussian_radial(g, 1.0, 1.0);
    CoupledState st = pair_state(f, f, 0.0, 0.0, 0.75, 16.0);
    const double t_safe = t_safe_estimate(st);
    double worst = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double t = t_safe * i / 10.0;
        Field ft = free_propagate(f, t);
        const double sup = lebesgue_norm(ft, std::numeric_limits<double>::infinity());
        const double comp = sup * std::pow(1.0 + 16.0 * pi * pi * t * t, 0.75);
        worst = std::max(worst, std::abs(comp - 1.0));
    }
    gate.require(worst <= 0.01,
                 "decay-product deviation=" + fmt(worst) + " <=0.01 up to t_safe=" + fmt(t_safe));
    return {"dispersive decay", gate.pass, gate.detail.str(), 0.0, 30.0};
}

CheckResult check_inequality_suites() {
    Gate gate;
    auto g = Grid::radial(32.0, 1024);

    {  // Bernstein: ||P_j f||_p <= C 2^{3j(1/2-1/p)} ||P_j f||_2
        const double ps[3] = {4.0, 6.0, std::numeric_limits<double>::infinity()};
        const double pin[3] = {pins::bernstein_p4, pins::bernstein_p6, pins::bernstein_pinf};
        const char* label[3] = {"bernstein p4", "bernstein p6", "bernstein pinf"};
        for (int pi_ = 0; pi_ < 3; ++pi_) {
            double worst = 0.0;
            for (int rep = 0; rep < 200; ++rep) {
                const int j = -2 + rep % 6;
                const double mid = std::ldexp(1.0, j);
                Field f = random_band(g, mid / 2.0, mid * 2.0, 3000 + rep);
                Field pj = lp_project(f, LpMode::Band(j));
                const double num = lebesgue_norm(pj, ps[pi_]);
                const double den = std::pow(2.0, 3.0 * j * (0.5 - 1.0 / ps[pi_])) *
                                   lebesgue_norm(pj, 2.0);
                if (den > 0.0) worst = std::max(worst, num / den);
            }
            gate.pinned(worst, pin[pi_], label[pi_]);
        }
    }

    {  // Sobolev embedding ||f||_p <= C ||f||_{H^s}, s = 3(1/2 - 1/p)
        const double ps[2] = {4.0, 6.0};
        const double pin[2] = {pins::sobolev_p4, pins::sobolev_p6};
        const char* label[2] = {"sobolev p4", "sobolev p6"};
        for (int pi_ = 0; pi_ < 2; ++pi_) {
            const double s = 3.0 * (0.5 - 1.0 / ps[pi_]);
            double worst = 0.0;
            for (int rep = 0; rep < 50; ++rep) {
                Field f = random_band(g, 0.0, 4.0, 4000 + rep);
                worst = std::max(worst, lebesgue_norm(f, ps[pi_]) / sobolev_norm(f, s, true));
            }
            gate.pinned(worst, pin[pi_], label[pi_]);
        }
    }

    {  // radial embedding sup_r r|P_j f(r)| <= C ||P_j f||_{H^{1/2}}
        double worst = 0.0;
        for (int rep = 0; rep < 50; ++rep) {
            const int j = -1 + rep % 4;
            const double mid = std::ldexp(1.0, j);
            Field f = random_band(g, mid / 2.0, mid * 2.0, 5000 + rep);
            Field pj = lp_project(f, LpMode::Band(j));
            double sup = 0.0;
            for (std::size_t i = 0; i < pj.size(); ++i)
                sup = std::max(sup, g->radii()[i] * std::abs(pj[i]));
            worst = std::max(worst, sup / sobolev_norm(pj, 0.5, true));
        }
        gate.pinned(worst, pins::radial_embedding, "radial embedding");
    }

    {  // Strichartz ||e^{itΔ}u0||_{L2_t L6_x} <= C ||u0||_2
        auto gs = Grid::radial(32.0, 512);
        double worst = 0.0;
        for (int rep = 0; rep < 8; ++rep) {
            Field u0 = random_band(gs, 0.0, 3.0, 6000 + rep);
            CoupledState st = pair_state(u0, u0, 0.0, 0.0, 0.75, 16.0);
            Trajectory traj = evolve(st, 1.0, 1e-2, 1);
            const double num = spacetime_norm(traj, 2.0, 6.0);
            worst = std::max(worst, num / l2_norm(u0));
        }
        gate.pinned(worst, pins::strichartz_l2l6, "strichartz L2L6");
    }

    {  // H^s control by E_w(Iu,Iv) + M_w (both sides computed)
        const double s = 0.75, N = 8.0;
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            Field u = tail_field(g, s + 1.55, 7000 + rep, 1.0);
            Field v = tail_field(g, s + 1.55, 7500 + rep, 0.8);
            CoupledState st = pair_state(u, v, 1.0, 1.0, s, N);
            const double lhs = std::pow(sobolev_norm(u, s, false), 2) +
                               std::pow(sobolev_norm(v, s, false), 2);
            const double rhs = modified_energy(st, N, s) + weighted_mass(st);
            worst = std::max(worst, lhs / rhs);
        }
        gate.pinned(worst, pins::hs_control, "hs control");
    }

    {  // modified-energy growth: log-log slope across N <= 2(1-s)+0.1
        auto gt = Grid::radial(16.0, 1024);
        const double s = 0.75;
        CoupledState st = pair_state(tail_field(gt, s + 1.55, 77, 1.0),
                                     tail_field(gt, s + 1.55, 78, 1.0), 1.0, 1.0, s, 16.0);
        std::vector<double> Ns = {2.0, 4.0, 8.0, 16.0}, Es;
        for (double N : Ns) Es.push_back(modified_energy(st, N, s));
        const double slope = loglog_slope(Ns, Es);
        gate.require(slope <= 2.0 * (1.0 - s) + 0.1, "growth slope=" + fmt(slope) + " <=0.6");
        gate.pinned(slope, pins::growth_slope, "growth slope pin");
    }

    return {"inequality suites", gate.pass, gate.detail.str(), 0.0, 120.0};
}

CheckResult check_increment_scaling() {
    Gate gate;
    {  // N-sweep on the reference gaussian
        auto g = Grid::radial(8.0, 1024);
        CoupledState st = pair_state(gaussian_radial(g, 8.0, 0.25), gaussian_radial(g, 8.0, 0.25),
                                     1.0, 1.0, 0.75, 16.0);
        SweepTable tbl = increment_sweep(st, {4.0, 8.0, 16.0, 32.0}, 0.75, 2.0, 1e-3);
        bool mono = true;
        std::ostringstream totals;
        for (std::size_t i = 0; i < tbl.rows.size(); ++i) {
            if (i && tbl.rows[i].total_increment > tbl.rows[i - 1].total_increment) mono = false;
            totals << (i ? "," : "") << fmt(tbl.rows[i].total_increment);
        }
        gate.require(mono, "totals nonincreasing in N (" + totals.str() + ")");
        gate.require(tbl.fitted_slope <= -0.5, "slope=" + fmt(tbl.fitted_slope) + " <=-0.5");
    }
    {  // analytic derivative vs centered finite difference
        auto g = Grid::radial(16.0, 128);
        const double N = 1.0, s = 0.75, dt = 1e-4;
        CoupledState st = pair_state(tail_field(g, 2.3, 11, 2.0), tail_field(g, 2.3, 12, 2.0),
                                     1.0, 1.0, s, N);
        CoupledState mid = st;
        for (int i = 0; i < 10; ++i) mid = strang_step(mid, dt);
        const double fd = (modified_energy(strang_step(mid, dt), N, s) -
                           modified_energy(strang_step(mid, -dt), N, s)) /
                          (2.0 * dt);
        const double an = modified_energy_derivative(mid, N, s);
        const double rel = std::abs(an - fd) / std::abs(fd);
        gate.require(rel <= 1e-3, "derivative-vs-fd rel=" + fmt(rel) + " <=1e-3");
    }
    {  // five-term decomposition identity
        auto g = Grid::radial(16.0, 1024);
        double worst = 0.0;
        for (std::uint64_t seed : {101, 102, 103}) {
            Field u = random_band(g, 0.0, 20.0, seed);
            Field v = random_band(g, 0.0, 20.0, seed + 50);
            u *= cplx(1.0 / max_abs(u), 0.0);
            v *= cplx(1.0 / max_abs(v), 0.0);
            CoupledState st = pair_state(u, v, 1.0, 1.0, 0.75, 12.0);
            for (Side side : {Side::u, Side::v}) {
                Field direct = commutator_field(st, 12.0, 0.75, side);
                auto terms = commutator_terms(st, 12.0, 0.75, side);
                Field sum = terms[0];
                for (int i = 1; i < 5; ++i) sum += terms[i];
                worst = std::max(worst, max_abs_diff(sum, direct));
            }
        }
        gate.require(worst <= 1e-11, "five-term identity=" + fmt(worst) + " <=1e-11");
    }
    return {"increment scaling", gate.pass, gate.detail.str(), 0.0, 180.0};
}

CheckResult check_morawetz() {
    Gate gate;
    auto g = Grid::periodic(16.0, 16);
    {  // exact zero for real data
        CoupledState st = pair_state(gaussian_periodic(g, 1.0, 2.5), gaussian_periodic(g, 0.7, 2.0),
                                     1.3, 0.7, 0.75, 16.0);
        const double m = std::abs(morawetz_potential(st));
        const double scale = weighted_mass(st);
        gate.require(m <= 1e-12 * std::max(scale, 1.0), "real-data |M|=" + fmt(m));
    }
    {  // exact zero for the symmetric plane wave
        Field w = periodic_wave(g, 1, 1, 0, cplx(0.6, 0.3));
        CoupledState st = pair_state(w, w, 1.0, 1.0, 0.75, 16.0);
        const double m = std::abs(morawetz_potential(st));
        const double scale = weighted_mass(st);
        gate.require(m <= 1e-10 * std::max(scale, 1.0), "plane-wave |M|=" + fmt(m));
    }
    {  // suite: interaction functional <= pinned C x (mass)(H^1/2), FT consistency
        struct Scenario {
            double amp_u, width_u, amp_v, width_v, lambda, mu, T;
        };
        const Scenario suite[] = {
            {1.0, 2.5, 0.8, 2.5, 1.0, 1.0, 0.5},
            {1.5, 2.0, 1.0, 2.4, 1.3, 0.7, 0.4},
            {0.8, 3.0, 0.9, 2.2, 2.0, 1.0, 0.5},
        };
        double worst_ratio = 0.0, worst_ft = 0.0;
        for (const auto& sc : suite) {
            CoupledState st =
                pair_state(gaussian_periodic(g, sc.amp_u, sc.width_u),
                           gaussian_periodic(g, sc.amp_v, sc.width_v), sc.lambda, sc.mu, 0.75, 16.0);
            MorawetzReport rep = morawetz_check(st, sc.T, 2e-3, 20);
            worst_ratio = std::max(worst_ratio, rep.ratio);
            worst_ft = std::max(worst_ft, rep.ft_residual);
        }
        gate.pinned(worst_ratio, pins::morawetz_ratio, "interaction/bound ratio");
        gate.require(worst_ft <= 1e-2, "FT residual=" + fmt(worst_ft) + " <=1e-2");
    }
    return {"morawetz", gate.pass, gate.detail.str(), 0.0, 180.0};
}

CheckResult check_scattering() {
    Gate gate;
    auto g = Grid::radial(96.0, 3072);
    CoupledState st = pair_state(gaussian_radial(g, 0.1, 1.0), gaussian_radial(g, 0.1, 1.0), 1.0,
                                 1.0, 0.75, 16.0);
    Trajectory traj = evolve(st, 8.0, 2e-3, 25);
    ScatteringReport rep = scattering_report(traj, 0.75, 1e-3, {2.0, 4.0, 8.0});

    std::vector<double> comb;
    for (std::size_t k = 0; k < rep.increments_u.size(); ++k)
        comb.push_back(rep.increments_u[k] + rep.increments_v[k]);
    bool strictly_dec = true;
    for (std::size_t k = 1; k < comb.size(); ++k)
        if (comb[k] >= comb[k - 1]) strictly_dec = false;
    gate.require(strictly_dec, "increments strictly decreasing (" + fmt(comb[0]) + " -> " +
                                   fmt(comb[1]) + ")");
    gate.require(comb.back() < 1e-3, "final increment=" + fmt(comb.back()) + " <1e-3");
    gate.require(rep.l5_last_quarter_growth < 0.05,
                 "L5 last-quarter growth=" + fmt(rep.l5_last_quarter_growth) + " <0.05");
    gate.require(rep.verdict == ScatteringReport::Verdict::converging, "verdict=converging");
    return {"scattering surrogate", gate.pass, gate.detail.str(), 0.0, 60.0};
}

CheckResult check_scalar_reduction() {
    Gate gate;
    auto g = Grid::radial(16.0, 512);
    Field w0 = gaussian_radial(g, 1.5, 1.0);

    // symmetric coupled run against the dedicated scalar path, stepwise
    CoupledState st = pair_state(w0, w0, 1.0, 1.0, 0.75, 16.0);
    Field w = w0;
    double sym = 0.0, dev = 0.0;
    const double dt = 1e-3;
    CoupledState cur = st;
    for (int i = 0; i < 500; ++i) {
        cur = strang_step(cur, dt);
        w = scalar_strang_step(w, 1.0, dt);
        sym = std::max(sym, max_abs_diff(cur.u, cur.v));
        dev = std::max(dev, max_abs_diff(cur.u, w));
    }
    gate.require(sym <= 1e-12, "||u-v||_inf=" + fmt(sym) + " <=1e-12");
    gate.require(dev <= 1e-9, "coupled-vs-scalar=" + fmt(dev) + " <=1e-9");
    return {"scalar reduction", gate.pass, gate.detail.str(), 0.0, 30.0};
}

CheckResult check_rescaling() {
    Gate gate;
    auto g = Grid::radial(32.0, 1024);
    CoupledState st = pair_state(gaussian_radial(g, 1.0, 1.0), gaussian_radial(g, 1.0, 1.0), 1.0,
                                 1.0, 0.75, 16.0);
    double worst = 0.0;
    const double base = sobolev_norm(st.u, 0.5, true);
    for (double a : {0.5, 2.0, 4.0}) {
        CoupledState out = rescale(st, a);
        worst = std::max(worst, std::abs(sobolev_norm(out.u, 0.5, true) - base) / base);
    }
    gate.require(worst <= 1e-10, "H^1/2 invariance defect=" + fmt(worst) + " <=1e-10");

    CoupledState big = pair_state(gaussian_radial(g, 3.0, 1.0), gaussian_radial(g, 3.0, 1.0), 1.0,
                                  1.0, 0.75, 16.0);
    std::ostringstream scales;
    bool ok = true;
    for (double N : {8.0, 16.0, 32.0}) {
        const double a = choose_rescaling(big, N, 0.75);
        const double e = modified_energy(rescale(big, a), N, 0.75);
        scales << " N=" << fmt(N) << ":a=" << fmt(a) << ",E=" << fmt(e);
        ok = ok && e <= 0.5;
    }
    gate.require(ok, "choose_rescaling E<=1/2:" + scales.str());
    return {"rescaling", gate.pass, gate.detail.str(), 0.0, 60.0};
}

std::vector<std::function<CheckResult()>> suite_checks(Suite suite) {
    std::vector<std::function<CheckResult()>> all = {
        check_spectral_substrate, check_conservation, check_integrator_order, check_duhamel,
        check_dispersive_decay,   check_inequality_suites, check_increment_scaling,
        check_morawetz,           check_scattering,    check_scalar_reduction, check_rescaling,
    };
    switch (suite) {
        case Suite::spectral:
            return {check_spectral_substrate, check_dispersive_decay, check_inequality_suites};
        case Suite::conservation:
            return {check_conservation, check_integrator_order, check_duhamel,
                    check_increment_scaling};
        case Suite::morawetz:
            return {check_morawetz};
        case Suite::scattering:
            return {check_scattering, check_scalar_reduction, check_rescaling};
        case Suite::all:
            return all;
    }
    return all;
}

}  // namespace

Suite suite_from_name(const std::string& name) {
    if (name == "spectral") return Suite::spectral;
    if (name == "conservation") return Suite::conservation;
    if (name == "morawetz") return Suite::morawetz;
    if (name == "scattering") return Suite::scattering;
    if (name == "all") return Suite::all;
    throw std::invalid_argument("unknown suite '" + name +
                                "' (expected spectral|conservation|morawetz|scattering|all)");
}

std::vector<CheckResult> run_suite(Suite suite, std::ostream& out) {
    std::vector<CheckResult> results;
    for (const auto& check : suite_checks(suite)) {
        const auto start = Clock::now();
        CheckResult res = check();
        res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (res.budget > 0.0 && res.seconds > res.budget) {
            res.pass = false;
            res.detail += "; runtime " + fmt(res.seconds) + "s exceeds budget " +
                          fmt(res.budget) + "s";
        }
        out << (res.pass ? "[PASS] " : "[FAIL] ") << res.name << " (" << fmt(res.seconds)
            << "s): " << res.detail << "\n";
        results.push_back(std::move(res));
    }
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

}  // namespace wnls::verify
