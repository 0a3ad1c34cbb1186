#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "test_helpers.hpp"
#include "wnls/diagnostics.hpp"
#include "wnls/dynamics.hpp"
#include "wnls/norms.hpp"

using namespace wnls;
using namespace wnls::test;

namespace {

CoupledState make_state(GridPtr g, Field u, Field v, double lambda = 1.0, double mu = 1.0,
                        double s = 0.75, double N = 16.0) {
    CoupledState st;
    st.u = std::move(u);
    st.v = std::move(v);
    st.params = PhysParams{lambda, mu, s, N};
    return st;
}

}  // namespace

TEST_CASE("weighted mass and energy") {
    auto g = Grid::radial(32.0, 2048);
    Field gauss = gaussian_field(g);

    SUBCASE("zero data gives zero") {
        CoupledState z = make_state(g, Field(g), Field(g));
        CHECK(weighted_mass(z) == 0.0);
        CHECK(weighted_energy(z) == 0.0);
    }
    SUBCASE("gaussian oracles") {
        CoupledState st = make_state(g, gauss, gauss);
        // 2·2^{-3/2}
        CHECK(weighted_mass(st) == doctest::Approx(2.0 * std::pow(2.0, -1.5)).epsilon(1e-6));
        CHECK(weighted_mass(st) == doctest::Approx(0.7071068).epsilon(1e-6));
        // ½(2·3π·2^{-3/2} + 1/8)
        const double expect = 0.5 * (2.0 * 3.0 * pi * std::pow(2.0, -1.5) + 0.125);
        CHECK(weighted_energy(st) == doctest::Approx(expect).epsilon(1e-4));
        CHECK(weighted_energy(st) == doctest::Approx(3.3947).epsilon(1e-4));
    }
    SUBCASE("mass constant along an evolution") {
        auto gs = Grid::radial(16.0, 512);
        CoupledState st = make_state(gs, gaussian_field(gs), gaussian_field(gs));
        Trajectory traj = evolve(st, 0.5, 1e-3, 100);
        const double m0 = weighted_mass(st);
        for (const auto& s : traj.samples()) {
            CoupledState cur{s.t, s.u, s.v, st.params};
            CHECK(std::abs(weighted_mass(cur) - m0) <= 1e-9 * m0);
        }
    }
}

TEST_CASE("modified energy") {
    auto g = Grid::radial(16.0, 1024);  // nyquist ≈ 32

    SUBCASE("equals weighted energy on low-frequency data") {
        Field u = random_band_field(g, 3.0, 21);
        Field v = random_band_field(g, 3.0, 22);
        CoupledState st = make_state(g, u, v);
        CHECK(modified_energy(st, 16.0, 0.75) ==
              doctest::Approx(weighted_energy(st)).epsilon(1e-10));
    }
    SUBCASE("recovers weighted energy as N exceeds the grid band") {
        CoupledState st = make_state(g, gaussian_field(g, 1.3), gaussian_field(g, 0.7));
        CHECK(modified_energy(st, 2.0 * g->max_frequency(), 0.75) ==
              doctest::Approx(weighted_energy(st)).epsilon(1e-10));
    }
    SUBCASE("growth in N stays below the 2(1-s) power") {
        // data with an algebraic H^s-type tail so the sweep sees the scaling
        const double s = 0.75;
        Field u = algebraic_tail_field(g, s + 1.55, 77, 1.0);
        Field v = algebraic_tail_field(g, s + 1.55, 78, 1.0);
        CoupledState st = make_state(g, u, v, 1.0, 1.0, s);
        std::vector<double> Ns = {2.0, 4.0, 8.0, 16.0};
        std::vector<double> Es;
        for (double N : Ns) Es.push_back(modified_energy(st, N, s));
        // log-log slope of the total growth
        const double slope = std::log2(Es.back() / Es.front()) / std::log2(Ns.back() / Ns.front());
        CHECK(slope <= 2.0 * (1.0 - s) + 0.1);
        CHECK(slope > 0.0);  // data genuinely rough: the bound is active
    }
}

TEST_CASE("commutator fields") {
    auto g = Grid::radial(16.0, 1024);
    const double N = 12.0, s = 0.75;

    SUBCASE("vanishes when both spectra sit below N/3") {
        Field u = random_band_field(g, N / 3.0, 5);
        Field v = random_band_field(g, N / 3.0, 6);
        CoupledState st = make_state(g, u, v);
        const double scale = max_abs(u) * max_abs(v) * max_abs(v);
        CHECK(max_abs(commutator_field(st, N, s, Side::u)) <= 1e-11 * scale);
    }
    SUBCASE("vanishes when the other component is zero") {
        CoupledState st = make_state(g, gaussian_field(g), Field(g));
        CHECK(max_abs(commutator_field(st, N, s, Side::u)) == 0.0);
    }
    SUBCASE("low/high monomial split reassembles the cubic product exactly") {
        Field u = random_band_field(g, 20.0, 301);
        Field v = random_band_field(g, 20.0, 302);
        u *= cplx(1.0 / max_abs(u), 0.0);
        v *= cplx(1.0 / max_abs(v), 0.0);
        Field a = lp_project(v, LpMode::Low(N / 8.0));
        Field b = v - a;
        Field c = lp_project(u, LpMode::Low(N / 8.0));
        Field d = u - c;
        // |v|²u = (|a|² + 2Re(b ā) + |b|²)(c + d), expanded monomial by monomial
        Field direct = hadamard(abs2_field(v), u);
        Field recross(b.grid());
        for (std::size_t j = 0; j < b.size(); ++j)
            recross[j] = b[j] * std::conj(a[j]) + std::conj(b[j]) * a[j];
        Field sum = hadamard(abs2_field(a), c);
        sum += hadamard(abs2_field(a), d);
        sum += hadamard(recross, c);
        sum += hadamard(recross, d);
        sum += hadamard(abs2_field(b), c);
        sum += hadamard(abs2_field(b), d);
        CHECK(max_abs_diff(sum, direct) <= 1e-12);
    }
    SUBCASE("five-term decomposition reproduces the direct commutator") {
        for (std::uint64_t seed : {101, 102, 103}) {
            Field u = random_band_field(g, 20.0, seed);
            Field v = random_band_field(g, 20.0, seed + 50);
            u *= cplx(1.0 / max_abs(u), 0.0);
            v *= cplx(1.0 / max_abs(v), 0.0);
            CoupledState st = make_state(g, u, v);
            for (Side side : {Side::u, Side::v}) {
                Field direct = commutator_field(st, N, s, side);
                auto terms = commutator_terms(st, N, s, side);
                Field sum = terms[0];
                for (int i = 1; i < 5; ++i) sum += terms[i];
                CHECK(max_abs_diff(sum, direct) <= 1e-11);
            }
        }
    }
}

TEST_CASE("modified energy derivative") {
    auto g = Grid::radial(16.0, 1024);

    SUBCASE("zero for band-limited data below N/3") {
        Field u = random_band_field(g, 2.0, 31);
        Field v = random_band_field(g, 2.0, 32);
        CoupledState st = make_state(g, u, v, 1.0, 1.0, 0.75, 8.0);
        const double e_scale = modified_energy(st, 8.0, 0.75);
        CHECK(std::abs(modified_energy_derivative(st, 8.0, 0.75)) <= 1e-9 * e_scale);
    }
    SUBCASE("zero in linear mode") {
        CoupledState st = make_state(g, gaussian_field(g, 2.0), gaussian_field(g, 2.0), 0.0, 0.0);
        CHECK(modified_energy_derivative(st, 8.0, 0.75) == 0.0);
    }
    SUBCASE("matches a centered finite difference along the flow") {
        // The FD oracle needs the commutator-active band at low frequency,
        // otherwise beat phases ~ 4π²ρ² alias across the 1e-4 stencil.
        auto gc = Grid::radial(16.0, 128);  // nyquist ≈ 4
        const double N = 1.0, s = 0.75, dt = 1e-4;
        CoupledState st = make_state(gc, algebraic_tail_field(gc, 2.3, 11, 2.0),
                                     algebraic_tail_field(gc, 2.3, 12, 2.0), 1.0, 1.0, s, N);
        // march a few steps in so the state is generic
        CoupledState mid = st;
        for (int i = 0; i < 10; ++i) mid = strang_step(mid, dt);
        CoupledState fwd = strang_step(mid, dt);
        CoupledState bwd = strang_step(mid, -dt);
        const double fd =
            (modified_energy(fwd, N, s) - modified_energy(bwd, N, s)) / (2.0 * dt);
        const double analytic = modified_energy_derivative(mid, N, s);
        CHECK(std::abs(analytic - fd) <= 1e-3 * std::abs(fd));
    }
}

TEST_CASE("morawetz potential") {
    auto g = Grid::periodic(16.0, 12);

    SUBCASE("real data gives exactly zero") {
        Field u = gaussian_field(g, 1.0, 2.0);
        Field v = gaussian_field(g, 0.5, 3.0);
        CoupledState st = make_state(g, u, v, 1.3, 0.7);
        CHECK(morawetz_potential(st) == 0.0);
    }
    SUBCASE("symmetric plane wave cancels") {
        Field w = plane_wave(g, 1, 1, 0, cplx(0.6, 0.3));
        CoupledState st = make_state(g, w, w);
        const double scale = l2_norm(w);
        CHECK(std::abs(morawetz_potential(st)) <= 1e-10 * scale * scale);
    }
    SUBCASE("backend and size guards") {
        auto gr = Grid::radial(16.0, 64);
        CoupledState bad = make_state(gr, Field(gr), Field(gr));
        CHECK_THROWS_AS(morawetz_potential(bad), std::invalid_argument);
        auto gbig = Grid::periodic(16.0, 32);
        CoupledState big = make_state(gbig, Field(gbig), Field(gbig));
        CHECK_THROWS_AS(morawetz_potential(big), std::invalid_argument);
    }
    SUBCASE("analytic rate matches a finite difference of M") {
        Field u = gaussian_field(g, 1.0, 2.5);
        Field v = gaussian_field(g, 0.8, 2.0);
        CoupledState st = make_state(g, u, v);
        const double dt = 5e-4;
        CoupledState mid = strang_step(st, 10 * dt);
        CoupledState fwd = strang_step(mid, dt);
        CoupledState bwd = strang_step(mid, -dt);
        const double fd = (morawetz_potential(fwd) - morawetz_potential(bwd)) / (2.0 * dt);
        const auto [m, rate] = morawetz_potential_and_rate(mid);
        CHECK(m == doctest::Approx(morawetz_potential(mid)).epsilon(1e-12));
        CHECK(rate == doctest::Approx(fd).epsilon(1e-2));
    }
    SUBCASE("bounded by mass times H^{1/2} products") {
        // |M| <= C (mass)(Ḣ^{1/2}) on a small suite; C recorded by the
        // verify suites, here we just require a sane ratio
        for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
            Field u = random_band_field(g, 0.35, seed);
            Field v = random_band_field(g, 0.35, seed + 10);
            CoupledState st = make_state(g, u, v);
            const double m = std::abs(morawetz_potential(st));
            const double mass = std::pow(l2_norm(u), 2) + std::pow(l2_norm(v), 2);
            const double hhalf = std::pow(sobolev_norm(u, 0.5, true), 2) +
                                 std::pow(sobolev_norm(v, 0.5, true), 2);
            CHECK(m <= 100.0 * mass * hhalf);
        }
    }
}

TEST_CASE("interaction functional") {
    auto g = Grid::radial(16.0, 512);

    SUBCASE("zero data and single samples degenerate to zero") {
        CoupledState z = make_state(g, Field(g), Field(g));
        Trajectory single = evolve(z, 0.0, 1e-3, 1);
        CHECK(interaction_functional(single) == 0.0);
        Trajectory run = evolve(z, 0.05, 1e-3, 10);
        CHECK(interaction_functional(run) == 0.0);
    }
    SUBCASE("nondecreasing in the interval and pointwise inequality") {
        CoupledState st = make_state(g, gaussian_field(g, 1.2), gaussian_field(g, 0.9));
        Trajectory traj = evolve(st, 0.2, 1e-3, 20);
        double prev = 0.0;
        for (const auto& s : traj.samples()) {
            CHECK(s.interaction_cum >= prev);
            prev = s.interaction_cum;
        }
        // |u|²|v|² <= |u|⁴ + |v|⁴ pointwise implies the cross part is at most
        // the pure quartic part
        const Field& u = traj.samples().back().u;
        const Field& v = traj.samples().back().v;
        double cross = 0.0, pure = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double a = std::norm(u[j]), b = std::norm(v[j]);
            cross += a * b * g->volume_weight(j);
            pure += (a * a + b * b) * g->volume_weight(j);
        }
        CHECK(cross <= pure);
    }
}

TEST_CASE("spacetime norms") {
    auto g = Grid::radial(16.0, 512);
    CoupledState st = make_state(g, gaussian_field(g), gaussian_field(g, 0.5));

    SUBCASE("L^inf_t L^2_x equals the conserved L2 norm") {
        Trajectory traj = evolve(st, 0.2, 1e-3, 10);
        REQUIRE(traj.samples().size() >= 16);
        const double inf2 = spacetime_norm(traj, std::numeric_limits<double>::infinity(), 2.0);
        CHECK(inf2 == doctest::Approx(l2_norm(st.u)).epsilon(1e-9));
    }
    SUBCASE("L5 accumulation grows and decelerates for dispersing data") {
        Trajectory traj = evolve(st, 1.0, 2e-3, 25);
        const auto& smp = traj.samples();
        double prev = 0.0;
        for (const auto& s : smp) {
            CHECK(s.l5_cum_pow >= prev);
            prev = s.l5_cum_pow;
        }
        // second half accrues less than the first half: dispersive decay
        const double half = smp[smp.size() / 2].l5_cum_pow;
        const double full = smp.back().l5_cum_pow;
        CHECK(full - half < half);
    }
    SUBCASE("multiplier chain applies before the norms") {
        Trajectory traj = evolve(st, 0.1, 1e-3, 5);
        TransformChain chain;
        chain.specs = {MultiplierSpec::i_operator(16.0, 0.75),
                       MultiplierSpec::high_pass(2.0)};
        chain.gradient = true;
        const double val = spacetime_norm(traj, 2.0, 6.0, chain, Side::u);
        CHECK(std::isfinite(val));
        CHECK(val > 0.0);
        // high-pass far above the spectrum kills the whole norm
        TransformChain dead;
        dead.specs = {MultiplierSpec::high_pass(4.0 * g->max_frequency())};
        CHECK(spacetime_norm(traj, 2.0, 6.0, dead, Side::u) <= 1e-10 * val);
    }
    SUBCASE("exponent validation") {
        Trajectory traj = evolve(st, 0.1, 1e-3, 5);
        CHECK_THROWS_AS(spacetime_norm(traj, 0.5, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(spacetime_norm(traj, 2.0, 0.0), std::invalid_argument);
    }
}

TEST_CASE("x_r norm") {
    auto g = Grid::radial(16.0, 512);

    SUBCASE("zero field gives zero") {
        CoupledState z = make_state(g, Field(g), Field(g));
        Trajectory traj = evolve(z, 0.05, 1e-3, 5);
        CHECK(xr_norm(traj, 2.0, 1.5) == 0.0);
    }
    SUBCASE("homogeneity: doubling the amplitude doubles the norm") {
        CoupledState st = make_state(g, gaussian_field(g, 1.0), gaussian_field(g, 1.0), 0.0, 0.0);
        CoupledState st2 = make_state(g, gaussian_field(g, 2.0), gaussian_field(g, 2.0), 0.0, 0.0);
        Trajectory t1 = evolve(st, 0.05, 1e-3, 5);
        Trajectory t2 = evolve(st2, 0.05, 1e-3, 5);
        CHECK(xr_norm(t2, 2.0, 1.5) == doctest::Approx(2.0 * xr_norm(t1, 2.0, 1.5)).epsilon(1e-10));
    }
    SUBCASE("compact support below 1/R leaves only the psi term") {
        // field supported in r <= 1/R_cutoff: choose R_cutoff = 1/2, support r <= 2
        const double Rcut = 0.5;
        Field u(g);
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double r = g->radii()[j];
            u[j] = r < 1.9 ? std::exp(-10.0 * r * r) : 0.0;
        }
        CoupledState st = make_state(g, u, u, 0.0, 0.0);
        Trajectory traj = evolve(st, 0.0, 1e-3, 1);
        // build a two-sample trajectory by hand for the time integral
        Trajectory two(st.params, 100.0);
        two.push(TrajectorySample{0.0, u, u, 0.0, 0.0});
        two.push(TrajectorySample{0.1, u, u, 0.0, 0.0});
        const double full = xr_norm(two, Rcut, 1.5);
        // psi-term only: compute with the annuli dropped by windowing below 2/Rcut
        // here every annulus window starts at |x| >= 1/Rcut = 2 > support
        double acc = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double w = psi_profile(Rcut * g->radii()[j]);
            acc += w * w * std::norm(u[j]) * g->volume_weight(j);
        }
        const double l2 = std::sqrt(acc);
        const double expect = std::pow(Rcut, 1.0 / 1.5 - 1.0) * l2 * std::pow(0.1, 1.0 / 1.5);
        CHECK(full == doctest::Approx(expect).epsilon(1e-9));
    }
    SUBCASE("q validation") {
        CoupledState st = make_state(g, gaussian_field(g), gaussian_field(g));
        Trajectory traj = evolve(st, 0.05, 1e-3, 5);
        CHECK_THROWS_AS(xr_norm(traj, 2.0, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(xr_norm(traj, 2.0, 0.5), std::invalid_argument);
    }
}

TEST_CASE("diagnostics record") {
    auto g = Grid::periodic(16.0, 12);
    Field u = random_band_field(g, 0.3, 900);
    u *= cplx(0.2 / max_abs(u), 0.0);
    CoupledState st = make_state(g, u, u);
    DiagnosticsRecord rec = make_record(st, true);
    CHECK(rec.mass_u >= 0.0);
    CHECK(rec.E_w >= 0.0);
    CHECK(rec.E_w_mod >= 0.0);
    CHECK(rec.interaction_L4 >= 0.0);
    CHECK(rec.morawetz_M.has_value());
    CHECK(rec.M_w == doctest::Approx(rec.mass_u + rec.mass_v).epsilon(1e-12));
}
