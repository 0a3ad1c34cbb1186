#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "test_helpers.hpp"
#include "wnls/lab.hpp"
#include "wnls/norms.hpp"

using namespace wnls;
using namespace wnls::test;

namespace {

CoupledState radial_gaussian_state(GridPtr g, double amp, double width, double lambda, double mu) {
    CoupledState st;
    st.u = gaussian_field(g, amp, width);
    st.v = gaussian_field(g, amp, width);
    st.params = PhysParams{lambda, mu, 0.75, 16.0};
    return st;
}

}  // namespace

TEST_CASE("inverse profile") {
    auto g = Grid::radial(16.0, 512);
    CoupledState st = radial_gaussian_state(g, 1.0, 1.0, 0.0, 0.0);

    SUBCASE("identity at t = 0") {
        auto [w, z] = inverse_profile(st);
        CHECK(max_abs_diff(w, st.u) <= 1e-14);
        CHECK(max_abs_diff(z, st.v) <= 1e-14);
    }
    SUBCASE("constant in time for the linear flow") {
        Trajectory traj = evolve(st, 0.5, 1e-2, 10);
        std::vector<Field> profiles;
        for (const auto& s : traj.samples()) {
            CoupledState cur{s.t, s.u, s.v, st.params};
            profiles.push_back(inverse_profile(cur).first);
        }
        for (std::size_t i = 1; i < profiles.size(); ++i)
            CHECK(max_abs_diff(profiles[i], profiles[0]) <= 1e-12);
    }
}

TEST_CASE("scattering report") {
    SUBCASE("zero data converges vacuously") {
        auto g = Grid::radial(16.0, 256);
        CoupledState z;
        z.u = Field(g);
        z.v = Field(g);
        z.params = PhysParams{1.0, 1.0, 0.75, 16.0};
        Trajectory traj = evolve(z, 1.0, 1e-2, 10);
        ScatteringReport rep = scattering_report(traj, 0.75, 1e-3, {0.2, 0.5, 1.0});
        CHECK(rep.verdict == ScatteringReport::Verdict::converging);
        for (double inc : rep.increments_u) CHECK(inc == 0.0);
        CHECK(l2_norm(rep.u_plus) == 0.0);
    }
    SUBCASE("linear flow converges with zero increments and u_plus = u_0") {
        auto g = Grid::radial(16.0, 512);
        CoupledState st = radial_gaussian_state(g, 1.0, 1.0, 0.0, 0.0);
        Trajectory traj = evolve(st, 1.0, 1e-2, 10);
        ScatteringReport rep = scattering_report(traj, 0.75, 1e-3, {0.2, 0.5, 1.0});
        CHECK(rep.verdict == ScatteringReport::Verdict::converging);
        for (std::size_t k = 0; k < rep.increments_u.size(); ++k)
            CHECK(rep.increments_u[k] <= 1e-12);
        CHECK(max_abs_diff(rep.u_plus, st.u) <= 1e-11);
    }
    SUBCASE("small-data nonlinear run: decreasing increments, converging") {
        auto g = Grid::radial(96.0, 3072);
        CoupledState st = radial_gaussian_state(g, 0.1, 1.0, 1.0, 1.0);
        Trajectory traj = evolve(st, 8.0, 4e-3, 50);
        ScatteringReport rep = scattering_report(traj, 0.75, 1e-3, {2.0, 4.0, 8.0});
        CHECK(rep.verdict == ScatteringReport::Verdict::converging);
        REQUIRE(rep.increments_u.size() == 2);
        // ||w(8)-w(4)|| < ||w(4)-w(2)||
        CHECK(rep.increments_u[1] < rep.increments_u[0]);
        CHECK(rep.increments_u[1] + rep.increments_v[1] < 1e-3);
        CHECK(rep.l5_last_quarter_growth < 0.05);
    }
    SUBCASE("bad inputs are rejected") {
        auto g = Grid::radial(16.0, 256);
        CoupledState st = radial_gaussian_state(g, 0.1, 1.0, 1.0, 1.0);
        Trajectory traj = evolve(st, 1.0, 1e-2, 10);
        CHECK_THROWS_AS(scattering_report(traj, 0.75, 1e-3, {0.2, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(scattering_report(traj, 0.75, 1e-3, {0.2, 0.33, 0.5}),
                        std::invalid_argument);  // unsampled checkpoint
    }
}

TEST_CASE("increment sweep") {
    auto g = Grid::radial(8.0, 512);  // nyquist ≈ 32

    SUBCASE("band-limited data below min(N)/3 keeps every total small") {
        CoupledState st;
        st.u = random_band_field(g, 1.0, 61);
        st.v = random_band_field(g, 1.0, 62);
        st.u *= cplx(0.3 / max_abs(st.u), 0.0);
        st.v *= cplx(0.3 / max_abs(st.v), 0.0);
        st.params = PhysParams{1.0, 1.0, 0.75, 16.0};
        SweepTable tbl = increment_sweep(st, {4.0, 8.0, 16.0}, 0.75, 0.05, 1e-3);
        // derivative at t = 0 vanishes (spectra below N/3); totals stay tiny
        for (const auto& row : tbl.rows) CHECK(row.total_increment <= 1e-8);
    }
    SUBCASE("totals decay in N on the nonlinear gaussian") {
        CoupledState st = radial_gaussian_state(g, 8.0, 0.25, 1.0, 1.0);
        SweepTable tbl = increment_sweep(st, {4.0, 8.0, 16.0, 32.0}, 0.75, 0.5, 1e-3);
        REQUIRE(tbl.rows.size() == 4);
        for (std::size_t i = 1; i < tbl.rows.size(); ++i)
            CHECK(tbl.rows[i].total_increment <= tbl.rows[i - 1].total_increment);
        CHECK(tbl.fitted_slope <= -0.5);
    }
    SUBCASE("N above the grid nyquist makes the increment vanish") {
        CoupledState st = radial_gaussian_state(g, 2.0, 0.5, 1.0, 1.0);
        SweepTable tbl =
            increment_sweep(st, {64.0, 128.0, 256.0}, 0.75, 0.05, 1e-3);
        const double e_scale = weighted_energy(st);
        for (const auto& row : tbl.rows) CHECK(row.total_increment <= 1e-10 * e_scale);
    }
    SUBCASE("input validation") {
        CoupledState st = radial_gaussian_state(g, 1.0, 1.0, 1.0, 1.0);
        CHECK_THROWS_AS(increment_sweep(st, {4.0, 8.0}, 0.75, 0.1, 1e-3), std::invalid_argument);
        CHECK_THROWS_AS(increment_sweep(st, {8.0, 4.0, 16.0}, 0.75, 0.1, 1e-3),
                        std::invalid_argument);
        CHECK_THROWS_AS(increment_sweep(st, {4.0, 8.0, 16.0}, 0.3, 0.1, 1e-3),
                        std::invalid_argument);
    }
}

TEST_CASE("scalar reduction") {
    auto g = Grid::radial(16.0, 512);
    Field w0 = gaussian_field(g, 1.5);

    SUBCASE("coupled symmetric run tracks the scalar path exactly") {
        CHECK(reduction_check(w0, 1.0, 0.2, 1e-3) <= 1e-12);
    }
    SUBCASE("linear mode") {
        CHECK(reduction_check(w0, 0.0, 0.2, 1e-3) <= 1e-12);
    }
    SUBCASE("strong coupling still within the symmetric-update budget") {
        CHECK(reduction_check(w0, 3.0, 0.2, 1e-3) <= 1e-9);
    }
}

TEST_CASE("morawetz check") {
    auto g = Grid::periodic(16.0, 12);

    SUBCASE("zero data reports zeros with ratio zero") {
        CoupledState z;
        z.u = Field(g);
        z.v = Field(g);
        z.params = PhysParams{1.0, 1.0, 0.75, 16.0};
        MorawetzReport rep = morawetz_check(z, 0.1, 2e-3, 10);
        CHECK(rep.lhs == 0.0);
        CHECK(rep.rhs == 0.0);
        CHECK(rep.ratio == 0.0);
    }
    SUBCASE("real data starts at M = 0 and stays estimate-consistent") {
        CoupledState st;
        st.u = gaussian_field(g, 1.0, 2.5);
        st.v = gaussian_field(g, 0.8, 2.0);
        st.params = PhysParams{1.0, 1.0, 0.75, 16.0};
        MorawetzReport rep = morawetz_check(st, 0.2, 2e-3, 10);
        CHECK(rep.m_start == 0.0);
        CHECK(rep.lhs > 0.0);
        CHECK(rep.lhs <= rep.rhs);  // suite constant well below 1 here
        CHECK(rep.ft_residual <= 1e-2);
    }
    SUBCASE("cost guard") {
        auto big = Grid::periodic(16.0, 32);
        CoupledState st;
        st.u = Field(big);
        st.v = Field(big);
        st.params = PhysParams{1.0, 1.0, 0.75, 16.0};
        CHECK_THROWS_AS(morawetz_check(st, 0.1, 1e-3, 10), std::invalid_argument);
    }
}

TEST_CASE("verdicts are monotone in amplitude on the reference family") {
    auto g = Grid::radial(32.0, 1024);
    double prev_final = -1.0;
    for (double amp : {0.05, 0.1, 0.2}) {
        CoupledState st = radial_gaussian_state(g, amp, 1.0, 1.0, 1.0);
        Trajectory traj = evolve(st, 2.0, 2e-3, 25);
        ScatteringReport rep = scattering_report(traj, 0.75, 1e-3, {0.5, 1.0, 2.0});
        CHECK(rep.verdict == ScatteringReport::Verdict::converging);
        const double fin = rep.increments_u.back() + rep.increments_v.back();
        CHECK(fin >= prev_final);
        prev_final = fin;
    }
}
