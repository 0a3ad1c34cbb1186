#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_helpers.hpp"
#include "wnls/config.hpp"
#include "wnls/norms.hpp"
#include "wnls/runner.hpp"
#include "wnls/snapshot.hpp"
#include "wnls/verify.hpp"

using namespace wnls;
using namespace wnls::test;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("wnls_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("empty text yields the documented defaults") {
        RunConfig cfg = parse_config("");
        CHECK(cfg.backend == Backend::radial1d);
        CHECK(cfg.extent == 32.0);
        CHECK(cfg.n == 1024);
        CHECK(cfg.dt == 1e-3);
        CHECK(cfg.save_every == 10);
        CHECK(cfg.s == 0.75);
        CHECK(cfg.N == 16.0);
        CHECK(cfg.lambda == 1.0);
        CHECK(cfg.mu == 1.0);
    }
    SUBCASE("values, comments, and couplings") {
        RunConfig cfg = parse_config("lambda=1\nmu=2\n# comment line\nn=512  # trailing\n");
        CHECK(cfg.lambda == 1.0);
        CHECK(cfg.mu == 2.0);
        CHECK(cfg.n == 512);
    }
    SUBCASE("the I-method window on s is enforced") {
        CHECK_THROWS_WITH_AS(parse_config("s=0.3\n"),
                             doctest::Contains("1/2 < s < 1"), ConfigError);
        CHECK_THROWS_AS(parse_config("s=1.0\n"), ConfigError);
    }
    SUBCASE("unknown keys, duplicates, and bad values name the line") {
        CHECK_THROWS_WITH_AS(parse_config("lambda=1\nwhatever=2\n"),
                             doctest::Contains("line 2"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_config("n=12\nn=13\n"), doctest::Contains("duplicate"),
                             ConfigError);
        CHECK_THROWS_WITH_AS(parse_config("dt=fast\n"), doctest::Contains("not a number"),
                             ConfigError);
        CHECK_THROWS_AS(parse_config("n=4\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("n=-1024\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("save_every=-2\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("backend=periodic3d\nn=15\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("backend=periodic3d\nR=4\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("L=4\n"), ConfigError);
    }
    SUBCASE("initial conditions materialize on the right grid") {
        RunConfig cfg = parse_config("backend=periodic3d\nL=16\nn=16\nic.type=plane_wave\n"
                                     "ic.mode=1,0,0\nic.mode_v=0,2,0\nic.amplitude=0.5\n");
        CoupledState st = make_initial_state(cfg);
        CHECK(st.u.grid()->kind() == Backend::periodic3d);
        CHECK(max_abs(st.u) == doctest::Approx(0.5).epsilon(1e-12));

        RunConfig band = parse_config("ic.type=band_limited\nic.kmin=1\nic.kmax=3\nic.seed=7\n");
        CoupledState sb = make_initial_state(band);
        SpectralField sp = transform(sb.u);
        for (std::size_t k = 0; k < sp.coeffs.size(); ++k) {
            const double f = sb.u.grid()->freq_mag()[k];
            if (f <= 1.0 || f > 3.0) CHECK(std::abs(sp.coeffs[k]) <= 1e-12);
        }
    }
}

TEST_CASE("snapshot round trip and corruption detection") {
    TempDir tmp;
    auto g = Grid::radial(16.0, 256);
    CoupledState st;
    st.t = 0.375;
    st.u = random_band_field(g, 4.0, 17);
    st.v = random_band_field(g, 4.0, 18);
    st.params = PhysParams{1.5, 0.5, 0.8, 12.0};

    const std::string path = (tmp.path / "state.bin").string();
    write_snapshot(path, st);

    SUBCASE("bitwise round trip") {
        CoupledState back = read_snapshot(path);
        CHECK(back.t == st.t);
        CHECK(back.params.lambda == st.params.lambda);
        CHECK(back.params.N == st.params.N);
        CHECK(back.u.grid()->same_as(*st.u.grid()));
        for (std::size_t j = 0; j < st.u.size(); ++j) {
            CHECK(back.u[j] == st.u[j]);
            CHECK(back.v[j] == st.v[j]);
        }
    }
    SUBCASE("corrupted payload byte fails the checksum") {
        std::string bytes = slurp(path);
        bytes[bytes.size() / 2] ^= 0x40;
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_WITH_AS(read_snapshot(path), doctest::Contains("checksum"), SnapshotError);
    }
    SUBCASE("corrupted header byte fails the header checksum") {
        std::string bytes = slurp(path);
        bytes[20] ^= 0x01;
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_AS(read_snapshot(path), SnapshotError);
    }
    SUBCASE("version and magic mismatches are explicit") {
        std::string bytes = slurp(path);
        bytes[8] = 2;  // version field
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_WITH_AS(read_snapshot(path), doctest::Contains("unsupported snapshot version"),
                             SnapshotError);
        bytes[0] = 'X';
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_WITH_AS(read_snapshot(path), doctest::Contains("magic"), SnapshotError);
    }
    SUBCASE("truncated file is rejected") {
        std::string bytes = slurp(path);
        bytes.resize(bytes.size() - 9);
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_AS(read_snapshot(path), SnapshotError);
    }
}

TEST_CASE("cmd_run artifacts") {
    TempDir tmp;
    RunConfig cfg = parse_config("R=16\nn=256\nT=0.05\ndt=1e-3\nsave_every=10\n"
                                 "ic.amplitude=1.0\n");

    SUBCASE("T=0 gives a single-row timeseries") {
        RunConfig zero = cfg;
        zero.T = 0.0;
        CHECK(cmd_run(zero, tmp.path / "zero") == RunStatus::ok);
        std::string csv = slurp(tmp.path / "zero" / "timeseries.csv");
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + one row
    }
    SUBCASE("reruns are byte-identical and the cumulative column is monotone") {
        CHECK(cmd_run(cfg, tmp.path / "a") == RunStatus::ok);
        CHECK(cmd_run(cfg, tmp.path / "b") == RunStatus::ok);
        const std::string csv_a = slurp(tmp.path / "a" / "timeseries.csv");
        CHECK(csv_a == slurp(tmp.path / "b" / "timeseries.csv"));
        CHECK(slurp(tmp.path / "a" / "report.json") == slurp(tmp.path / "b" / "report.json"));
        CHECK(slurp(tmp.path / "a" / "snapshot.bin") == slurp(tmp.path / "b" / "snapshot.bin"));
        CHECK(slurp(tmp.path / "a" / "report.json").find("\"scattering\"") != std::string::npos);
        CHECK(slurp(tmp.path / "a" / "report.json").find("\"verdict\"") != std::string::npos);

        // interaction_L4_cum column (10th) never decreases
        std::istringstream lines(csv_a);
        std::string line;
        std::getline(lines, line);  // header
        double prev = -1.0;
        while (std::getline(lines, line)) {
            std::stringstream ls(line);
            std::string cell;
            for (int c = 0; c < 10; ++c) std::getline(ls, cell, ',');
            const double val = std::stod(cell);
            CHECK(val >= prev);
            prev = val;
        }
    }
    SUBCASE("final snapshot can seed a follow-up run") {
        CHECK(cmd_run(cfg, tmp.path / "seed") == RunStatus::ok);
        RunConfig follow = cfg;
        follow.ic.type = IcSpec::Type::file;
        follow.ic.file = (tmp.path / "seed" / "snapshot.bin").string();
        CoupledState resumed = make_initial_state(follow);
        CHECK(resumed.t == 0.0);
        CHECK(l2_norm(resumed.u) > 0.0);
    }
    SUBCASE("blow-up keeps partial artifacts with a truncation marker") {
        // amplitude overflow: |u|² overflows a double, the phase goes
        // non-finite, and the guard trips on the first step
        RunConfig boom = cfg;
        boom.ic.amplitude = 1e160;
        boom.ic.amplitude_v = 1e160;
        CHECK(cmd_run(boom, tmp.path / "boom") == RunStatus::blow_up);
        const std::string csv = slurp(tmp.path / "boom" / "timeseries.csv");
        CHECK(csv.find("# truncated: blow-up detected at t=") != std::string::npos);
        CHECK(fs::exists(tmp.path / "boom" / "report.json"));
        CHECK(slurp(tmp.path / "boom" / "report.json").find("\"blow_up\": true") !=
              std::string::npos);
    }
    SUBCASE("periodic run records the morawetz column") {
        RunConfig p = parse_config("backend=periodic3d\nL=16\nn=12\nT=0.02\ndt=1e-3\n"
                                   "save_every=10\nic.amplitude=0.5\nic.width=2.5\n");
        CHECK(cmd_run(p, tmp.path / "p") == RunStatus::ok);
        std::string header = slurp(tmp.path / "p" / "timeseries.csv");
        CHECK(header.substr(0, header.find('\n')) ==
              "t,mass_u,mass_v,M_w,E_w,E_w_mod,hs_u,hs_v,dEmod_dt,interaction_L4_cum,L5_cum,"
              "morawetz_M");
    }
}

TEST_CASE("verify suite names") {
    CHECK(verify::suite_from_name("spectral") == verify::Suite::spectral);
    CHECK(verify::suite_from_name("conservation") == verify::Suite::conservation);
    CHECK(verify::suite_from_name("morawetz") == verify::Suite::morawetz);
    CHECK(verify::suite_from_name("scattering") == verify::Suite::scattering);
    CHECK(verify::suite_from_name("all") == verify::Suite::all);
    CHECK_THROWS_AS(verify::suite_from_name("everything"), std::invalid_argument);
}

TEST_CASE("cmd_sweep tables") {
    TempDir tmp;

    SUBCASE("N sweep emits rows and a slope") {
        RunConfig cfg = parse_config("R=8\nn=256\nT=0.2\ndt=1e-3\nic.amplitude=4\nic.width=0.5\n");
        CHECK(cmd_sweep(cfg, SweepAxis::N, {4.0, 8.0, 16.0}, tmp.path / "n") == RunStatus::ok);
        const std::string js = slurp(tmp.path / "n" / "sweep.json");
        CHECK(js.find("\"axis\": \"N\"") != std::string::npos);
        CHECK(js.find("\"slope\"") != std::string::npos);
        CHECK(std::count(js.begin(), js.end(), '{') >= 4);
    }
    SUBCASE("amplitude sweep reports verdicts") {
        RunConfig cfg = parse_config("R=16\nn=256\nT=0.5\ndt=2e-3\nsave_every=5\n");
        CHECK(cmd_sweep(cfg, SweepAxis::amplitude, {0.05, 0.1, 0.2}, tmp.path / "amp") ==
              RunStatus::ok);
        const std::string js = slurp(tmp.path / "amp" / "sweep.json");
        CHECK(js.find("\"verdict\"") != std::string::npos);
        CHECK(js.find("converging") != std::string::npos);
    }
    SUBCASE("duplicate axis values are a usage error") {
        RunConfig cfg = parse_config("");
        CHECK_THROWS_WITH_AS(cmd_sweep(cfg, SweepAxis::N, {4.0, 4.0, 8.0}, tmp.path / "dup"),
                             doctest::Contains("duplicate"), ConfigError);
    }
}
