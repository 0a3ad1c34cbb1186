// wnls — pseudospectral simulator and harmonic-analysis toolkit for the
// coupled defocusing cubic Schrödinger system on R³ (radial) and the torus.
//
// Subcommands:
//   run      --config F [--out D]            evolve and write artifacts
//   sweep    --config F --axis A --values V  N- or amplitude-sweep table
//   verify   [--suite NAME]                  verification suites
//   snapshot {info|dump} FILE                inspect binary snapshots
//
// Exit codes: 0 success, 1 check failure, 2 usage, 3 blow-up.
// NLS_THREADS caps worker parallelism (sweeps, Morawetz partitioning).

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "wnls/config.hpp"
#include "wnls/norms.hpp"
#include "wnls/runner.hpp"
#include "wnls/snapshot.hpp"
#include "wnls/verify.hpp"

namespace {

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(std::stod(part));
        } catch (...) {
            throw wnls::ConfigError("--values entry '" + part + "' is not a number");
        }
    }
    return out;
}

int snapshot_info(const std::string& path) {
    wnls::CoupledState st = wnls::read_snapshot(path);
    const wnls::Grid& g = *st.u.grid();
    std::printf("snapshot      %s\n", path.c_str());
    std::printf("backend       %s\n",
                g.kind() == wnls::Backend::radial1d ? "radial" : "periodic3d");
    std::printf("%-13s %.17g\n", g.kind() == wnls::Backend::radial1d ? "R" : "L", g.extent());
    std::printf("n             %zu\n", g.n());
    std::printf("t             %.17g\n", st.t);
    std::printf("lambda        %.17g\n", st.params.lambda);
    std::printf("mu            %.17g\n", st.params.mu);
    std::printf("s             %.17g\n", st.params.s);
    std::printf("N             %.17g\n", st.params.N);
    std::printf("mass_u        %.17g\n", std::pow(wnls::l2_norm(st.u), 2));
    std::printf("mass_v        %.17g\n", std::pow(wnls::l2_norm(st.v), 2));
    return 0;
}

int snapshot_dump(const std::string& path) {
    wnls::CoupledState st = wnls::read_snapshot(path);
    const wnls::Grid& g = *st.u.grid();
    if (g.kind() == wnls::Backend::radial1d) {
        std::printf("r,u_re,u_im,v_re,v_im\n");
        for (std::size_t j = 0; j < st.u.size(); ++j)
            std::printf("%.17g,%.17g,%.17g,%.17g,%.17g\n", g.radii()[j], st.u[j].real(),
                        st.u[j].imag(), st.v[j].real(), st.v[j].imag());
    } else {
        std::printf("i1,i2,i3,u_re,u_im,v_re,v_im\n");
        const std::size_t n = g.n();
        std::size_t idx = 0;
        for (std::size_t i1 = 0; i1 < n; ++i1)
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t i3 = 0; i3 < n; ++i3, ++idx)
                    std::printf("%zu,%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", i1, i2, i3,
                                st.u[idx].real(), st.u[idx].imag(), st.v[idx].real(),
                                st.v[idx].imag());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled defocusing cubic NLS: pseudospectral runs and verification"};
    app.require_subcommand(1);

    std::string config_path, out_override, axis, values_csv, suite_name = "all", snap_path;

    auto* run = app.add_subcommand("run", "evolve a configured system and write artifacts");
    run->add_option("--config", config_path, "key=value config file")->required();
    run->add_option("--out", out_override, "output directory (overrides config out_dir)");

    auto* sweep = app.add_subcommand("sweep", "fan out a parameter sweep and emit sweep.json");
    sweep->add_option("--config", config_path, "key=value config file")->required();
    sweep->add_option("--axis", axis, "sweep axis: N or amplitude")->required();
    sweep->add_option("--values", values_csv, "comma-separated axis values")->required();
    sweep->add_option("--out", out_override, "output directory (overrides config out_dir)");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite_name, "spectral|conservation|morawetz|scattering|all");

    auto* snapshot = app.add_subcommand("snapshot", "inspect a binary snapshot");
    snapshot->require_subcommand(1);
    auto* info = snapshot->add_subcommand("info", "print the header");
    info->add_option("file", snap_path, "snapshot file")->required();
    auto* dump = snapshot->add_subcommand("dump", "print the samples as CSV");
    dump->add_option("file", snap_path, "snapshot file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) {
            wnls::RunConfig cfg = wnls::parse_config_file(config_path);
            const std::string out = out_override.empty() ? cfg.out_dir : out_override;
            return static_cast<int>(wnls::cmd_run(cfg, out));
        }
        if (sweep->parsed()) {
            wnls::RunConfig cfg = wnls::parse_config_file(config_path);
            wnls::SweepAxis ax;
            if (axis == "N")
                ax = wnls::SweepAxis::N;
            else if (axis == "amplitude")
                ax = wnls::SweepAxis::amplitude;
            else
                throw wnls::ConfigError("--axis must be 'N' or 'amplitude', got '" + axis + "'");
            const std::string out = out_override.empty() ? cfg.out_dir : out_override;
            return static_cast<int>(wnls::cmd_sweep(cfg, ax, parse_values(values_csv), out));
        }
        if (verify->parsed()) {
            const auto suite = wnls::verify::suite_from_name(suite_name);
            const auto results = wnls::verify::run_suite(suite, std::cout);
            return wnls::verify::all_passed(results) ? 0 : 1;
        }
        if (info->parsed()) return snapshot_info(snap_path);
        if (dump->parsed()) return snapshot_dump(snap_path);
    } catch (const wnls::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const wnls::BlowupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
