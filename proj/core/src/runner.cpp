#include "wnls/runner.hpp"

#include <json.hpp>

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "wnls/diagnostics.hpp"
#include "wnls/norms.hpp"
#include "wnls/snapshot.hpp"

namespace wnls {

namespace {

// shortest round-trippable decimal
std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string backend_name(Backend b) { return b == Backend::radial1d ? "radial" : "periodic3d"; }

nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["backend"] = backend_name(cfg.backend);
    j[cfg.backend == Backend::radial1d ? "R" : "L"] = cfg.extent;
    j["n"] = cfg.n;
    j["lambda"] = cfg.lambda;
    j["mu"] = cfg.mu;
    j["s"] = cfg.s;
    j["N"] = cfg.N;
    j["dt"] = cfg.dt;
    j["T"] = cfg.T;
    j["save_every"] = cfg.save_every;
    return j;
}

std::size_t sweep_workers() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NLS_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

}  // namespace

RunStatus cmd_run(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    CoupledState initial = make_initial_state(cfg);

    const bool with_morawetz =
        cfg.backend == Backend::periodic3d && cfg.n <= 24;

    std::ofstream csv(out_dir / "timeseries.csv", std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write " + (out_dir / "timeseries.csv").string());
    csv << "t,mass_u,mass_v,M_w,E_w,E_w_mod,hs_u,hs_v,dEmod_dt,interaction_L4_cum,L5_cum";
    if (with_morawetz) csv << ",morawetz_M";
    csv << "\n";

    Observer row_writer = [&](const TrajectorySample& smp) {
        CoupledState st{smp.t, smp.u, smp.v, cfg.params()};
        DiagnosticsRecord rec;
        try {
            rec = make_record(st, with_morawetz);
        } catch (const std::exception&) {
            // state beyond the diagnosable range: abort as blow-up
            throw BlowupError(smp.t);
        }
        csv << fmt(smp.t) << ',' << fmt(rec.mass_u) << ',' << fmt(rec.mass_v) << ','
            << fmt(rec.M_w) << ',' << fmt(rec.E_w) << ',' << fmt(rec.E_w_mod) << ','
            << fmt(rec.hs_u) << ',' << fmt(rec.hs_v) << ',' << fmt(rec.dEmod_dt) << ','
            << fmt(smp.interaction_cum) << ',' << fmt(std::pow(smp.l5_cum_pow, 0.2));
        if (with_morawetz) csv << ',' << fmt(rec.morawetz_M.value_or(0.0));
        csv << "\n";
    };

    Trajectory traj = evolve(initial, cfg.T, cfg.dt, cfg.save_every, {row_writer});
    if (traj.blew_up())
        csv << "# truncated: blow-up detected at t=" << fmt(traj.blowup_time()) << "\n";
    csv.close();

    nlohmann::json rep;
    rep["config"] = config_json(cfg);
    rep["t_safe"] = traj.t_safe();
    rep["samples"] = traj.samples().size();
    rep["blow_up"] = traj.blew_up();
    if (traj.blew_up()) rep["blow_up_time"] = traj.blowup_time();

    if (!traj.samples().empty()) {
        const TrajectorySample& last = traj.samples().back();
        write_snapshot((out_dir / "snapshot.bin").string(),
                       CoupledState{last.t, last.u, last.v, cfg.params()});
        rep["final_time"] = last.t;
        rep["interaction_L4_total"] = last.interaction_cum;
        rep["L5_spacetime"] = std::pow(last.l5_cum_pow, 0.2);
        CoupledState fin{last.t, last.u, last.v, cfg.params()};
        rep["final"] = {{"mass_u", std::pow(l2_norm(last.u), 2)},
                        {"mass_v", std::pow(l2_norm(last.v), 2)},
                        {"E_w", weighted_energy(fin)},
                        {"E_w_mod", modified_energy(fin, cfg.N, cfg.s)},
                        {"hs_u", sobolev_norm(last.u, cfg.s, false)},
                        {"hs_v", sobolev_norm(last.v, cfg.s, false)}};
    }
    if (!traj.blew_up() && traj.samples().size() >= 5) {
        const auto& smp = traj.samples();
        ScatteringReport sc = scattering_report(
            traj, cfg.s, 1e-3, {smp[smp.size() / 4].t, smp[smp.size() / 2].t, smp.back().t});
        rep["scattering"] = {
            {"checkpoints", sc.checkpoint_times},
            {"beyond_t_safe", sc.beyond_t_safe},
            {"increments_u", sc.increments_u},
            {"increments_v", sc.increments_v},
            {"L5_spacetime", sc.l5_accumulation},
            {"L5_last_quarter_growth", sc.l5_last_quarter_growth},
            {"verdict", sc.verdict == ScatteringReport::Verdict::converging ? "converging"
                        : sc.verdict == ScatteringReport::Verdict::diverging ? "diverging"
                                                                             : "inconclusive"}};
    }
    std::ofstream jf(out_dir / "report.json", std::ios::trunc);
    jf << rep.dump(2) << "\n";

    return traj.blew_up() ? RunStatus::blow_up : RunStatus::ok;
}

RunStatus cmd_sweep(const RunConfig& cfg, SweepAxis axis, const std::vector<double>& values,
                    const std::filesystem::path& out_dir) {
    if (values.size() < 3)
        throw ConfigError("sweep needs at least 3 axis values");
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (values[i] == values[j])
                throw ConfigError("duplicate axis value " + fmt(values[i]));

    std::filesystem::create_directories(out_dir);
    nlohmann::json out;
    out["axis"] = axis == SweepAxis::N ? "N" : "amplitude";
    out["config"] = config_json(cfg);
    out["rows"] = nlohmann::json::array();
    bool any_failed = false;

    if (axis == SweepAxis::N) {
        // the dynamics is independent of N: one evolution feeds every row
        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        CoupledState initial = make_initial_state(cfg);
        SweepTable table = increment_sweep(initial, sorted, cfg.s, cfg.T, cfg.dt);
        for (const auto& row : table.rows) {
            nlohmann::json r;
            r["value"] = row.N;
            r["failed"] = row.failed;
            if (!row.failed) r["total_increment"] = row.total_increment;
            any_failed |= row.failed;
            out["rows"].push_back(r);
        }
        out["slope"] = table.fitted_slope;
        out["grid"] = table.grid_desc;
    } else {
        struct Row {
            double value;
            bool failed = false;
            std::string verdict;
            double final_increment = 0.0;
            double l5 = 0.0;
        };
        std::vector<Row> rows(values.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1)) {
                Row& row = rows[i];
                row.value = values[i];
                try {
                    RunConfig member = cfg;
                    member.ic.amplitude = values[i];
                    member.ic.amplitude_v = values[i];
                    CoupledState st = make_initial_state(member);
                    Trajectory traj = evolve(st, member.T, member.dt, member.save_every);
                    if (traj.blew_up()) throw BlowupError(traj.blowup_time());
                    const auto& smp = traj.samples();
                    if (smp.size() < 5)
                        throw std::runtime_error("sweep member too short for checkpoints");
                    // checkpoints drawn from actual sample times
                    ScatteringReport rep = scattering_report(
                        traj, member.s, 1e-3,
                        {smp[smp.size() / 4].t, smp[smp.size() / 2].t, smp.back().t});
                    row.verdict = rep.verdict == ScatteringReport::Verdict::converging
                                      ? "converging"
                                      : rep.verdict == ScatteringReport::Verdict::diverging
                                            ? "diverging"
                                            : "inconclusive";
                    row.final_increment = rep.increments_u.back() + rep.increments_v.back();
                    row.l5 = rep.l5_accumulation;
                } catch (const std::exception&) {
                    row.failed = true;
                }
            }
        };
        std::vector<std::thread> pool;
        const std::size_t nworkers = std::min(sweep_workers(), values.size());
        for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();

        for (const Row& row : rows) {  // merged in axis order
            nlohmann::json r;
            r["value"] = row.value;
            r["failed"] = row.failed;
            if (!row.failed) {
                r["verdict"] = row.verdict;
                r["final_increment"] = row.final_increment;
                r["L5_spacetime"] = row.l5;
            }
            any_failed |= row.failed;
            out["rows"].push_back(r);
        }
    }

    std::ofstream jf(out_dir / "sweep.json", std::ios::trunc);
    jf << out.dump(2) << "\n";
    return any_failed ? RunStatus::check_failed : RunStatus::ok;
}

}  // namespace wnls
