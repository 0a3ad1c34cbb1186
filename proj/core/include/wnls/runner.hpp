#pragma once

#include <filesystem>

#include "wnls/config.hpp"
#include "wnls/lab.hpp"

namespace wnls {

/// Exit statuses shared by the library runners and the CLI.
enum class RunStatus : int { ok = 0, check_failed = 1, usage = 2, blow_up = 3 };

/// Evolves the configured run and writes, under out_dir:
///   timeseries.csv  — fixed column order, one row per sample
///   snapshot.bin    — final state
///   report.json     — run summary
/// Artifacts are byte-identical across reruns of the same config.  On
/// blow-up the partial artifacts are kept, the CSV gains a truncation
/// marker, and the status is blow_up.
RunStatus cmd_run(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// N-axis: one shared evolution feeding the modified-energy increment per
/// threshold (rows + fitted slope).  amplitude-axis: one evolution per
/// value fanned out across workers (capped by NLS_THREADS), each row a
/// scattering verdict.  Writes sweep.json; a failed member marks its row
/// failed and the table is still emitted.
enum class SweepAxis { N, amplitude };
RunStatus cmd_sweep(const RunConfig& cfg, SweepAxis axis, const std::vector<double>& values,
                    const std::filesystem::path& out_dir);

}  // namespace wnls
