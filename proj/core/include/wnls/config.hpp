#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wnls/dynamics.hpp"

namespace wnls {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IcSpec {
    enum class Type { gaussian, plane_wave, band_limited, file };
    Type type = Type::gaussian;
    double amplitude = 1.0;
    double amplitude_v = 1.0;   // defaults to amplitude unless set
    double width = 1.0;
    std::array<int, 3> mode{1, 0, 0};    // plane_wave: u mode
    std::array<int, 3> mode_v{0, 1, 0};  // plane_wave: v mode
    double kmin = 0.0, kmax = 2.0;       // band_limited annulus
    std::uint64_t seed = 1;
    std::string file;  // snapshot path for type = file
};

/// Fully validated run description parsed from '#'-commented key=value text.
struct RunConfig {
    Backend backend = Backend::radial1d;
    double extent = 32.0;  // R (radial) or L (periodic)
    std::size_t n = 1024;
    double lambda = 1.0, mu = 1.0, s = 0.75, N = 16.0;
    double dt = 1e-3, T = 1.0;
    std::size_t save_every = 10;
    IcSpec ic;
    std::string out_dir = "out";

    PhysParams params() const { return PhysParams{lambda, mu, s, N}; }
};

/// Parses and validates; unknown keys, duplicates, type mismatches, and
/// constraint violations are ConfigErrors naming the offending line.
RunConfig parse_config(std::string_view text);
RunConfig parse_config_file(const std::string& path);

/// Materializes the initial pair on the configured grid (deterministic
/// given the config; band_limited draws from the fixed seed).
CoupledState make_initial_state(const RunConfig& cfg);

}  // namespace wnls
