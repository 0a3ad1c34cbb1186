#include "wnls/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "wnls/snapshot.hpp"
#include "wnls/transforms.hpp"

namespace wnls {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_double(std::size_t line, std::string_view key, std::string_view val) {
    try {
        std::size_t used = 0;
        const std::string tmp(val);
        const double x = std::stod(tmp, &used);
        if (used != tmp.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        fail(line, "value '" + std::string(val) + "' for key '" + std::string(key) +
                       "' is not a number");
    }
}

long long parse_int(std::size_t line, std::string_view key, std::string_view val) {
    long long x = 0;
    auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), x);
    if (ec != std::errc() || p != val.data() + val.size())
        fail(line, "value '" + std::string(val) + "' for key '" + std::string(key) +
                       "' is not an integer");
    return x;
}

std::array<int, 3> parse_mode(std::size_t line, std::string_view key, std::string_view val) {
    std::array<int, 3> m{0, 0, 0};
    std::stringstream ss{std::string(val)};
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 3) fail(line, "mode '" + std::string(val) + "' needs exactly three components");
        m[i++] = static_cast<int>(parse_int(line, key, trim(part)));
    }
    if (i != 3) fail(line, "mode '" + std::string(val) + "' needs exactly three components");
    return m;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::map<std::string, std::size_t> seen;
    bool extent_set = false, amplitude_v_set = false;
    std::string extent_key;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(lineno, "expected key=value");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (val.empty()) fail(lineno, "empty value for key '" + key + "'");
        if (!seen.emplace(key, lineno).second)
            fail(lineno, "duplicate key '" + key + "' (first at line " +
                             std::to_string(seen[key]) + ")");

        if (key == "backend") {
            if (val == "radial")
                cfg.backend = Backend::radial1d;
            else if (val == "periodic3d")
                cfg.backend = Backend::periodic3d;
            else
                fail(lineno, "backend must be 'radial' or 'periodic3d'");
        } else if (key == "R" || key == "L") {
            cfg.extent = parse_double(lineno, key, val);
            extent_set = true;
            extent_key = key;
        } else if (key == "n") {
            const long long v = parse_int(lineno, key, val);
            if (v <= 0) fail(lineno, "n must be positive");
            cfg.n = static_cast<std::size_t>(v);
        } else if (key == "lambda") {
            cfg.lambda = parse_double(lineno, key, val);
        } else if (key == "mu") {
            cfg.mu = parse_double(lineno, key, val);
        } else if (key == "s") {
            cfg.s = parse_double(lineno, key, val);
        } else if (key == "N") {
            cfg.N = parse_double(lineno, key, val);
        } else if (key == "dt") {
            cfg.dt = parse_double(lineno, key, val);
        } else if (key == "T") {
            cfg.T = parse_double(lineno, key, val);
        } else if (key == "save_every") {
            const long long v = parse_int(lineno, key, val);
            if (v <= 0) fail(lineno, "save_every must be positive");
            cfg.save_every = static_cast<std::size_t>(v);
        } else if (key == "ic.type") {
            if (val == "gaussian")
                cfg.ic.type = IcSpec::Type::gaussian;
            else if (val == "plane_wave")
                cfg.ic.type = IcSpec::Type::plane_wave;
            else if (val == "band_limited")
                cfg.ic.type = IcSpec::Type::band_limited;
            else if (val == "file")
                cfg.ic.type = IcSpec::Type::file;
            else
                fail(lineno, "ic.type must be gaussian|plane_wave|band_limited|file");
        } else if (key == "ic.amplitude") {
            cfg.ic.amplitude = parse_double(lineno, key, val);
        } else if (key == "ic.amplitude_v") {
            cfg.ic.amplitude_v = parse_double(lineno, key, val);
            amplitude_v_set = true;
        } else if (key == "ic.width") {
            cfg.ic.width = parse_double(lineno, key, val);
        } else if (key == "ic.mode") {
            cfg.ic.mode = parse_mode(lineno, key, val);
        } else if (key == "ic.mode_v") {
            cfg.ic.mode_v = parse_mode(lineno, key, val);
        } else if (key == "ic.kmin") {
            cfg.ic.kmin = parse_double(lineno, key, val);
        } else if (key == "ic.kmax") {
            cfg.ic.kmax = parse_double(lineno, key, val);
        } else if (key == "ic.seed") {
            const long long v = parse_int(lineno, key, val);
            if (v < 0) fail(lineno, "ic.seed must be nonnegative");
            cfg.ic.seed = static_cast<std::uint64_t>(v);
        } else if (key == "ic.file") {
            cfg.ic.file = std::string(val);
        } else if (key == "out_dir") {
            cfg.out_dir = std::string(val);
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }

    if (!amplitude_v_set) cfg.ic.amplitude_v = cfg.ic.amplitude;

    // cross-field validation mirrors the module preconditions
    auto require = [&](bool ok, const std::string& what, const std::string& key) {
        if (!ok) {
            const auto it = seen.find(key);
            const std::string where =
                it == seen.end() ? "default value" : "line " + std::to_string(it->second);
            throw ConfigError("config " + where + ": " + what);
        }
    };
    require(cfg.extent > 0.0 && std::isfinite(cfg.extent), "extent must be positive",
            extent_key.empty() ? "R" : extent_key);
    if (extent_set) {
        require(!(cfg.backend == Backend::radial1d && extent_key == "L"),
                "key 'L' belongs to the periodic3d backend; radial uses 'R'", "L");
        require(!(cfg.backend == Backend::periodic3d && extent_key == "R"),
                "key 'R' belongs to the radial backend; periodic3d uses 'L'", "R");
    } else if (cfg.backend == Backend::periodic3d) {
        cfg.extent = 16.0;
    }
    require(cfg.n >= 8, "n must be >= 8", "n");
    require(cfg.backend != Backend::periodic3d || cfg.n % 2 == 0,
            "periodic3d needs even n", "n");
    require(cfg.lambda >= 0.0, "lambda must be >= 0", "lambda");
    require(cfg.mu >= 0.0, "mu must be >= 0", "mu");
    require(cfg.s > 0.5 && cfg.s < 1.0, "the I-method requires 1/2 < s < 1", "s");
    require(cfg.N > 0.0 && std::isfinite(cfg.N), "N must be positive and finite", "N");
    require(cfg.dt > 0.0, "dt must be > 0", "dt");
    require(cfg.T >= 0.0, "T must be >= 0", "T");
    require(cfg.save_every >= 1, "save_every must be >= 1", "save_every");
    require(cfg.ic.amplitude >= 0.0, "ic.amplitude must be >= 0", "ic.amplitude");
    require(cfg.ic.width > 0.0, "ic.width must be > 0", "ic.width");
    require(cfg.ic.kmin >= 0.0 && cfg.ic.kmax > cfg.ic.kmin,
            "band_limited needs 0 <= kmin < kmax", "ic.kmax");
    require(cfg.ic.type != IcSpec::Type::file || !cfg.ic.file.empty(),
            "ic.type=file needs ic.file", "ic.file");
    require(cfg.ic.type != IcSpec::Type::plane_wave || cfg.backend == Backend::periodic3d,
            "plane_wave initial data needs the periodic3d backend", "ic.type");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

// uniform bits -> [0,1): pinned construction, no library distributions
double uniform01(std::mt19937_64& eng) { return (eng() >> 11) * 0x1.0p-53; }

Field gaussian_ic(const GridPtr& g, double amplitude, double width) {
    Field f(g);
    if (g->kind() == Backend::radial1d) {
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double r = g->radii()[j] / width;
            f[j] = amplitude * std::exp(-pi * r * r);
        }
    } else {
        const std::size_t n = g->n();
        const double h = g->extent() / static_cast<double>(n);
        const double c = g->extent() / 2.0;
        std::size_t idx = 0;
        for (std::size_t i1 = 0; i1 < n; ++i1)
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t i3 = 0; i3 < n; ++i3, ++idx) {
                    const double x = i1 * h - c, y = i2 * h - c, z = i3 * h - c;
                    f[idx] = amplitude * std::exp(-pi * (x * x + y * y + z * z) / (width * width));
                }
    }
    return f;
}

Field plane_wave_ic(const GridPtr& g, const std::array<int, 3>& m, double amplitude) {
    const std::size_t n = g->n();
    Field f(g);
    std::size_t idx = 0;
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i2 = 0; i2 < n; ++i2)
            for (std::size_t i3 = 0; i3 < n; ++i3, ++idx) {
                const double phase = 2.0 * pi *
                                     (m[0] * double(i1) + m[1] * double(i2) + m[2] * double(i3)) /
                                     double(n);
                f[idx] = amplitude * cplx(std::cos(phase), std::sin(phase));
            }
    return f;
}

Field band_limited_ic(const GridPtr& g, double kmin, double kmax, double amplitude,
                      std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    SpectralField sp{g, std::vector<cplx>(g->mode_count(), cplx(0, 0))};
    for (std::size_t k = 0; k < sp.coeffs.size(); ++k) {
        const double f = g->freq_mag()[k];
        if (f > kmin && f <= kmax) {
            const double phase = 2.0 * pi * uniform01(eng);
            sp.coeffs[k] = cplx(std::cos(phase), std::sin(phase));
        }
    }
    Field f = inverse_transform(sp);
    const double peak = max_abs(f);
    if (peak > 0.0) f *= cplx(amplitude / peak, 0.0);
    return f;
}

}  // namespace

CoupledState make_initial_state(const RunConfig& cfg) {
    if (cfg.ic.type == IcSpec::Type::file) {
        CoupledState st = read_snapshot(cfg.ic.file);
        st.params = cfg.params();  // config owns the physics of the new run
        st.t = 0.0;
        return st;
    }

    GridPtr g = cfg.backend == Backend::radial1d ? Grid::radial(cfg.extent, cfg.n)
                                                 : Grid::periodic(cfg.extent, cfg.n);
    CoupledState st;
    st.t = 0.0;
    st.params = cfg.params();
    switch (cfg.ic.type) {
        case IcSpec::Type::gaussian:
            st.u = gaussian_ic(g, cfg.ic.amplitude, cfg.ic.width);
            st.v = gaussian_ic(g, cfg.ic.amplitude_v, cfg.ic.width);
            break;
        case IcSpec::Type::plane_wave:
            st.u = plane_wave_ic(g, cfg.ic.mode, cfg.ic.amplitude);
            st.v = plane_wave_ic(g, cfg.ic.mode_v, cfg.ic.amplitude_v);
            break;
        case IcSpec::Type::band_limited:
            st.u = band_limited_ic(g, cfg.ic.kmin, cfg.ic.kmax, cfg.ic.amplitude, cfg.ic.seed);
            st.v = band_limited_ic(g, cfg.ic.kmin, cfg.ic.kmax, cfg.ic.amplitude_v,
                                   cfg.ic.seed + 0x9e3779b97f4a7c15ull);
            break;
        case IcSpec::Type::file:
            break;  // handled above
    }
    return st;
}

}  // namespace wnls
