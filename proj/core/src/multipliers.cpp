#include "wnls/multipliers.hpp"

#include <cmath>
#include <stdexcept>

#include "wnls/params.hpp"
#include "wnls/transforms.hpp"

namespace wnls {

namespace {
double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }
}  // namespace

double psi_profile(double x) {
    const double r = std::abs(x);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    return 1.0 - smoothstep(r - 1.0);
}

double chi_profile(double x) { return psi_profile(x / 2.0) - psi_profile(x); }

cplx eval_symbol(const MultiplierSpec& spec, double xi_mag) {
    const double r = xi_mag;
    switch (spec.kind) {
        case MultiplierSpec::Kind::fractional_power: {
            const double s = spec.a;
            if (r == 0.0) return s == 0.0 ? 1.0 : 0.0;  // |0|^s: drop the mode for s != 0
            return std::pow(r, s);
        }
        case MultiplierSpec::Kind::inhomogeneous_power:
            return std::pow(1.0 + r * r, spec.a / 2.0);
        case MultiplierSpec::Kind::littlewood_paley: {
            const double sj = std::ldexp(1.0, -spec.band);  // 2^{-j}
            return psi_profile(sj * r) - psi_profile(2.0 * sj * r);
        }
        case MultiplierSpec::Kind::low_pass:
            return psi_profile(r / spec.a);
        case MultiplierSpec::Kind::high_pass:
            return 1.0 - psi_profile(r / spec.a);
        case MultiplierSpec::Kind::i_operator: {
            const double N = spec.a, s = spec.b;
            if (r <= N) return 1.0;
            const double outer = std::pow(N / r, 1.0 - s);
            if (r >= 2.0 * N) return outer;
            // Gap blend: m = exp(σ(θ)·log (N/|ξ|)^{1-s}), θ = log2(|ξ|/N).
            const double theta = std::log2(r / N);
            return std::exp(smoothstep(theta) * std::log(outer));
        }
        case MultiplierSpec::Kind::schrodinger_phase: {
            const double phase = -4.0 * pi * pi * spec.a * r * r;
            return cplx(std::cos(phase), std::sin(phase));
        }
    }
    return 0.0;  // unreachable
}

Field apply_multiplier(const Field& f, const MultiplierSpec& spec) {
    const Grid& g = *f.grid();
    std::vector<cplx> table(g.mode_count());
    for (std::size_t k = 0; k < table.size(); ++k) table[k] = eval_symbol(spec, g.freq_mag()[k]);
    return apply_symbol_table(f, table);
}

Field apply_multipliers(const Field& f, const std::vector<MultiplierSpec>& specs) {
    const Grid& g = *f.grid();
    std::vector<cplx> table(g.mode_count(), cplx(1.0, 0.0));
    for (const auto& spec : specs)
        for (std::size_t k = 0; k < table.size(); ++k) table[k] *= eval_symbol(spec, g.freq_mag()[k]);
    return apply_symbol_table(f, table);
}

Field lp_project(const Field& f, const LpMode& mode) {
    switch (mode.kind) {
        case LpMode::Kind::band:
            return apply_multiplier(f, MultiplierSpec::littlewood_paley(mode.j));
        case LpMode::Kind::low:
            if (!(mode.N > 0.0)) throw std::invalid_argument("lp_project: Low needs N > 0");
            return apply_multiplier(f, MultiplierSpec::low_pass(mode.N));
        case LpMode::Kind::high: {
            if (!(mode.N > 0.0)) throw std::invalid_argument("lp_project: High needs N > 0");
            // Exact complement of Low on the same transform pass.
            Field low = apply_multiplier(f, MultiplierSpec::low_pass(mode.N));
            Field out = f;
            out -= low;
            return out;
        }
    }
    throw std::invalid_argument("lp_project: bad mode");
}

Field i_apply(const Field& f, double N, double s) {
    require_i_exponent(s);
    if (!(N > 0.0) || !std::isfinite(N)) throw std::invalid_argument("i_apply: N must be > 0");
    return apply_multiplier(f, MultiplierSpec::i_operator(N, s));
}

}  // namespace wnls
