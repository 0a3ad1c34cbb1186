#include "wnls/norms.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "wnls/multipliers.hpp"
#include "wnls/params.hpp"
#include "wnls/transforms.hpp"

namespace wnls {

namespace {

// Interior cosine sum C_j = (1/R) Σ_k W_k cos(πjk/n) via REDFT00 of logical
// size n+1 with zeroed end members.  Serves the radial derivative.
std::mutex& dct_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan dct_plan(std::size_t len) {
    static std::map<std::size_t, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(dct_mutex());
    auto it = cache.find(len);
    if (it != cache.end()) return it->second;
    double* a = fftw_alloc_real(len);
    double* b = fftw_alloc_real(len);
    fftw_plan p = fftw_plan_r2r_1d(static_cast<int>(len), a, b, FFTW_REDFT00, FFTW_ESTIMATE);
    fftw_free(a);
    fftw_free(b);
    cache.emplace(len, p);
    return p;
}

// out_j (j=1..n-1) = 2 Σ_{k=1}^{n-1} in_k cos(πjk/n), complex data.
void cosine_interior(std::size_t n, const std::vector<cplx>& in, std::vector<cplx>& out) {
    const std::size_t len = n + 1;
    fftw_plan plan = dct_plan(len);
    std::vector<double> a(len, 0.0), b(len, 0.0);
    out.assign(n - 1, cplx(0.0, 0.0));
    for (int part = 0; part < 2; ++part) {
        a[0] = 0.0;
        a[n] = 0.0;
        for (std::size_t k = 1; k < n; ++k)
            a[k] = part == 0 ? in[k - 1].real() : in[k - 1].imag();
        fftw_execute_r2r(plan, a.data(), b.data());
        for (std::size_t j = 1; j < n; ++j) {
            if (part == 0)
                out[j - 1].real(b[j]);
            else
                out[j - 1].imag(b[j]);
        }
    }
}

}  // namespace

double lebesgue_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lebesgue_norm: p must be >= 1");
    const Grid& g = *f.grid();
    if (std::isinf(p)) {
        double m = max_abs(f);
        if (g.kind() == Backend::radial1d) m = std::max(m, std::abs(origin_value(f)));
        return m;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        acc += std::pow(std::abs(f[j]), p) * g.volume_weight(j);
    return std::pow(acc, 1.0 / p);
}

double sobolev_norm(const Field& f, double s, bool homogeneous) {
    if (!(s >= -2.0 && s <= 2.0))
        throw std::invalid_argument("sobolev_norm: s must lie in [-2, 2]");
    const Grid& g = *f.grid();
    SpectralField sp = transform(f);
    const MultiplierSpec spec = homogeneous ? MultiplierSpec::fractional_power(s)
                                            : MultiplierSpec::inhomogeneous_power(s);
    double acc = 0.0;
    for (std::size_t k = 0; k < sp.coeffs.size(); ++k) {
        const double sym = eval_symbol(spec, g.freq_mag()[k]).real();
        acc += g.parseval_weights()[k] * sym * sym * std::norm(sp.coeffs[k]);
    }
    return std::sqrt(acc);
}

double l2_norm(const Field& f) {
    const Grid& g = *f.grid();
    double acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) acc += std::norm(f[j]) * g.volume_weight(j);
    return std::sqrt(acc);
}

cplx inner_l2(const Field& a, const Field& b) {
    require_same_grid(a, b);
    const Grid& g = *a.grid();
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * std::conj(b[j]) * g.volume_weight(j);
    return acc;
}

double grad_l2(const Field& f) { return grad_symbol_factor * sobolev_norm(f, 1.0, true); }

cplx origin_value(const Field& f) {
    const Grid& g = *f.grid();
    if (g.kind() != Backend::radial1d)
        throw std::invalid_argument("origin_value: radial backend only");
    SpectralField sp = transform(f);
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < sp.coeffs.size(); ++k) {
        const double rho = g.freq_mag()[k];
        acc += rho * rho * sp.coeffs[k];
    }
    return 2.0 * pi / g.extent() * acc;
}

Field radial_derivative(const Field& f) {
    const Grid& g = *f.grid();
    if (g.kind() != Backend::radial1d)
        throw std::invalid_argument("radial_derivative: radial backend only");
    SpectralField sp = transform(f);
    const std::size_t m = g.mode_count();
    // W_k = 2πρ_k V_k with V_k = ρ_k f̂_k;  ∂_r u = (C(r) − u)/r.
    std::vector<cplx> W(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double rho = g.freq_mag()[k];
        W[k] = 2.0 * pi * rho * rho * sp.coeffs[k];
    }
    std::vector<cplx> C;
    cosine_interior(g.n(), W, C);
    Field out(f.grid());
    const double scale = 1.0 / (2.0 * g.extent());
    for (std::size_t j = 0; j < m; ++j) out[j] = (scale * C[j] - f[j]) / g.radii()[j];
    return out;
}

std::vector<Field> gradient_components(const Field& f) {
    const Grid& g = *f.grid();
    if (g.kind() != Backend::periodic3d)
        throw std::invalid_argument("gradient_components: periodic backend only");
    SpectralField sp = transform(f);
    const std::size_t n = g.n();
    std::vector<Field> out;
    out.reserve(3);
    for (int axis = 0; axis < 3; ++axis) {
        SpectralField comp{sp.grid, sp.coeffs};
        std::size_t idx = 0;
        for (std::size_t i1 = 0; i1 < n; ++i1)
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t i3 = 0; i3 < n; ++i3, ++idx) {
                    const std::size_t mi = axis == 0 ? i1 : axis == 1 ? i2 : i3;
                    // symmetric derivative: the unpaired Nyquist mode is zeroed
                    const double xi = mi == n / 2 ? 0.0 : g.wrap_mode(mi) / g.extent();
                    comp.coeffs[idx] *= cplx(0.0, grad_symbol_factor * xi);
                }
        out.push_back(inverse_transform(comp));
    }
    return out;
}

Field gradient_magnitude(const Field& f) {
    const Grid& g = *f.grid();
    if (g.kind() == Backend::radial1d) {
        Field d = radial_derivative(f);
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = std::abs(d[j]);
        return d;
    }
    std::vector<Field> comps = gradient_components(f);
    Field out(f.grid());
    for (std::size_t j = 0; j < out.size(); ++j) {
        double s2 = 0.0;
        for (const Field& c : comps) s2 += std::norm(c[j]);
        out[j] = std::sqrt(s2);
    }
    return out;
}

}  // namespace wnls
