#include "wnls/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace wnls {
namespace {

// FFTW plans are cached per (kind, n); creation is serialized because the
// planner is not thread-safe.  Execution uses fftw's new-array interface on
// per-invocation fftw_malloc'd buffers, so concurrent transforms never share
// mutable state.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan dst_plan(std::size_t m) {
    static std::map<std::size_t, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    double* buf_in = fftw_alloc_real(m);
    double* buf_out = fftw_alloc_real(m);
    fftw_r2r_kind kind = FFTW_RODFT00;
    fftw_plan p = fftw_plan_r2r_1d(static_cast<int>(m), buf_in, buf_out, kind, FFTW_ESTIMATE);
    fftw_free(buf_in);
    fftw_free(buf_out);
    cache.emplace(m, p);
    return p;
}

fftw_plan dft3_plan(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    fftw_complex* buf_in = fftw_alloc_complex(n * n * n);
    fftw_complex* buf_out = fftw_alloc_complex(n * n * n);
    fftw_plan p = fftw_plan_dft_3d(static_cast<int>(n), static_cast<int>(n),
                                   static_cast<int>(n), buf_in, buf_out, sign, FFTW_ESTIMATE);
    fftw_free(buf_in);
    fftw_free(buf_out);
    cache.emplace(key, p);
    return p;
}

struct RealBuf {
    double* p;
    explicit RealBuf(std::size_t m) : p(fftw_alloc_real(m)) {}
    ~RealBuf() { fftw_free(p); }
    RealBuf(const RealBuf&) = delete;
    RealBuf& operator=(const RealBuf&) = delete;
};

struct CplxBuf {
    fftw_complex* p;
    explicit CplxBuf(std::size_t m) : p(fftw_alloc_complex(m)) {}
    ~CplxBuf() { fftw_free(p); }
    CplxBuf(const CplxBuf&) = delete;
    CplxBuf& operator=(const CplxBuf&) = delete;
};

// Unnormalized DST-I of both parts of a complex sequence:
// out_k = 2 Σ_j in_j sin(π(j+1)(k+1)/n), arrays of length m = n-1.
void dst_complex(std::size_t m, const cplx* in, cplx* out) {
    fftw_plan plan = dst_plan(m);
    RealBuf a(m), b(m);
    for (std::size_t j = 0; j < m; ++j) a.p[j] = in[j].real();
    fftw_execute_r2r(plan, a.p, b.p);
    for (std::size_t j = 0; j < m; ++j) {
        out[j].real(b.p[j]);
        a.p[j] = in[j].imag();
    }
    fftw_execute_r2r(plan, a.p, b.p);
    for (std::size_t j = 0; j < m; ++j) out[j].imag(b.p[j]);
}

void dft3_complex(std::size_t n, int sign, const cplx* in, cplx* out) {
    fftw_plan plan = dft3_plan(n, sign);
    const std::size_t total = n * n * n;
    CplxBuf a(total), b(total);
    for (std::size_t j = 0; j < total; ++j) {
        a.p[j][0] = in[j].real();
        a.p[j][1] = in[j].imag();
    }
    fftw_execute_dft(plan, a.p, b.p);
    for (std::size_t j = 0; j < total; ++j) out[j] = cplx(b.p[j][0], b.p[j][1]);
}

}  // namespace

SpectralField transform(const Field& f) {
    if (!f.all_finite()) throw std::invalid_argument("transform: non-finite samples");
    const Grid& g = *f.grid();
    SpectralField out{f.grid(), std::vector<cplx>(g.mode_count())};

    if (g.kind() == Backend::radial1d) {
        const std::size_t m = g.point_count();
        const double R = g.extent();
        std::vector<cplx> U(m);
        for (std::size_t j = 0; j < m; ++j) U[j] = g.radii()[j] * f[j];
        dst_complex(m, U.data(), out.coeffs.data());
        // rho_k f̂_k = (2R/n) Σ_j U_j sin(πjk/n); DST already carries the 2.
        const double scale = R / static_cast<double>(g.n());
        for (std::size_t k = 0; k < m; ++k) out.coeffs[k] *= scale / g.freq_mag()[k];
    } else {
        dft3_complex(g.n(), FFTW_FORWARD, f.samples().data(), out.coeffs.data());
        const double cv = g.cell_volume();
        for (cplx& z : out.coeffs) z *= cv;
    }
    return out;
}

Field inverse_transform(const SpectralField& s) {
    const Grid& g = *s.grid;
    if (s.coeffs.size() != g.mode_count())
        throw std::invalid_argument("inverse_transform: coefficient count mismatch");
    Field out(s.grid);

    if (g.kind() == Backend::radial1d) {
        const std::size_t m = g.mode_count();
        const double R = g.extent();
        std::vector<cplx> V(m);
        for (std::size_t k = 0; k < m; ++k) V[k] = g.freq_mag()[k] * s.coeffs[k];
        dst_complex(m, V.data(), out.samples().data());
        const double scale = 1.0 / (2.0 * R);
        for (std::size_t j = 0; j < m; ++j) out[j] *= scale / g.radii()[j];
    } else {
        dft3_complex(g.n(), FFTW_BACKWARD, s.coeffs.data(), out.samples().data());
        const double scale = 1.0 / (g.extent() * g.extent() * g.extent());
        for (cplx& z : out.samples()) z *= scale;
    }
    return out;
}

Field apply_symbol_table(const Field& f, const std::vector<cplx>& symbol) {
    SpectralField s = transform(f);
    if (symbol.size() != s.coeffs.size())
        throw std::invalid_argument("apply_symbol_table: symbol table size mismatch");
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) s.coeffs[k] *= symbol[k];
    return inverse_transform(s);
}

}  // namespace wnls
