#include "wnls/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "wnls/params.hpp"

namespace wnls {

std::shared_ptr<const Grid> Grid::radial(double R, std::size_t n) {
    if (!(R > 0.0) || !std::isfinite(R))
        throw std::invalid_argument("Grid::radial: R must be positive and finite");
    if (n < 8) throw std::invalid_argument("Grid::radial: n must be >= 8");

    auto g = std::make_shared<Grid>();
    g->kind_ = Backend::radial1d;
    g->extent_ = R;
    g->n_ = n;
    g->dr_ = R / static_cast<double>(n);
    g->drho_ = 1.0 / (2.0 * R);
    g->cell_volume_ = g->dr_;

    const std::size_t m = n - 1;  // interior samples r_1 .. r_{n-1}
    g->points_.resize(m);
    g->freq_mag_.resize(m);
    g->parseval_.resize(m);
    g->vol_weights_.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double r = static_cast<double>(j + 1) * g->dr_;
        const double rho = static_cast<double>(j + 1) * g->drho_;
        g->points_[j] = r;
        g->freq_mag_[j] = rho;
        g->parseval_[j] = 4.0 * pi * rho * rho * g->drho_;
        g->vol_weights_[j] = 4.0 * pi * r * r * g->dr_;
    }
    g->max_freq_ = g->freq_mag_.back();
    return g;
}

std::shared_ptr<const Grid> Grid::periodic(double L, std::size_t n) {
    if (!(L > 0.0) || !std::isfinite(L))
        throw std::invalid_argument("Grid::periodic: L must be positive and finite");
    if (n < 8) throw std::invalid_argument("Grid::periodic: n must be >= 8");
    if (n % 2 != 0) throw std::invalid_argument("Grid::periodic: n must be even");

    auto g = std::make_shared<Grid>();
    g->kind_ = Backend::periodic3d;
    g->extent_ = L;
    g->n_ = n;
    const double h = L / static_cast<double>(n);
    g->dr_ = h;
    g->drho_ = 1.0 / L;
    g->cell_volume_ = h * h * h;

    const std::size_t total = n * n * n;
    g->freq_mag_.resize(total);
    g->parseval_.resize(total);
    const double wk = 1.0 / (L * L * L);
    double maxf = 0.0;
    std::size_t idx = 0;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const double m1 = g->wrap_mode(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const double m2 = g->wrap_mode(i2);
            for (std::size_t i3 = 0; i3 < n; ++i3, ++idx) {
                const double m3 = g->wrap_mode(i3);
                const double f = std::sqrt(m1 * m1 + m2 * m2 + m3 * m3) / L;
                g->freq_mag_[idx] = f;
                g->parseval_[idx] = wk;
                if (f > maxf) maxf = f;
            }
        }
    }
    g->max_freq_ = maxf;
    return g;
}

}  // namespace wnls
