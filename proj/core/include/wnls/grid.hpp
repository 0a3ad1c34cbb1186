#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace wnls {

enum class Backend { radial1d, periodic3d };

/// Discretization descriptor.  Two backends:
///
///  * radial1d — radial functions on R³ sampled at r_j = jR/n, j = 1..n-1.
///    The transform is the 3D radial Fourier transform realized as a DST-I
///    of U(r) = r·u(r), with frequency magnitudes ρ_k = k/(2R), k = 1..n-1.
///
///  * periodic3d — the torus [0,L)³ sampled at x = (L/n)(j1,j2,j3) with
///    frequencies ξ = m/L, m ∈ Z³, |m_i| <= n/2 (standard FFT wrap).
///
/// A Grid owns precomputed sample and frequency-magnitude tables; it is
/// immutable and shared by the fields that live on it.
class Grid {
public:
    static std::shared_ptr<const Grid> radial(double R, std::size_t n);
    static std::shared_ptr<const Grid> periodic(double L, std::size_t n);

    Backend kind() const { return kind_; }
    double extent() const { return extent_; }  // R (radial) or L (periodic)
    std::size_t n() const { return n_; }

    std::size_t point_count() const { return points_.size() ? points_.size() : mode_count(); }
    std::size_t mode_count() const { return freq_mag_.size(); }

    /// Sample coordinates: radii r_j (radial1d only).
    const std::vector<double>& radii() const { return points_; }
    /// |ξ| per linear mode index.
    const std::vector<double>& freq_mag() const { return freq_mag_; }
    /// Parseval weight per mode: Σ_k w_k |f̂_k|² = ||f||_2².
    const std::vector<double>& parseval_weights() const { return parseval_; }
    /// Signed integer frequency m_i of axis index i (periodic3d only).
    int wrap_mode(std::size_t i) const {
        return static_cast<int>(i) < static_cast<int>(n_ / 2)
                   ? static_cast<int>(i)
                   : static_cast<int>(i) - static_cast<int>(n_);
    }

    /// Quadrature weight of one sample in ∫ dx (radial: 4π r_j² Δr;
    /// periodic: (L/n)³).
    double volume_weight(std::size_t j) const {
        return kind_ == Backend::radial1d ? vol_weights_[j] : cell_volume_;
    }
    double cell_volume() const { return cell_volume_; }  // Δr or (L/n)³
    double dr() const { return dr_; }
    double drho() const { return drho_; }

    /// Largest resolvable |ξ|.
    double max_frequency() const { return max_freq_; }

    bool same_as(const Grid& other) const {
        return kind_ == other.kind_ && extent_ == other.extent_ && n_ == other.n_;
    }

private:
    Backend kind_;
    double extent_ = 0.0;
    std::size_t n_ = 0;
    double dr_ = 0.0, drho_ = 0.0, cell_volume_ = 0.0, max_freq_ = 0.0;
    std::vector<double> points_;       // radial sample radii (empty for periodic)
    std::vector<double> freq_mag_;     // |ξ| per mode
    std::vector<double> parseval_;     // Parseval weight per mode
    std::vector<double> vol_weights_;  // spatial quadrature weight per sample (radial)
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace wnls
