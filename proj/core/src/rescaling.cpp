#include <cmath>

#include "wnls/diagnostics.hpp"
#include "wnls/dynamics.hpp"

namespace wnls {

// choose_rescaling lives apart from dynamics.cpp because it needs the
// modified energy from the diagnostics layer.
double choose_rescaling(const CoupledState& state, double N, double s) {
    require_i_exponent(s);
    auto energy_at = [&](double a) { return modified_energy(rescale(state, a), N, s); };

    if (energy_at(1.0) <= 0.5) return 1.0;

    // Under u_a = a u(ax), E_w(Iu_a, Iv_a) ~ N^{2-2s} a^{2s-1} + (quartic)·a
    // decreases toward 0 as a → 0, so search downward then bisect.
    double hi = 1.0, lo = 0.5;
    int guard = 0;
    while (energy_at(lo) > 0.5) {
        hi = lo;
        lo *= 0.5;
        if (++guard > 60) throw std::runtime_error("choose_rescaling: no admissible scale found");
    }
    for (int it = 0; it < 40 && hi / lo > 1.0 + 1e-3; ++it) {
        const double mid = std::sqrt(lo * hi);
        (energy_at(mid) <= 0.5 ? lo : hi) = mid;
    }
    return lo;  // guaranteed E_w(Iu_a, Iv_a) <= 1/2
}

}  // namespace wnls
