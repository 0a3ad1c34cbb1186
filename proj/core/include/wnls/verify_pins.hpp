#pragma once

// Regression-pinned constants measured on the reference suite (fixed seeds,
// fixed grids).  Later runs must land within ±10% of the recorded value.

namespace wnls::verify::pins {

inline constexpr double band = 0.10;  // relative regression band

inline constexpr double bernstein_p4 = 0.89829;
inline constexpr double bernstein_p6 = 1.1472;
inline constexpr double bernstein_pinf = 2.4851;
inline constexpr double sobolev_p4 = 0.23373;
inline constexpr double sobolev_p6 = 0.27743;
inline constexpr double radial_embedding = 0.19725;
inline constexpr double strichartz_l2l6 = 0.3842;
inline constexpr double hs_control = 0.026378;
inline constexpr double growth_slope = 0.31697;
inline constexpr double morawetz_ratio = 0.09419;

}  // namespace wnls::verify::pins
