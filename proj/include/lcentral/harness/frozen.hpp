#pragma once

// Constants recorded from oracle runs at the default seed and frozen as
// regression guards. Slope limits are the stated exponents plus tolerance.

namespace lcentral::harness::frozen {

inline constexpr double lemma_slope_limit = 0.6;
// max ratio / d(q) observed: 1.337 (S), 0.5 (frak S, all three P), 1.995 (U)
inline constexpr double lemma_row_cap = 2.2;

inline constexpr double prop42_off_slope_limit = 2.65;
inline constexpr double prop42_in_slope_limit = 3.15;
// max |G_p| / p^{5/2} off D(p): 2.248; max |G_p| / p^3 on D(p): 1.978
inline constexpr double prop42_off_cap = 2.5;
inline constexpr double prop42_in_cap = 2.2;

// max |G_{rho^2}| / (rho^5 N1(rho)) observed: 1 (attained)
inline constexpr double prop43_constant = 1.0;

// max A(q) / envelope observed: 0.900989637 at q = 101
inline constexpr double thm12_max_ratio = 0.901;

}  // namespace lcentral::harness::frozen
