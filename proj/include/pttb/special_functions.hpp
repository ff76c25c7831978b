#pragma once

namespace pttb {

/// ln ∫₀^{1/2} e^{a-1} (1-e)^{b-1} de, the unregularized incomplete beta
/// function at 1/2. Requires finite a > 0, b > 0; throws InvalidArgument
/// otherwise. Accurate to ~1e-13 relative over (0, 1e4].
double log_beta_inc_half(double a, double b);

/// Mean of Beta(a, b) restricted to (0, 1/2).
double trunc_beta_mean(double a, double b);

/// ln B(a, b) for the complete beta function.
double log_beta(double a, double b);

}  // namespace pttb
