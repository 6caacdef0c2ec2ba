#pragma once

namespace kicktop {

/// Digamma function for x > 0, absolute error below 1e-10. Uses the upward
/// recurrence psi(x) = psi(x + 1) - 1/x until x >= 6, then the asymptotic
/// expansion. Throws std::domain_error for x <= 0 or NaN.
double digamma(double x);

}  // namespace kicktop
