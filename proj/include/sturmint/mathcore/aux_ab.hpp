#pragma once

namespace sturmint::mathcore {

/// A_i(p) = int_1^inf mu^i e^{-p mu} dmu, p > 0, by the upward recurrence
/// A_i = (e^{-p} + i A_{i-1}) / p. Throws std::domain_error for p <= 0.
double aux_A(int i, double p);

/// B_j(q) = int_{-1}^{1} nu^j e^{-q nu} dnu for any real q. Small |q| uses a
/// termwise-integrated Taylor series (the recurrence divides by q).
double aux_B(int j, double q);

namespace detail {
double aux_B_series(int j, double q);
double aux_B_recurrence(int j, double q);
}  // namespace detail

}  // namespace sturmint::mathcore
