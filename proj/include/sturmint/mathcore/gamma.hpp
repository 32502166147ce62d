#pragma once

#include <utility>

namespace sturmint::mathcore {

struct IncompleteGamma {
  double lower;  // gamma(a, x)
  double upper;  // Gamma(a, x)
};

/// Lower and upper incomplete gamma functions for a > 0, x >= 0.
/// lower + upper == tgamma(a) by construction.
IncompleteGamma incomplete_gamma(double a, double x);

/// Upper incomplete Gamma(a, x) for any real a (including a <= 0), x > 0.
double gamma_upper_general(double a, double x);

/// Exponential integral E_1(x) = int_x^inf e^{-t}/t dt, x > 0.
double expint_e1(double x);

/// Generalized exponential integral E_n(x), n >= 1, x > 0.
double expint_en(int n, double x);

}  // namespace sturmint::mathcore
