#pragma once

#include <complex>

namespace sturmint::mathcore {

/// n! as a double; valid up to n = 170.
double factorial(int n);

/// n!! with the conventions (-1)!! = 0!! = 1.
double double_factorial(int n);

/// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1.
double pochhammer(double a, int n);

/// Binomial coefficient as a double.
double binomial(int n, int k);

/// Associated Laguerre polynomial L_n^alpha(x) by the three-term recurrence.
/// Throws std::domain_error for n < 0.
double assoc_laguerre(int n, double alpha, double x);

/// Legendre polynomial P_l(x).
double legendre_p(int l, double x);

/// Associated Legendre P_l^m(x) for m >= 0, without the Condon-Shortley
/// phase. |x| <= 1.
double legendre_p(int l, int m, double x);

/// Complex spherical harmonic Y_l^m(theta, phi) with the Condon-Shortley
/// phase convention: Y_l^{-m} = (-1)^m conj(Y_l^m).
/// Throws std::domain_error when |m| > l.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

/// Theta part of Y_l^m as a function of cos(theta), normalized so that
/// Y_l^m = theta_lm(l, m, cos t) * e^{i m phi} / sqrt(2 pi). Includes the
/// Condon-Shortley sign.
double theta_lm(int l, int m, double costheta);

}  // namespace sturmint::mathcore
