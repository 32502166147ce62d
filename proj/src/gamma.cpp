#include "sturmint/mathcore/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace sturmint::mathcore {

namespace {

// Regularized series for the lower function, x < a + 1.
double lower_series(double a, double x) {
  long double sum = 1.0L / a;
  long double term = sum;
  for (int k = 1; k < 500; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs((double)term) < 1e-18 * std::abs((double)sum)) break;
  }
  return (double)(sum * std::exp(-x + a * std::log(x)));
}

// Continued fraction (modified Lentz) for the upper function, x >= a + 1.
double upper_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x)) * h;
}

}  // namespace

IncompleteGamma incomplete_gamma(double a, double x) {
  if (a <= 0.0) throw std::domain_error("incomplete_gamma: a <= 0");
  if (x < 0.0) throw std::domain_error("incomplete_gamma: x < 0");
  double g = std::tgamma(a);
  if (x == 0.0) return {0.0, g};
  if (x < a + 1.0) {
    double lo = lower_series(a, x);
    return {lo, g - lo};
  }
  double up = upper_cf(a, x);
  return {g - up, up};
}

double gamma_upper_general(double a, double x) {
  if (x <= 0.0) throw std::domain_error("gamma_upper_general: x <= 0");
  if (a > 0.0) return incomplete_gamma(a, x).upper;
  // Downward recurrence: Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a.
  int steps = (int)std::ceil(1.0 - a);
  double a_top = a + steps;
  double g = incomplete_gamma(a_top, x).upper;
  for (int k = steps - 1; k >= 0; --k) {
    double ak = a + k;
    g = (g - std::pow(x, ak) * std::exp(-x)) / ak;
  }
  return g;
}

double expint_e1(double x) {
  if (x <= 0.0) throw std::domain_error("expint_e1: x <= 0");
  return -std::expint(-x);
}

double expint_en(int n, double x) {
  if (n < 1) throw std::domain_error("expint_en: n < 1");
  if (x <= 0.0) throw std::domain_error("expint_en: x <= 0");
  double e = expint_e1(x);
  for (int k = 1; k < n; ++k) e = (std::exp(-x) - x * e) / k;
  return e;
}

}  // namespace sturmint::mathcore
