#include "sturmint/mathcore/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace sturmint::mathcore {

namespace {

constexpr int kMaxFactorial = 170;

const std::array<double, kMaxFactorial + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    t[0] = 1.0;
    for (int n = 1; n <= kMaxFactorial; ++n) t[n] = t[n - 1] * n;
    return t;
  }();
  return table;
}

}  // namespace

double factorial(int n) {
  if (n < 0 || n > kMaxFactorial)
    throw std::domain_error("factorial: n out of range");
  return factorial_table()[n];
}

double double_factorial(int n) {
  if (n < -1) throw std::domain_error("double_factorial: n < -1");
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

double pochhammer(double a, int n) {
  if (n < 0) throw std::domain_error("pochhammer: n < 0");
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= a + k;
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double assoc_laguerre(int n, double alpha, double x) {
  if (n < 0) throw std::domain_error("assoc_laguerre: n < 0");
  if (n == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    double lp1 = ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * lm1) / (k + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

double legendre_p(int l, double x) {
  if (l < 0) throw std::domain_error("legendre_p: l < 0");
  if (l == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int k = 1; k < l; ++k) {
    double pp1 = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
    pm1 = p;
    p = pp1;
  }
  return p;
}

double legendre_p(int l, int m, double x) {
  if (m < 0 || m > l) throw std::domain_error("legendre_p: need 0 <= m <= l");
  // P_m^m = (2m-1)!! (1-x^2)^{m/2}, then upward in l.
  double pmm = 1.0;
  if (m > 0) {
    double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double fact = 1.0;
    for (int i = 0; i < m; ++i) {
      pmm *= fact * s;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmmp1;
  double plm = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    plm = ((2.0 * ll - 1.0) * x * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = plm;
  }
  return plm;
}

double theta_lm(int l, int m, double costheta) {
  int am = std::abs(m);
  if (am > l) throw std::domain_error("theta_lm: |m| > l");
  double norm = std::sqrt((2.0 * l + 1.0) / 2.0 * factorial(l - am) /
                          factorial(l + am));
  double v = norm * legendre_p(l, am, costheta);
  // Condon-Shortley sign for positive m; Y_l^{-m} = (-1)^m conj(Y_l^m).
  if (m > 0 && (m % 2)) v = -v;
  return v;
}

std::complex<double> spherical_harmonic(int l, int m, double theta,
                                        double phi) {
  if (std::abs(m) > l) throw std::domain_error("spherical_harmonic: |m| > l");
  static const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * M_PI);
  double th = theta_lm(l, m, std::cos(theta)) * inv_sqrt_2pi;
  return th * std::complex<double>(std::cos(m * phi), std::sin(m * phi));
}

}  // namespace sturmint::mathcore
