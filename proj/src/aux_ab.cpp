#include "sturmint/mathcore/aux_ab.hpp"

#include <cmath>
#include <stdexcept>

namespace sturmint::mathcore {

double aux_A(int i, double p) {
  if (i < 0) throw std::domain_error("aux_A: i < 0");
  if (p <= 0.0) throw std::domain_error("aux_A: p <= 0 (integral diverges)");
  double ep = std::exp(-p);
  double a = ep / p;
  for (int k = 1; k <= i; ++k) a = (ep + k * a) / p;
  return a;
}

namespace detail {

double aux_B_series(int j, double q) {
  // B_j(q) = sum_k (-q)^k/k! * int nu^{j+k} dnu; odd j+k terms vanish.
  // Evaluated at -|q| (all surviving terms positive) and reflected through
  // B_j(q) = (-1)^j B_j(-q), so the sum never cancels.
  long double s = std::abs(q);
  long double sum = 0.0L;
  long double qpow = 1.0L;  // s^k / k!
  for (int k = 0; k < 300; ++k) {
    if ((j + k) % 2 == 0) {
      long double term = qpow * 2.0L / (j + k + 1);
      sum += term;
      if (term < 1e-18L * sum && k > (int)s) break;
    }
    qpow *= s / (k + 1);
  }
  if (q > 0.0 && (j % 2)) sum = -sum;
  return (double)sum;
}

double aux_B_recurrence(int j, double q) {
  double eq = std::exp(q);
  double emq = std::exp(-q);
  if (std::abs(q) >= j) {
    // upward, stable when |q| dominates the index
    double b = (eq - emq) / q;  // B_0
    for (int k = 1; k <= j; ++k) {
      double sign = (k % 2) ? -1.0 : 1.0;
      b = (sign * eq - emq + k * b) / q;
    }
    return b;
  }
  // downward from a high start index; the start error contracts by |q|/k
  // per step and nothing divides by q
  int top = j + 24 + (int)std::abs(q);
  double b = 0.0;
  for (int k = top; k > j; --k) {
    double sign = (k % 2) ? -1.0 : 1.0;
    b = (q * b - sign * eq + emq) / k;
  }
  return b;
}

}  // namespace detail

double aux_B(int j, double q) {
  if (j < 0) throw std::domain_error("aux_B: j < 0");
  if (std::abs(q) < 0.1) return detail::aux_B_series(j, q);
  return detail::aux_B_recurrence(j, q);
}

}  // namespace sturmint::mathcore
