#include "sturmint/mathcore/gaunt.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "sturmint/mathcore/quadrature.hpp"
#include "sturmint/mathcore/special.hpp"

namespace sturmint::mathcore {

namespace {

bool selection_ok(const GauntKey& k) {
  if (k.mu != k.m1 - k.M) return false;
  if (k.lam < std::abs(k.l1 - k.L) || k.lam > k.l1 + k.L) return false;
  if ((k.l1 + k.L + k.lam) % 2 != 0) return false;
  return true;
}

void check_key(const GauntKey& k) {
  if (k.l1 < 0 || k.L < 0 || k.lam < 0 || std::abs(k.m1) > k.l1 ||
      std::abs(k.M) > k.L || std::abs(k.mu) > k.lam)
    throw std::domain_error("gaunt: invalid quantum numbers");
}

struct KeyHash {
  std::size_t operator()(const GauntKey& k) const {
    std::size_t h = 0;
    for (int v : {k.l1, k.m1, k.L, k.M, k.lam, k.mu})
      h = h * 131 + (std::size_t)(v + 64);
    return h;
  }
};

double gaunt_by_quadrature(const GauntKey& k) {
  // Real part of the triple product; the imaginary part vanishes by the
  // phi selection rule already enforced.
  QuadratureSpec spec;
  spec.rel_tol = 1e-11;
  spec.abs_tol = 1e-13;
  QuadratureSpec inner = spec;
  inner.rel_tol = 1e-12;
  inner.abs_tol = 1e-14;
  auto res = integrate(
      [&](double theta) {
        double t1 = theta_lm(k.l1, k.m1, std::cos(theta));
        double t2 = theta_lm(k.L, k.M, std::cos(theta));
        double t3 = theta_lm(k.lam, k.mu, std::cos(theta));
        auto phi_part = integrate(
            [&](double phi) {
              return std::cos((-k.m1 + k.M + k.mu) * phi);
            },
            0.0, 2.0 * M_PI, inner);
        return t1 * t2 * t3 * std::sin(theta) * phi_part.value /
               (2.0 * M_PI * std::sqrt(2.0 * M_PI));
      },
      0.0, M_PI, spec);
  return res.value;
}

}  // namespace

double gaunt(const GauntKey& key) {
  check_key(key);
  if (!selection_ok(key)) return 0.0;
  static std::unordered_map<GauntKey, double, KeyHash> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  double v = gaunt_by_quadrature(key);
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, v);
  return v;
}

double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (m1 + m2 + m3 != 0) return 0.0;
  if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
  double pref = std::sqrt(
      factorial(j1 + j2 - j3) * factorial(j1 - j2 + j3) *
      factorial(-j1 + j2 + j3) / factorial(j1 + j2 + j3 + 1) *
      factorial(j1 + m1) * factorial(j1 - m1) * factorial(j2 + m2) *
      factorial(j2 - m2) * factorial(j3 + m3) * factorial(j3 - m3));
  int kmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
  int kmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    double den = factorial(k) * factorial(j1 + j2 - j3 - k) *
                 factorial(j1 - m1 - k) * factorial(j2 + m2 - k) *
                 factorial(j3 - j2 + m1 + k) * factorial(j3 - j1 - m2 + k);
    sum += ((k % 2) ? -1.0 : 1.0) / den;
  }
  double phase = ((j1 - j2 - m3) % 2) ? -1.0 : 1.0;
  return phase * pref * sum;
}

double gaunt_3j(const GauntKey& k) {
  check_key(k);
  if (!selection_ok(k)) return 0.0;
  double pref = std::sqrt((2.0 * k.l1 + 1.0) * (2.0 * k.L + 1.0) *
                          (2.0 * k.lam + 1.0) / (4.0 * M_PI));
  double phase = (k.m1 % 2) ? -1.0 : 1.0;
  return phase * pref * wigner_3j(k.l1, k.L, k.lam, 0, 0, 0) *
         wigner_3j(k.l1, k.L, k.lam, -k.m1, k.M, k.mu);
}

}  // namespace sturmint::mathcore
