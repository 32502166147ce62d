#include "sturmint/poisson/radial.hpp"

#include <cmath>
#include <stdexcept>

#include "sturmint/mathcore/gamma.hpp"
#include "sturmint/mathcore/special.hpp"

namespace sturmint::poisson {

void RadialDensity::validate() const {
  if (n_eff < 1) throw std::domain_error("RadialDensity: n_eff < 1");
  if (!(zeta_eff > 0.0)) throw std::domain_error("RadialDensity: zeta_eff <= 0");
  if (l < 0) throw std::domain_error("RadialDensity: l < 0");
}

double radial_potential(const RadialDensity& g, double r) {
  g.validate();
  if (r < 0.0) throw std::domain_error("radial_potential: r < 0");
  const double z = g.zeta_eff;
  if (r == 0.0) {
    if (g.l > 0) return 0.0;
    // lim_{r->0} Pi_0 = int_0^inf g(t) t dt = n_eff! / z^{n_eff+1}.
    return mathcore::factorial(g.n_eff) / std::pow(z, g.n_eff + 1);
  }
  // Inner: (1/r^{l+1}) int_0^r t^{n_eff+l+1} e^{-z t} dt.
  double a_in = g.n_eff + g.l + 2.0;
  double lower = mathcore::incomplete_gamma(a_in, z * r).lower;
  double inner = lower / std::pow(z, a_in) / std::pow(r, g.l + 1);
  // Outer: r^l int_r^inf t^{n_eff-l} e^{-z t} dt.
  int s = g.n_eff - g.l;
  double outer;
  if (s >= 0) {
    outer = mathcore::incomplete_gamma(s + 1.0, z * r).upper / std::pow(z, s + 1.0);
  } else {
    // int_r^inf t^{-k} e^{-zt} dt = r^{1-k} E_k(z r), k = -s.
    outer = std::pow(r, s + 1.0) * mathcore::expint_en(-s, z * r);
  }
  outer *= std::pow(r, g.l);
  return inner + outer;
}

}  // namespace sturmint::poisson
