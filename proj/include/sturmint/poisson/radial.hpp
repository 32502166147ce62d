#pragma once

namespace sturmint::poisson {

/// Radial factor g(r) = r^{n_eff - 1} e^{-zeta_eff r} of an orbital-product
/// density, with the multipole order l of the channel it feeds. For a
/// product of two STO radial factors the exponents add and the powers add
/// minus one: n_eff = n1 + n2 - 1, zeta_eff = z1 + z2.
struct RadialDensity {
  int n_eff = 1;
  double zeta_eff = 1.0;  // bohr^-1
  int l = 0;

  void validate() const;
};

/// Spectral-form potential Pi_l(g)(r) = r^2 F(r) with
/// F(r) = int_0^1 g(ru) u^{l+2} du + int_1^inf g(ru) u^{1-l} du,
/// in closed form through incomplete gamma functions. r = 0 returns the
/// finite limit for l = 0 and 0 for l > 0; r < 0 throws.
double radial_potential(const RadialDensity& g, double r);

}  // namespace sturmint::poisson
