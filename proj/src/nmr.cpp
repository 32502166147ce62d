#include "sturmint/nmr/nmr.hpp"

#include <cmath>
#include <stdexcept>

#include "sturmint/mathcore/gaunt.hpp"
#include "sturmint/mathcore/quadrature.hpp"
#include "sturmint/mathcore/special.hpp"

namespace sturmint::nmr {

using basis::BasisFunction;
using basis::Molecule;
using basis::Vec3;

namespace {

// r_i = r * sum_j U[i][j] Y_1^j(r^), cartesian i = x, y, z; j offset by +1.
std::array<std::array<std::complex<double>, 3>, 3> cartesian_to_y1() {
  const double s23 = std::sqrt(2.0 * M_PI / 3.0);
  const double s43 = std::sqrt(4.0 * M_PI / 3.0);
  std::array<std::array<std::complex<double>, 3>, 3> U{};
  U[0][0] = s23;
  U[0][2] = -s23;
  U[1][0] = std::complex<double>(0.0, s23);
  U[1][2] = std::complex<double>(0.0, s23);
  U[2][1] = s43;
  return U;
}

}  // namespace

DipoleCoefficients cartesian_decomposition(Axis alpha, Axis beta) {
  auto U = cartesian_to_y1();
  int ia = (int)alpha, ib = (int)beta;
  DipoleCoefficients c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double w = ((ia == ib && i == j) ? 1.0 : 0.0) -
                 ((i == ia && j == ib) ? 1.0 : 0.0);
      if (w == 0.0) continue;
      for (int j1 = 0; j1 < 3; ++j1)
        for (int j2 = 0; j2 < 3; ++j2) c[j1][j2] += w * U[i][j1] * U[j][j2];
    }
  return c;
}

std::vector<HarmonicProductTerm> sto_times_harmonic(const BasisFunction& bf,
                                                    int L, int M) {
  if (std::abs(M) > L) throw std::domain_error("sto_times_harmonic: |M| > L");
  std::vector<HarmonicProductTerm> out;
  int mm = bf.m + M;
  for (int lam = std::abs(bf.l - L); lam <= bf.l + L; lam += 2) {
    if (std::abs(mm) > lam) continue;
    double g = mathcore::gaunt({lam, mm, L, M, bf.l, bf.m});
    if (g == 0.0) continue;
    BasisFunction shifted = bf;
    shifted.n = bf.n + 1;
    shifted.l = lam;
    shifted.m = mm;
    out.push_back({g, shifted});
  }
  return out;
}

std::complex<double> operator_ft(int j, const Vec3& p) {
  if (j < -1 || j > 1) throw std::domain_error("operator_ft: j not in {-1,0,1}");
  double pn = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  if (pn == 0.0) throw std::domain_error("operator_ft: p = 0 is singular");
  double theta = std::acos(std::clamp(p[2] / pn, -1.0, 1.0));
  double phi = std::atan2(p[1], p[0]);
  return std::complex<double>(0.0, -1.0) * std::sqrt(2.0 / M_PI) *
         mathcore::spherical_harmonic(1, j, theta, phi) / pn;
}

namespace {

std::complex<double> dipole_integral_complex(const BasisFunction& mu,
                                             const BasisFunction& nu,
                                             int nucleus, Axis alpha,
                                             Axis beta, const Molecule& mol,
                                             double rel_tol) {
  auto coeffs = cartesian_decomposition(alpha, beta);
  const Vec3& N = mol.centers[nucleus].position;

  // nu-side expansions r_nu Y_1^{j1} chi_nu for j1 = -1, 0, 1
  std::array<std::vector<HarmonicProductTerm>, 3> nu_terms;
  for (int j1 = 0; j1 < 3; ++j1)
    nu_terms[j1] = sto_times_harmonic(nu, 1, j1 - 1);

  std::complex<double> total = 0.0;
  for (int j2 = 0; j2 < 3; ++j2) {
    bool any = false;
    for (int j1 = 0; j1 < 3; ++j1)
      if (coeffs[j1][j2] != std::complex<double>(0.0, 0.0) &&
          !nu_terms[j1].empty())
        any = true;
    if (!any) continue;

    auto point_value = [&](double r, double theta, double phi) {
      double st = std::sin(theta);
      Vec3 pt{N[0] + r * st * std::cos(phi), N[1] + r * st * std::sin(phi),
              N[2] + r * std::cos(theta)};
      std::complex<double> left = std::conj(basis::evaluate(mu, mol, pt));
      if (left == std::complex<double>(0.0, 0.0))
        return std::complex<double>(0.0, 0.0);
      std::complex<double> right = 0.0;
      for (int j1 = 0; j1 < 3; ++j1) {
        if (coeffs[j1][j2] == std::complex<double>(0.0, 0.0)) continue;
        for (const auto& t : nu_terms[j1])
          right += coeffs[j1][j2] * t.coefficient *
                   basis::evaluate(t.shifted, mol, pt);
      }
      // Y_1^{j2}(s^) with s = pt - N; the 1/r_N^2 cancels against r^2 dr.
      std::complex<double> y =
          mathcore::spherical_harmonic(1, j2 - 1, theta, phi);
      return left * right * y;
    };

    mathcore::QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    spec.abs_tol = 1e-12;
    spec.b = 1.0 + 2.0 / (mu.zeta + nu.zeta);
    auto re = mathcore::integrate_spherical3d(
        [&](double r, double t, double p) { return point_value(r, t, p).real(); },
        spec);
    auto im = mathcore::integrate_spherical3d(
        [&](double r, double t, double p) { return point_value(r, t, p).imag(); },
        spec);
    if (!re.converged || !im.converged)
      throw std::runtime_error("dipole_integral: quadrature not converged "
                               "for operator term j = " + std::to_string(j2 - 1));
    total += std::complex<double>(re.value, im.value);
  }
  return total;
}

}  // namespace

double dipole_integral(const BasisFunction& mu, const BasisFunction& nu,
                       int nucleus, Axis alpha, Axis beta, const Molecule& mol,
                       double rel_tol) {
  if (nucleus < 0 || nucleus >= (int)mol.centers.size())
    throw std::invalid_argument("dipole_integral: bad nucleus index");
  return dipole_integral_complex(mu, nu, nucleus, alpha, beta, mol, rel_tol)
      .real();
}

}  // namespace sturmint::nmr
