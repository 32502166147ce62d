#pragma once

#include <array>
#include <complex>
#include <vector>

#include "sturmint/basis/basis.hpp"

namespace sturmint::nmr {

enum class Axis { x = 0, y = 1, z = 2 };

/// Coefficients c_{j1 j2} of the expansion
///   (r_nu . r_N delta_ab - r_{nu,a} r_{N,b}) / r_N^3
///     = sum_{j1,j2} c_{j1 j2} [r Y_1^{j1}(r_nu^)] [Y_1^{j2}(r_N^) / r_N^2]
/// where j indexes m = -1, 0, 1 (offset by +1).
using DipoleCoefficients = std::array<std::array<std::complex<double>, 3>, 3>;

DipoleCoefficients cartesian_decomposition(Axis alpha, Axis beta);

/// Expansion of r Y_L^M(r^) chi_{n l}^{m} into shifted orbitals
/// chi_{n+1, lam}^{m+M} with Gaunt coefficients; lam steps by 2 over the
/// parity-allowed triangle range.
struct HarmonicProductTerm {
  double coefficient;
  basis::BasisFunction shifted;  // n+1, lam, m+M; same kind/zeta/center
};
std::vector<HarmonicProductTerm> sto_times_harmonic(
    const basis::BasisFunction& bf, int L, int M);

/// Momentum-space representation of Y_1^j(r^)/r^2 under the symmetric
/// Fourier convention with e^{-i p.r} forward:  -i sqrt(2/pi) Y_1^j(p^)/p.
std::complex<double> operator_ft(int j, const basis::Vec3& p);

/// I = <chi_mu | (r_nu . r_N delta_ab - r_{nu,a} r_{N,b}) / r_N^3 | chi_nu>
/// for the nucleus at center index `nucleus`, by adaptive quadrature in
/// spherical coordinates about N (the radial weight absorbs 1/r_N^2).
double dipole_integral(const basis::BasisFunction& mu,
                       const basis::BasisFunction& nu, int nucleus, Axis alpha,
                       Axis beta, const basis::Molecule& mol,
                       double rel_tol = 1e-7);

}  // namespace sturmint::nmr
