#pragma once

#include <array>

#include "sturmint/basis/basis.hpp"
#include "sturmint/poisson/radial.hpp"

namespace sturmint::poisson {

/// (ab|cd) with all four orbitals on one center (any l), assembled from
/// radial potentials and Gaunt couplings. Physical value; no table
/// conventions applied.
double eri_one_center(const basis::BasisFunction& a,
                      const basis::BasisFunction& b,
                      const basis::BasisFunction& c,
                      const basis::BasisFunction& d,
                      const basis::Molecule& mol);

/// (ab|cd) for orbitals spanning exactly two centers. Coulomb patterns
/// (pair 1 on A, pair 2 on B) use the closed potential-term route; all other
/// s-type patterns (exchange, hybrid) use the prolate-frame Legendre
/// expansion with A/B-type auxiliaries. l > 0 exchange is unsupported here
/// (the resolution route covers it).
double eri_two_center(const basis::BasisFunction& a,
                      const basis::BasisFunction& b,
                      const basis::BasisFunction& c,
                      const basis::BasisFunction& d,
                      const basis::Molecule& mol);

/// Dispatches on the center pattern of (ab|cd); supports 1 and 2 centers.
double eri_exact(const basis::BasisFunction& a, const basis::BasisFunction& b,
                 const basis::BasisFunction& c, const basis::BasisFunction& d,
                 const basis::Molecule& mol);

/// Electrostatic potential of the (possibly two-center) s-type distribution
/// chi_a(r) chi_b(r) at an arbitrary cartesian point, via the same Legendre
/// expansion. Used by the per-integral fallback route and as an oracle.
double pair_potential(const basis::BasisFunction& a,
                      const basis::BasisFunction& b,
                      const basis::Molecule& mol, const basis::Vec3& point);

/// Per-integral quadrature fallback for arbitrary center patterns of s-type
/// orbitals: 3D adaptive integration of pair_potential(a,b) against the
/// (c,d) density. abs_tol is an absolute target on the integral.
double eri_quadrature(const basis::BasisFunction& a,
                      const basis::BasisFunction& b,
                      const basis::BasisFunction& c,
                      const basis::BasisFunction& d,
                      const basis::Molecule& mol, double abs_tol = 1e-6);

}  // namespace sturmint::poisson
