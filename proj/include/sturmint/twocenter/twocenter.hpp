#pragma once

#include <complex>
#include <vector>

#include "sturmint/basis/basis.hpp"

namespace sturmint::twocenter {

/// Scaled two-center frame: alpha = k1 R, beta = k2 R.
struct ProlateFrame {
  double R;      // bohr
  double alpha;  // k1 * R
  double beta;   // k2 * R

  ProlateFrame(double R_, double k1, double k2);
  double p() const { return 0.5 * (alpha + beta); }
  double q() const { return 0.5 * (alpha - beta); }
};

/// Core overlap expansion s = D * sum_ij Y_ij A_i(p) B_j(q).
/// Y entries are integers by construction; D carries the angular constants.
struct OverlapExpansion {
  double D = 0.0;
  struct Term {
    int i;
    int j;
    long long Y;
  };
  std::vector<Term> terms;

  bool empty() const { return terms.empty(); }
};

/// Integer expansion of (mu+nu)^n1 (mu-nu)^n2 T(mu,nu) into powers
/// mu^i nu^j, where T is the product of the two normalized associated
/// Legendre factors in prolate variables. Requires n1 >= l1, n2 >= l2,
/// m >= 0. A quantum-number combination with m > min(l1, l2) yields an
/// empty expansion.
OverlapExpansion binomial_matrix(int n1, int l1, int n2, int l2, int m);

/// Core integral s(n1 l1 m, n2 l2, p, q) evaluated from the expansion.
double core_s(const OverlapExpansion& e, double p, double q);

/// Two-center integral over unnormalized STO radial factors
/// r_a^{n1-1} e^{-z1 r_a} and r_b^{n2-1} e^{-z2 r_b} sharing m, including
/// the full volume element and the angular normalization of both Y factors.
/// Valid for n1 >= l1, n2 >= l2 (shifted powers from operator reductions).
double raw_two_center(int n1, int l1, int n2, int l2, int m, double z1,
                      double z2, double R);

/// Wigner rotation coefficients: Y_l^m(x) = sum_k c[k+l] Y_l^k(x') where x'
/// are the coordinates of x in the frame whose z axis points along
/// (thetaR, phiR).
std::vector<std::complex<double>> harmonic_frame_coeffs(int l, int m,
                                                        double thetaR,
                                                        double phiR);

/// <chi1 | chi2> for STO basis functions. Same-center pairs use the radial
/// closed form. Throws std::invalid_argument for non-STO kinds.
double overlap(const basis::BasisFunction& b1, const basis::BasisFunction& b2,
               const basis::Molecule& mol);

/// <chi1 | -1/2 nabla^2 | chi2> via reduction of the Laplacian on an STO to
/// STOs with shifted n.
double kinetic(const basis::BasisFunction& b1, const basis::BasisFunction& b2,
               const basis::Molecule& mol);

/// <chi1 | 1/r_C | chi2> for the nucleus at center index `nucleus`.
/// One- and two-center arrangements are closed form; a third center falls
/// back to adaptive quadrature in spherical coordinates about C.
double nuclear_attraction(const basis::BasisFunction& b1,
                          const basis::BasisFunction& b2, int nucleus,
                          const basis::Molecule& mol);

}  // namespace sturmint::twocenter
