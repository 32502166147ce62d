#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace sturmint::basis {

using Vec3 = std::array<double, 3>;

struct Center {
  std::string label;
  Vec3 position{0.0, 0.0, 0.0};  // bohr
};

enum class BasisKind { STO, Sturmian, GeneralizedETO };

/// One exponential-type orbital. `zeta` is the Slater exponent for STOs and
/// the screening parameter beta for Sturmians. `alpha` applies to
/// GeneralizedETO only and is restricted to integers <= 1 so that the
/// Laguerre degree n - l - 1 - alpha stays a non-negative integer
/// (alpha = 0 gives Shull-Loewdin functions).
struct BasisFunction {
  BasisKind kind = BasisKind::STO;
  int n = 1;
  int l = 0;
  int m = 0;
  double zeta = 1.0;  // bohr^-1
  int alpha = 0;
  int center_index = 0;

  /// Degree and order of the Laguerre factor (Sturmian / GeneralizedETO).
  int laguerre_degree() const;
  int laguerre_order() const;

  void validate(int n_centers) const;
  bool operator==(const BasisFunction&) const = default;
};

struct Molecule {
  std::vector<Center> centers;
  std::vector<double> nuclear_charges;  // a.u.
  std::vector<BasisFunction> basis;

  void validate() const;
  int n_electrons() const;  // = total nuclear charge, rounded
  double nuclear_repulsion() const;
};

/// Expansion of a Sturmian radial function into B-functions B_{t+1,l}.
/// Coefficients exclude the overall (2 beta)^{3/2} scale, which depends on
/// the exponent; they carry the 2^{2l+1}/(2l+1)!! prefactor and the
/// Pochhammer ratio of each term.
struct BFunctionExpansion {
  int n = 1;
  int l = 0;
  struct Term {
    double coefficient;
    int t;
  };
  std::vector<Term> terms;
};

/// Normalization constant of the radial factor.
/// STO: L2 norm, <chi|chi> = 1.
/// Sturmian: 1/r-weighted norm, int |S|^2 (1/r) d3r = 1.
/// GeneralizedETO(alpha): r^{-alpha}-weighted norm, with the sign (-1)^alpha.
double normalization(const BasisFunction& bf);

/// Pointwise value at a cartesian point (bohr), with the orbital's center
/// taken from `mol`.
std::complex<double> evaluate(const BasisFunction& bf, const Molecule& mol,
                              const Vec3& point);

/// Radial factor R(r) such that chi = R(r) Y_l^m; includes normalization.
double radial_value(const BasisFunction& bf, double r);

/// d/dr of the radial factor.
double radial_derivative(const BasisFunction& bf, double r);

BFunctionExpansion sturmian_to_bfunctions(int n, int l);

}  // namespace sturmint::basis
