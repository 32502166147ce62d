#include "sturmint/basis/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sturmint/mathcore/special.hpp"

namespace sturmint::basis {

using mathcore::assoc_laguerre;
using mathcore::double_factorial;
using mathcore::factorial;
using mathcore::pochhammer;

int BasisFunction::laguerre_degree() const {
  switch (kind) {
    case BasisKind::STO:
      return 0;
    case BasisKind::Sturmian:
      return n - l - 1;
    case BasisKind::GeneralizedETO:
      return n - l - 1 - alpha;
  }
  return 0;
}

int BasisFunction::laguerre_order() const {
  switch (kind) {
    case BasisKind::STO:
      return 0;
    case BasisKind::Sturmian:
      return 2 * l + 1;
    case BasisKind::GeneralizedETO:
      return 2 * l + 2 - alpha;
  }
  return 0;
}

void BasisFunction::validate(int n_centers) const {
  if (n < 1) throw std::invalid_argument("basis function: n < 1");
  if (l < 0 || l > n - 1)
    throw std::invalid_argument("basis function: need 0 <= l <= n-1");
  if (std::abs(m) > l) throw std::invalid_argument("basis function: |m| > l");
  if (!(zeta > 0.0)) throw std::invalid_argument("basis function: zeta <= 0");
  if (center_index < 0 || center_index >= n_centers)
    throw std::invalid_argument("basis function: bad center index");
  if (kind == BasisKind::GeneralizedETO) {
    if (alpha > 1)
      throw std::invalid_argument("basis function: alpha > 1 unsupported");
    if (laguerre_degree() < 0)
      throw std::invalid_argument(
          "basis function: n - l - 1 - alpha must be >= 0");
  }
}

void Molecule::validate() const {
  if (centers.size() != nuclear_charges.size())
    throw std::invalid_argument("molecule: centers/charges size mismatch");
  for (double z : nuclear_charges)
    if (!(z > 0.0)) throw std::invalid_argument("molecule: charge <= 0");
  for (const auto& c : centers)
    for (double x : c.position)
      if (!std::isfinite(x))
        throw std::invalid_argument("molecule: non-finite coordinate");
  if (basis.empty()) throw std::invalid_argument("molecule: empty basis");
  for (const auto& bf : basis) bf.validate((int)centers.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (basis[i] == basis[j])
        throw std::invalid_argument("molecule: duplicate basis entry " +
                                    std::to_string(j + 1));
}

int Molecule::n_electrons() const {
  double z = 0.0;
  for (double q : nuclear_charges) z += q;
  return (int)std::lround(z);
}

double Molecule::nuclear_repulsion() const {
  double e = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        double d = centers[i].position[k] - centers[j].position[k];
        d2 += d * d;
      }
      e += nuclear_charges[i] * nuclear_charges[j] / std::sqrt(d2);
    }
  return e;
}

double normalization(const BasisFunction& bf) {
  if (bf.kind == BasisKind::STO) {
    // L2 norm of r^{n-1} e^{-zeta r}.
    return std::pow(2.0 * bf.zeta, bf.n + 0.5) / std::sqrt(factorial(2 * bf.n));
  }
  // Radial form N x^l e^{-x/2} L_q^p(x), x = 2 zeta r, normalized under the
  // weight r^{-alpha_w} with alpha_w = 1 (Sturmian) or alpha (generalized):
  //   int R^2 r^{2-alpha_w} dr = N^2 (2 zeta)^{alpha_w-3} q! ... = 1.
  int q = bf.laguerre_degree();
  int p = bf.laguerre_order();
  int aw = (bf.kind == BasisKind::Sturmian) ? 1 : bf.alpha;
  double norm = std::pow(2.0 * bf.zeta, 0.5 * (3.0 - aw)) *
                std::sqrt(factorial(q) / std::tgamma(p + q + 1.0));
  if (bf.kind == BasisKind::GeneralizedETO && (bf.alpha % 2 != 0)) norm = -norm;
  return norm;
}

double radial_value(const BasisFunction& bf, double r) {
  double N = normalization(bf);
  if (bf.kind == BasisKind::STO)
    return N * std::pow(r, bf.n - 1) * std::exp(-bf.zeta * r);
  double x = 2.0 * bf.zeta * r;
  return N * std::pow(x, bf.l) * std::exp(-0.5 * x) *
         assoc_laguerre(bf.laguerre_degree(), bf.laguerre_order(), x);
}

double radial_derivative(const BasisFunction& bf, double r) {
  double N = normalization(bf);
  double z = bf.zeta;
  if (bf.kind == BasisKind::STO) {
    double f = std::exp(-z * r);
    if (bf.n == 1) return -z * N * f;
    return N * f * std::pow(r, bf.n - 2) * ((bf.n - 1) - z * r);
  }
  // d/dr [x^l e^{-x/2} L_q^p(x)] with dL_q^p/dx = -L_{q-1}^{p+1}.
  double x = 2.0 * z * r;
  int q = bf.laguerre_degree();
  int p = bf.laguerre_order();
  double L = assoc_laguerre(q, p, x);
  double dL = (q >= 1) ? -assoc_laguerre(q - 1, p + 1, x) : 0.0;
  double xl = std::pow(x, bf.l);
  double e = std::exp(-0.5 * x);
  double dfdx = e * (xl * (dL - 0.5 * L) +
                     (bf.l > 0 ? bf.l * std::pow(x, bf.l - 1) * L : 0.0));
  return N * dfdx * 2.0 * z;
}

std::complex<double> evaluate(const BasisFunction& bf, const Molecule& mol,
                              const Vec3& point) {
  const Vec3& c = mol.centers[bf.center_index].position;
  double dx = point[0] - c[0], dy = point[1] - c[1], dz = point[2] - c[2];
  double r = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (r == 0.0) {
    if (bf.l > 0) return 0.0;
    return radial_value(bf, 0.0) * mathcore::spherical_harmonic(0, 0, 0.0, 0.0);
  }
  double theta = std::acos(std::clamp(dz / r, -1.0, 1.0));
  double phi = std::atan2(dy, dx);
  return radial_value(bf, r) *
         mathcore::spherical_harmonic(bf.l, bf.m, theta, phi);
}

BFunctionExpansion sturmian_to_bfunctions(int n, int l) {
  if (n < 1 || l < 0 || l > n - 1)
    throw std::invalid_argument("sturmian_to_bfunctions: bad (n, l)");
  BFunctionExpansion ex;
  ex.n = n;
  ex.l = l;
  double pref = std::pow(2.0, 2 * l + 1) / double_factorial(2 * l + 1);
  for (int t = 0; t <= n - l - 1; ++t) {
    double c = pref * pochhammer(-n + l + 1, t) * pochhammer(n + l + 1, t) /
               (factorial(t) * pochhammer(l + 1.5, t));
    ex.terms.push_back({c, t});
  }
  return ex;
}

}  // namespace sturmint::basis
