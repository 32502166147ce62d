#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "sturmint/basis/basis.hpp"
#include "sturmint/mathcore/quadrature.hpp"
#include "sturmint/mathcore/special.hpp"
#include "sturmint/twocenter/twocenter.hpp"

using namespace sturmint;
using basis::BasisFunction;
using basis::BasisKind;
using basis::Molecule;

namespace {

Molecule diatomic(double R) {
  Molecule mol;
  mol.centers.push_back({"Ha", {0.0, 0.0, 0.0}});
  mol.centers.push_back({"Hb", {0.0, 0.0, R}});
  mol.nuclear_charges = {1.0, 1.0};
  return mol;
}

BasisFunction sto(int n, int l, int m, double zeta, int center = 0) {
  BasisFunction bf;
  bf.kind = BasisKind::STO;
  bf.n = n;
  bf.l = l;
  bf.m = m;
  bf.zeta = zeta;
  bf.center_index = center;
  return bf;
}

// Independent oracle: 2D prolate quadrature of the overlap integrand for a
// bond along z and m1 = m2 = m.
double overlap_quadrature(const BasisFunction& a, const BasisFunction& b,
                          double R) {
  mathcore::QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-14;
  auto res = mathcore::integrate_prolate2d(
      [&](double mu, double nu) {
        double ra = 0.5 * R * (mu + nu);
        double rb = 0.5 * R * (mu - nu);
        double cta = (ra > 0) ? (1.0 + mu * nu) / (mu + nu) : 1.0;
        double ctb = (rb > 0) ? (mu * nu - 1.0) / (mu - nu) : 1.0;
        return (mu * mu - nu * nu) * basis::radial_value(a, ra) *
               basis::radial_value(b, rb) *
               mathcore::theta_lm(a.l, a.m, cta) *
               mathcore::theta_lm(b.l, b.m, ctb);
      },
      spec);
  REQUIRE(res.converged);
  return std::pow(0.5 * R, 3) * res.value;
}

}  // namespace

TEST_CASE("binomial matrix basic structure") {
  auto e = twocenter::binomial_matrix(1, 0, 1, 0, 0);
  // (mu+nu)(mu-nu) = mu^2 - nu^2, angular constant 1/2
  REQUIRE(e.terms.size() == 2);
  CHECK(e.D == doctest::Approx(0.5).epsilon(1e-14));
  bool found_mu2 = false, found_nu2 = false;
  for (const auto& t : e.terms) {
    if (t.i == 2 && t.j == 0 && t.Y == 1) found_mu2 = true;
    if (t.i == 0 && t.j == 2 && t.Y == -1) found_nu2 = true;
  }
  CHECK(found_mu2);
  CHECK(found_nu2);

  // m beyond either l gives the empty expansion
  CHECK(twocenter::binomial_matrix(2, 1, 1, 0, 1).empty());
}

TEST_CASE("wigner frame coefficients reproduce rotated harmonics") {
  // Y_l^m(x) = sum_k c_k Y_l^k(x'), x' in the frame with z along
  // (thetaR, phiR).
  double thetaR = 0.77, phiR = -1.31;
  double ct = std::cos(thetaR), st = std::sin(thetaR);
  double cp = std::cos(phiR), sp = std::sin(phiR);
  // frame axes (columns of Rz(phiR) Ry(thetaR))
  double ex[3] = {ct * cp, ct * sp, -st};
  double ey[3] = {-sp, cp, 0.0};
  double ez[3] = {st * cp, st * sp, ct};
  for (int l = 0; l <= 3; ++l)
    for (int m = -l; m <= l; ++m) {
      auto c = twocenter::harmonic_frame_coeffs(l, m, thetaR, phiR);
      for (double t : {0.4, 1.7}) {
        for (double p : {0.9, 2.9, -2.0}) {
          double x[3] = {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p),
                         std::cos(t)};
          double xp[3] = {x[0] * ex[0] + x[1] * ex[1] + x[2] * ex[2],
                          x[0] * ey[0] + x[1] * ey[1] + x[2] * ey[2],
                          x[0] * ez[0] + x[1] * ez[1] + x[2] * ez[2]};
          double tp = std::acos(std::clamp(xp[2], -1.0, 1.0));
          double pp = std::atan2(xp[1], xp[0]);
          std::complex<double> lhs = mathcore::spherical_harmonic(l, m, t, p);
          std::complex<double> rhs = 0.0;
          for (int k = -l; k <= l; ++k)
            rhs += c[k + l] * mathcore::spherical_harmonic(l, k, tp, pp);
          CHECK(std::abs(lhs - rhs) < 1e-12);
        }
      }
    }
}

TEST_CASE("overlap closed forms") {
  auto mol = diatomic(1.402);
  // identical 1s on one center
  auto a = sto(1, 0, 0, 1.0, 0);
  CHECK(twocenter::overlap(a, a, mol) == doctest::Approx(1.0).epsilon(1e-14));

  // 1s-1s equal zeta: e^{-rho}(1 + rho + rho^2/3)
  auto b = sto(1, 0, 0, 1.0, 1);
  double rho = 1.402;
  double closed = std::exp(-rho) * (1.0 + rho + rho * rho / 3.0);
  CHECK(twocenter::overlap(a, b, mol) == doctest::Approx(closed).epsilon(1e-13));

  // heteronuclear 1s-2s against the quadrature oracle
  auto c = sto(1, 0, 0, 1.042999, 0);
  auto d = sto(2, 0, 0, 1.784059, 1);
  CHECK(twocenter::overlap(c, d, mol) ==
        doctest::Approx(overlap_quadrature(c, d, 1.402)).epsilon(1e-11));

  // non-STO kinds are rejected
  BasisFunction st = c;
  st.kind = BasisKind::Sturmian;
  CHECK_THROWS_AS(twocenter::overlap(st, d, mol), std::invalid_argument);
}

TEST_CASE("overlap expansion vs 2D quadrature over the (n,l) grid") {
  struct Q {
    int n, l;
  };
  std::vector<Q> qs{{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}};
  for (double R : {0.5, 1.402, 6.0}) {
    auto mol = diatomic(R);
    for (const auto& q1 : qs)
      for (const auto& q2 : qs)
        for (int m = 0; m <= std::min(q1.l, q2.l); ++m) {
          auto a = sto(q1.n, q1.l, m, 1.3, 0);
          auto b = sto(q2.n, q2.l, m, 0.9, 1);
          double s = twocenter::overlap(a, b, mol);
          double ref = overlap_quadrature(a, b, R);
          CHECK(std::abs(s - ref) < 1e-10);
        }
  }
}

TEST_CASE("kinetic integrals") {
  auto mol = diatomic(1.402);
  // hydrogenic: <1s|-lap/2|1s> = zeta^2/2
  for (double z : {1.0, 1.615}) {
    auto a = sto(1, 0, 0, z, 0);
    CHECK(twocenter::kinetic(a, a, mol) ==
          doctest::Approx(0.5 * z * z).epsilon(1e-13));
  }
  // symmetry
  auto a = sto(1, 0, 0, 1.042999, 0);
  auto b = sto(2, 0, 0, 1.784059, 1);
  CHECK(twocenter::kinetic(a, b, mol) ==
        doctest::Approx(twocenter::kinetic(b, a, mol)).epsilon(1e-12));

  // 1s-1s zeta=1 at R=1.402 against the gradient-form quadrature oracle:
  // T = 1/2 int grad(chi1).grad(chi2)
  auto c = sto(1, 0, 0, 1.0, 0);
  auto d = sto(1, 0, 0, 1.0, 1);
  double R = 1.402;
  mathcore::QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  auto res = mathcore::integrate_prolate2d(
      [&](double mu, double nu) {
        double ra = 0.5 * R * (mu + nu);
        double rb = 0.5 * R * (mu - nu);
        if (ra <= 0 || rb <= 0) return 0.0;
        double dot = (ra * ra + rb * rb - R * R) / (2.0 * ra * rb);
        return (mu * mu - nu * nu) * basis::radial_derivative(c, ra) *
               basis::radial_derivative(d, rb) * dot / (4.0 * M_PI);
      },
      spec);
  double oracle = 0.5 * std::pow(0.5 * R, 3) * 2.0 * M_PI * res.value;
  CHECK(twocenter::kinetic(c, d, mol) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("nuclear attraction") {
  auto mol = diatomic(1.402);
  // own center: <1s|1/r|1s> = zeta
  auto a = sto(1, 0, 0, 1.0, 0);
  CHECK(twocenter::nuclear_attraction(a, a, 0, mol) ==
        doctest::Approx(1.0).epsilon(1e-13));

  // one-center density, far nucleus: (1 - (1+rho) e^{-2 rho}) / R
  double rho = 1.402;
  double closed = (1.0 - (1.0 + rho) * std::exp(-2.0 * rho)) / 1.402;
  CHECK(twocenter::nuclear_attraction(a, a, 1, mol) ==
        doctest::Approx(closed).epsilon(1e-12));

  // two-center orbital pair, nucleus on a center, vs prolate quadrature
  auto b = sto(2, 0, 0, 1.615, 1);
  mathcore::QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  double R = 1.402;
  auto res = mathcore::integrate_prolate2d(
      [&](double mu, double nu) {
        double ra = 0.5 * R * (mu + nu);
        double rb = 0.5 * R * (mu - nu);
        if (ra <= 0) return 0.0;
        return (mu * mu - nu * nu) * basis::radial_value(a, ra) *
               basis::radial_value(b, rb) / (4.0 * M_PI) / ra;
      },
      spec);
  double oracle = std::pow(0.5 * R, 3) * 2.0 * M_PI * res.value;
  CHECK(twocenter::nuclear_attraction(a, b, 0, mol) ==
        doctest::Approx(oracle).epsilon(1e-11));

  // three-center case against an independent spherical quadrature centered
  // on a generic off-nucleus point (production clusters at the nucleus)
  Molecule tri = diatomic(1.402);
  tri.centers.push_back({"Hc", {2.0, 0.5, 0.3}});
  tri.nuclear_charges.push_back(1.0);
  auto c = sto(1, 0, 0, 1.3, 1);
  double val = twocenter::nuclear_attraction(a, c, 2, tri);
  mathcore::QuadratureSpec s3;
  s3.rel_tol = 1e-9;
  s3.b = 2.0;
  const auto nuc = tri.centers[2].position;
  auto ref = mathcore::integrate_spherical3d(
      [&](double r, double theta, double phi) {
        double st = std::sin(theta);
        basis::Vec3 pt{0.7 + r * st * std::cos(phi),
                       0.2 + r * st * std::sin(phi), 0.7 + r * std::cos(theta)};
        double dx = pt[0] - nuc[0], dy = pt[1] - nuc[1], dz = pt[2] - nuc[2];
        double rn = std::sqrt(dx * dx + dy * dy + dz * dz);
        double dens = std::real(std::conj(basis::evaluate(a, tri, pt)) *
                                basis::evaluate(c, tri, pt));
        return dens / rn * r * r;
      },
      s3);
  CHECK(val == doctest::Approx(ref.value).epsilon(1e-7));
}

TEST_CASE("overlap matrix positive definite and rotation invariant") {
  auto build = [](const basis::Vec3& a, const basis::Vec3& b) {
    Molecule mol;
    mol.centers.push_back({"Ha", a});
    mol.centers.push_back({"Hb", b});
    mol.nuclear_charges = {1.0, 1.0};
    for (double z : {1.042999, 1.599999})
      for (int ci : {0, 1}) mol.basis.push_back(sto(1, 0, 0, z, ci));
    for (double z : {1.615, 1.784059})
      for (int ci : {0, 1}) mol.basis.push_back(sto(2, 0, 0, z, ci));
    return mol;
  };
  auto mol = build({0, 0, 0}, {0, 0, 1.402});
  int n = (int)mol.basis.size();
  Eigen::MatrixXd S(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      S(i, j) = twocenter::overlap(mol.basis[i], mol.basis[j], mol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  CHECK(es.eigenvalues().minCoeff() > 0.0);

  // rigid rotation (s-only: exact)
  double c = std::cos(0.6), s = std::sin(0.6);
  auto rot = build({0, 0, 0}, {1.402 * s, 0.0, 1.402 * c});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double o1 = twocenter::overlap(mol.basis[i], mol.basis[j], mol);
      double o2 = twocenter::overlap(rot.basis[i], rot.basis[j], rot);
      CHECK(std::abs(o1 - o2) < 1e-12);
      double t1 = twocenter::kinetic(mol.basis[i], mol.basis[j], mol);
      double t2 = twocenter::kinetic(rot.basis[i], rot.basis[j], rot);
      CHECK(std::abs(t1 - t2) < 1e-12);
    }
}
