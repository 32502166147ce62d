#include <doctest.h>

#include <cmath>

#include "sturmint/basis/basis.hpp"
#include "sturmint/basis/parse.hpp"
#include "sturmint/mathcore/quadrature.hpp"
#include "sturmint/mathcore/special.hpp"

using namespace sturmint;
using basis::BasisFunction;
using basis::BasisKind;
using basis::Molecule;

namespace {

Molecule single_center() {
  Molecule mol;
  mol.centers.push_back({"H", {0.0, 0.0, 0.0}});
  mol.nuclear_charges.push_back(1.0);
  return mol;
}

BasisFunction sto(int n, int l, int m, double zeta) {
  BasisFunction bf;
  bf.kind = BasisKind::STO;
  bf.n = n;
  bf.l = l;
  bf.m = m;
  bf.zeta = zeta;
  return bf;
}

BasisFunction sturmian(int n, int l, int m, double beta) {
  BasisFunction bf;
  bf.kind = BasisKind::Sturmian;
  bf.n = n;
  bf.l = l;
  bf.m = m;
  bf.zeta = beta;
  return bf;
}

// weighted radial norm int R^2 r^{2-w} dr by quadrature
double radial_norm(const BasisFunction& bf, int w) {
  mathcore::QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  auto r = mathcore::integrate_semi_infinite(
      [&](double x) {
        double v = basis::radial_value(bf, x);
        return v * v * std::pow(x, 2 - w);
      },
      0.0, spec);
  REQUIRE(r.converged);
  return r.value;
}

}  // namespace

TEST_CASE("normalization against radial quadrature") {
  CHECK(radial_norm(sto(1, 0, 0, 1.0), 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(radial_norm(sto(1, 0, 0, 1.042999), 0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(radial_norm(sto(2, 0, 0, 1.784059), 0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(radial_norm(sto(3, 2, 1, 2.5), 0) == doctest::Approx(1.0).epsilon(1e-12));
  // Sturmians are normalized under the 1/r weight
  CHECK(radial_norm(sturmian(2, 0, 0, 1.0), 1) ==
        doctest::Approx(1.0).epsilon(1e-11));
  CHECK(radial_norm(sturmian(3, 1, 0, 0.8), 1) ==
        doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("pointwise evaluation") {
  Molecule mol = single_center();
  mol.basis = {sto(1, 0, 0, 1.0)};
  // STO 1s zeta=1 at the origin: 1/sqrt(pi)
  auto v = basis::evaluate(mol.basis[0], mol, {0.0, 0.0, 0.0});
  CHECK(v.real() == doctest::Approx(0.5641895835477563).epsilon(1e-12));
  CHECK(v.imag() == 0.0);

  // l = 1 vanishes at its own center
  BasisFunction p = sto(2, 1, 0, 1.3);
  CHECK(std::abs(basis::evaluate(p, mol, {0.0, 0.0, 0.0})) == 0.0);

  // Sturmian n=2 l=0: radial node where the Laguerre factor crosses zero.
  // L_1^1(x) = 2 - x, so the node sits at 2 beta r = 2.
  BasisFunction s2 = sturmian(2, 0, 0, 1.0);
  double node_r = 1.0;
  CHECK(basis::radial_value(s2, node_r) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(basis::radial_value(s2, node_r - 0.2) *
            basis::radial_value(s2, node_r + 0.2) <
        0.0);
}

TEST_CASE("Sturmian ODE residual") {
  // lap S = (beta^2 - 2 beta n / r) S for the radial part:
  // R'' + 2 R'/r - l(l+1) R/r^2 = (beta^2 - 2 beta n/r) R
  for (auto bf : {sturmian(1, 0, 0, 1.0), sturmian(2, 0, 0, 0.7),
                  sturmian(3, 1, 0, 1.2), sturmian(4, 2, 0, 0.9)}) {
    double beta = bf.zeta;
    double h = 1e-4;
    for (double r = 0.1; r <= 10.0; r *= 1.9) {
      double Rm = basis::radial_value(bf, r - h);
      double R0 = basis::radial_value(bf, r);
      double Rp = basis::radial_value(bf, r + h);
      double d2 = (Rp - 2.0 * R0 + Rm) / (h * h);
      double d1 = (Rp - Rm) / (2.0 * h);
      double lap = d2 + 2.0 * d1 / r - bf.l * (bf.l + 1.0) * R0 / (r * r);
      double rhs = (beta * beta - 2.0 * beta * bf.n / r) * R0;
      CHECK(std::abs(lap - rhs) < 1e-5 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("Sturmian orthonormality under the 1/r weight") {
  mathcore::QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-14;
  for (int l = 0; l <= 1; ++l)
    for (int n1 = l + 1; n1 <= 4; ++n1)
      for (int n2 = n1; n2 <= 4; ++n2) {
        BasisFunction a = sturmian(n1, l, 0, 1.1);
        BasisFunction b = sturmian(n2, l, 0, 1.1);
        auto r = mathcore::integrate_semi_infinite(
            [&](double x) {
              return basis::radial_value(a, x) * basis::radial_value(b, x) * x;
            },
            0.0, spec);
        double expect = (n1 == n2) ? 1.0 : 0.0;
        CHECK(std::abs(r.value - expect) < 1e-8);
      }
}

TEST_CASE("generalized ETO node counts") {
  // radial sign changes equal the Laguerre degree n - l - 1 - alpha
  for (int alpha : {0, 1}) {
    for (auto [n, l] : {std::pair{2, 0}, {3, 0}, {3, 1}, {4, 1}}) {
      BasisFunction bf;
      bf.kind = BasisKind::GeneralizedETO;
      bf.alpha = alpha;
      bf.n = n;
      bf.l = l;
      bf.zeta = 1.0;
      if (bf.laguerre_degree() < 0) continue;
      int crossings = 0;
      double prev = basis::radial_value(bf, 1e-3);
      for (double r = 1e-3; r < 40.0; r += 0.004) {
        double cur = basis::radial_value(bf, r);
        if (prev * cur < 0.0) ++crossings;
        if (cur != 0.0) prev = cur;
      }
      CHECK(crossings == n - l - 1 - alpha);
    }
  }
}

TEST_CASE("cusp prerequisite: 1s nonzero at the nucleus") {
  CHECK(basis::radial_value(sto(1, 0, 0, 1.3), 0.0) > 0.0);
  CHECK(std::abs(basis::radial_value(sturmian(1, 0, 0, 1.3), 0.0)) > 0.0);
}

TEST_CASE("Sturmian to B-function coefficients") {
  auto e1 = basis::sturmian_to_bfunctions(1, 0);
  REQUIRE(e1.terms.size() == 1);
  CHECK(e1.terms[0].t == 0);
  CHECK(e1.terms[0].coefficient == doctest::Approx(2.0).epsilon(1e-14));

  auto e2 = basis::sturmian_to_bfunctions(2, 0);
  REQUIRE(e2.terms.size() == 2);
  // prefactor 2^{2l+1}/(2l+1)!! = 2; Pochhammer ratios 1 and -2
  CHECK(e2.terms[0].coefficient == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(e2.terms[1].coefficient == doctest::Approx(-4.0).epsilon(1e-14));

  auto e3 = basis::sturmian_to_bfunctions(3, 1);
  REQUIRE(e3.terms.size() == 2);
  CHECK(e3.terms[0].coefficient == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(e3.terms[1].coefficient == doctest::Approx(-16.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("molecule parsing") {
  std::string h2 =
      "# comment line\n"
      "center Ha 0.0 0.0 0.0\n"
      "center Hb 0.0 0.0 1.402\n"
      "basis Ha sto 1 0 0 1.042999\n"
      "basis Ha sto 1 0 0 1.599999\n"
      "basis Ha sto 2 0 0 1.615000\n"
      "basis Ha sto 2 0 0 1.784059\n"
      "basis Hb sto 1 0 0 1.042999\n"
      "basis Hb sto 1 0 0 1.599999\n"
      "basis Hb sto 2 0 0 1.615000\n"
      "basis Hb sto 2 0 0 1.784059\n";
  auto mol = basis::parse_molecule(h2);
  CHECK(mol.centers.size() == 2);
  CHECK(mol.basis.size() == 8);
  CHECK(mol.nuclear_charges[0] == 1.0);
  CHECK(mol.centers[1].position[2] == 1.402);
  CHECK(mol.basis[3].zeta == 1.784059);
  CHECK(mol.n_electrons() == 2);

  // empty basis
  CHECK_THROWS_AS(basis::parse_molecule("center H 0 0 0\n"), basis::ParseError);
  // l >= n
  CHECK_THROWS_AS(
      basis::parse_molecule("center H 0 0 0\nbasis H sto 1 1 0 1.0\n"),
      basis::ParseError);
  // duplicate basis entry
  CHECK_THROWS_AS(basis::parse_molecule("center H 0 0 0\n"
                                        "basis H sto 1 0 0 1.0\n"
                                        "basis H sto 1 0 0 1.0\n"),
                  basis::ParseError);
  // unknown center label
  CHECK_THROWS_AS(
      basis::parse_molecule("center H 0 0 0\nbasis X sto 1 0 0 1.0\n"),
      basis::ParseError);
  // bad number
  CHECK_THROWS_AS(
      basis::parse_molecule("center H 0 0 zz\nbasis H sto 1 0 0 1.0\n"),
      basis::ParseError);
  // non-integer alpha is rejected at parse time
  CHECK_THROWS_AS(
      basis::parse_molecule("center H 0 0 0\nbasis H eto0.5 1 0 0 1.0\n"),
      basis::ParseError);
  // the error carries a line number
  try {
    basis::parse_molecule("center H 0 0 0\nbasis H sto 1 1 0 1.0\n");
    CHECK(false);
  } catch (const basis::ParseError& e) {
    CHECK(e.line() == 2);
  }

  // generalized ETO kinds parse (alpha = 0 Shull-Loewdin, alpha = 1)
  auto g = basis::parse_molecule(
      "center H 0 0 0\nbasis H eto0 2 0 0 1.0\nbasis H eto1 3 0 0 1.0\n"
      "basis H sturmian 2 0 0 1.0\n");
  CHECK(g.basis[0].kind == BasisKind::GeneralizedETO);
  CHECK(g.basis[1].alpha == 1);
}
