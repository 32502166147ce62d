#include <doctest.h>

#include <cmath>
#include <complex>

#include "sturmint/mathcore/aux_ab.hpp"
#include "sturmint/mathcore/gamma.hpp"
#include "sturmint/mathcore/gaunt.hpp"
#include "sturmint/mathcore/quadrature.hpp"
#include "sturmint/mathcore/special.hpp"

using namespace sturmint::mathcore;

TEST_CASE("assoc_laguerre basics") {
  CHECK(assoc_laguerre(0, 2.3, 3.7) == 1.0);
  CHECK(assoc_laguerre(1, 1.0, 2.0) == doctest::Approx(0.0).epsilon(1e-15));
  // explicit series (a+2)(a+1)/2 - (a+2)x + x^2/2 at a=3, x=1
  CHECK(assoc_laguerre(2, 3.0, 1.0) == doctest::Approx(5.5).epsilon(1e-14));
  CHECK_THROWS_AS(assoc_laguerre(-1, 0.0, 1.0), std::domain_error);
}

TEST_CASE("spherical harmonics values and conjugation") {
  auto y00 = spherical_harmonic(0, 0, 0.3, 1.2);
  CHECK(y00.real() == doctest::Approx(0.28209479177387814).epsilon(1e-12));
  CHECK(y00.imag() == doctest::Approx(0.0));
  auto y10 = spherical_harmonic(1, 0, 0.0, 0.7);
  CHECK(y10.real() == doctest::Approx(0.48860251190291992).epsilon(1e-12));

  // addition theorem at (0.7, 1.3): sum_m |Y_1^m|^2 = 3/(4 pi)
  double sum = 0.0;
  for (int m = -1; m <= 1; ++m)
    sum += std::norm(spherical_harmonic(1, m, 0.7, 1.3));
  CHECK(sum == doctest::Approx(0.23873241463784300).epsilon(1e-12));

  // Y_l^{-m} = (-1)^m conj(Y_l^m)
  for (int l = 0; l <= 4; ++l)
    for (int m = 1; m <= l; ++m) {
      auto a = spherical_harmonic(l, -m, 0.9, -2.1);
      auto b = std::conj(spherical_harmonic(l, m, 0.9, -2.1));
      if (m % 2) b = -b;
      CHECK(std::abs(a - b) < 1e-14);
    }
  CHECK_THROWS_AS(spherical_harmonic(1, 2, 0.0, 0.0), std::domain_error);
}

TEST_CASE("quadrature engine basics") {
  QuadratureSpec spec;
  auto r1 = integrate([](double x) { return x * x; }, 0.0, 1.0, spec);
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  auto r2 = integrate_semi_infinite(
      [](double r) { return std::exp(-r) * r * r; }, 0.0, spec);
  CHECK(r2.converged);
  CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-12));

  auto r3 = integrate_prolate2d(
      [](double mu, double nu) { return std::exp(-(mu + nu)); }, spec);
  CHECK(r3.converged);
  double expect = std::exp(-1.0) * (std::exp(1.0) - std::exp(-1.0));
  CHECK(r3.value == doctest::Approx(expect).epsilon(1e-11));

  // dispatching entry point
  QuadratureSpec dspec;
  dspec.domain = QuadDomain::interval;
  dspec.a = 0.0;
  dspec.b = 2.0;
  auto r4 = quad([](const double* x) { return x[0]; }, dspec);
  CHECK(r4.value == doctest::Approx(2.0).epsilon(1e-13));

  // spherical: int e^{-r^2} d3r = pi^{3/2}
  QuadratureSpec s3;
  s3.rel_tol = 1e-9;
  auto r5 = integrate_spherical3d(
      [](double r, double, double) { return std::exp(-r * r) * r * r; }, s3);
  CHECK(r5.value == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-8));

  // non-convergence is flagged, not silent
  QuadratureSpec tight;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 1e-300;
  tight.max_subdivisions = 2;
  auto bad = integrate([](double x) { return std::sqrt(std::abs(x)); }, -1.0,
                       1.0, tight);
  CHECK_FALSE(bad.converged);
}

TEST_CASE("incomplete gamma pair") {
  auto g1 = incomplete_gamma(1.0, 0.7);
  CHECK(g1.lower == doctest::Approx(1.0 - std::exp(-0.7)).epsilon(1e-14));
  CHECK(g1.upper == doctest::Approx(std::exp(-0.7)).epsilon(1e-14));

  auto g0 = incomplete_gamma(2.5, 0.0);
  CHECK(g0.lower == 0.0);
  CHECK(g0.upper == doctest::Approx(std::tgamma(2.5)).epsilon(1e-15));

  // frozen from the 1D quadrature of t^{a-1} e^{-t}: a = 3, x = 2
  auto g3 = incomplete_gamma(3.0, 2.0);
  CHECK(g3.lower == doctest::Approx(0.6466471676338730).epsilon(1e-12));
  CHECK(g3.upper == doctest::Approx(1.3533528323661270).epsilon(1e-12));
  // and against this run's quadrature oracle
  QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  auto lo = integrate([](double t) { return t * t * std::exp(-t); }, 0.0, 2.0,
                      spec);
  CHECK(g3.lower == doctest::Approx(lo.value).epsilon(1e-12));

  // lower + upper = Gamma(a) over a broad grid
  for (double a : {0.5, 1.0, 2.5, 7.0, 13.5, 30.0})
    for (double x : {0.0, 0.3, 1.0, 4.0, 12.0, 50.0}) {
      auto g = incomplete_gamma(a, x);
      CHECK(g.lower + g.upper ==
            doctest::Approx(std::tgamma(a)).epsilon(1e-14));
    }
  CHECK_THROWS_AS(incomplete_gamma(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(incomplete_gamma(1.0, -1.0), std::domain_error);
}

TEST_CASE("generalized upper gamma and E_n") {
  // Gamma(-1/2, x) against quadrature
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  for (double x : {0.3, 1.0, 3.0}) {
    auto q = integrate_semi_infinite(
        [](double t) { return std::pow(t, -1.5) * std::exp(-t); }, x, spec);
    CHECK(gamma_upper_general(-0.5, x) ==
          doctest::Approx(q.value).epsilon(1e-10));
  }
  // E_n downward identity: E_2(1) = e^{-1} - E_1(1)
  CHECK(expint_en(2, 1.0) ==
        doctest::Approx(std::exp(-1.0) - expint_e1(1.0)).epsilon(1e-13));
}

TEST_CASE("aux_A recurrence against quadrature") {
  CHECK(aux_A(0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(aux_A(1, 1.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  spec.abs_tol = 1e-18;
  for (int i : {0, 1, 2, 5, 9, 14, 20})
    for (double p : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
      auto q = integrate_semi_infinite(
          [i, p](double mu) { return std::pow(mu, i) * std::exp(-p * mu); },
          1.0, spec);
      double a = aux_A(i, p);
      CHECK(std::abs(a - q.value) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
  CHECK_THROWS_AS(aux_A(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(aux_A(0, -1.0), std::domain_error);
}

TEST_CASE("aux_B series, recurrence, quadrature") {
  CHECK(aux_B(0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(aux_B(1, 0.0) == doctest::Approx(0.0));
  CHECK(aux_B(0, 1.0) == doctest::Approx(2.3504023872876028).epsilon(1e-14));

  QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  spec.abs_tol = 1e-16;
  for (int j : {0, 1, 2, 5, 11, 20})
    for (double q : {0.0, 1e-6, -1e-6, 0.05, -0.05, 1.0, -1.0, 5.0, -5.0}) {
      auto ref = integrate(
          [j, q](double nu) { return std::pow(nu, j) * std::exp(-q * nu); },
          -1.0, 1.0, spec);
      CHECK(std::abs(aux_B(j, q) - ref.value) <= 1e-10);
    }

  // series and recurrence agree across the switchover window
  for (int j : {0, 1, 3, 7, 12})
    for (double q : {0.05, 0.08, 0.11, 0.15, 0.2}) {
      double s = detail::aux_B_series(j, q);
      double r = detail::aux_B_recurrence(j, q);
      CHECK(std::abs(s - r) <= 1e-12 * std::max(1.0, std::abs(s)));
    }
}

TEST_CASE("gaunt selection rules and values") {
  // m selection rule: exact zero
  CHECK(gaunt({1, 0, 1, 1, 1, 0}) == 0.0);
  // parity rule
  CHECK(gaunt({1, 0, 1, 0, 1, 0}) == 0.0);
  // triangle rule
  CHECK(gaunt({0, 0, 1, 0, 3, 0}) == 0.0);

  // <Y00|Y00 Y00> = 1/sqrt(4 pi)
  CHECK(gaunt({0, 0, 0, 0, 0, 0}) ==
        doctest::Approx(0.28209479177387814).epsilon(1e-9));
  // <Y10|Y10 Y20>: frozen from the closed form (4/5) sqrt(5/(16 pi))
  double expect = 0.8 * std::sqrt(5.0 / (16.0 * M_PI));
  CHECK(gaunt({1, 0, 1, 0, 2, 0}) == doctest::Approx(expect).epsilon(1e-9));

  // quadrature contract matches the 3j product fast path
  for (auto key : {GauntKey{2, 1, 1, 1, 1, 0}, GauntKey{3, -1, 2, 1, 3, -2},
                   GauntKey{2, 0, 2, 0, 2, 0}, GauntKey{4, 2, 2, -1, 4, 3}})
    CHECK(gaunt(key) == doctest::Approx(gaunt_3j(key)).epsilon(1e-8));

  CHECK(wigner_3j(1, 1, 2, 0, 0, 0) ==
        doctest::Approx(std::sqrt(2.0 / 15.0)).epsilon(1e-13));
  CHECK_THROWS_AS(gaunt({1, 2, 0, 0, 1, 0}), std::domain_error);
}
