#pragma once

#include <cstdint>
#include <functional>

namespace sturmint::mathcore {

enum class QuadDomain { interval, semi_infinite, prolate2d, spherical3d };

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 4000;
  QuadDomain domain = QuadDomain::interval;
  // Interval bounds; for semi_infinite only `a` is used. `b` doubles as the
  // radial scale of the spherical3d map.
  double a = 0.0;
  double b = 1.0;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  bool converged = false;
  std::int64_t evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod 7-15 on [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec = {});

/// Adaptive quadrature on [a, inf), mapped to a finite interval.
QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   double a, const QuadratureSpec& spec = {});

/// Iterated adaptive quadrature over mu in [1, inf), nu in [-1, 1].
QuadResult integrate_prolate2d(const std::function<double(double, double)>& f,
                               const QuadratureSpec& spec = {});

/// Iterated adaptive quadrature in spherical polar coordinates:
/// integrand f(r, theta, phi), r in [0, inf), theta in [0, pi],
/// phi in [0, 2 pi). The volume element is NOT included.
QuadResult integrate_spherical3d(
    const std::function<double(double, double, double)>& f,
    const QuadratureSpec& spec = {});

/// Dispatching entry point: the integrand receives a coordinate tuple whose
/// layout follows spec.domain (x | x | mu,nu | r,theta,phi).
QuadResult quad(const std::function<double(const double*)>& f,
                const QuadratureSpec& spec);

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, double* nodes, double* weights);

}  // namespace sturmint::mathcore
