#include "sturmint/mathcore/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace sturmint::mathcore {

namespace {

// Gauss-Kronrod 7-15 nodes/weights (QUADPACK dqk15).
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {0.129484966168870, 0.279705391489277,
                          0.381830050505119, 0.417959183673469};

struct PanelResult {
  double value;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b,
                 std::int64_t& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  double fc = f(c);
  double resg = wg[3] * fc;
  double resk = wgk[7] * fc;
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    double x = h * xgk[j];
    double f1 = f(c - x);
    double f2 = f(c + x);
    fv[j] = f1;
    fv[7 + j] = f2;
    if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    resk += wgk[j] * (f1 + f2);
    resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
  }
  evals += 15;
  double mean = 0.5 * resk;
  double resasc = wgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[7 + j] - mean));
  resk *= h;
  resg *= h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  (void)resabs;
  return {resk, err};
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

QuadResult adaptive(const std::function<double(double)>& f, double a, double b,
                    const QuadratureSpec& spec) {
  QuadResult out;
  std::priority_queue<Interval> heap;
  auto first = gk15(f, a, b, out.evaluations);
  heap.push({a, b, first.value, first.error});
  double total = first.value;
  double total_err = first.error;
  int splits = 0;
  while (splits < spec.max_subdivisions) {
    double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (total_err <= target) break;
    Interval worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      // Interval exhausted at machine resolution; keep its estimate.
      heap.push(worst);
      break;
    }
    auto left = gk15(f, worst.a, mid, out.evaluations);
    auto right = gk15(f, mid, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
    ++splits;
  }
  out.value = total;
  out.err_estimate = total_err;
  out.converged =
      total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  return out;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (rel_tol <= 0.0 || abs_tol <= 0.0)
    throw std::domain_error("QuadratureSpec: tolerances must be positive");
  if (max_subdivisions < 1)
    throw std::domain_error("QuadratureSpec: max_subdivisions < 1");
}

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return {0.0, 0.0, true, 0};
  return adaptive(f, a, b, spec);
}

QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   double a, const QuadratureSpec& spec) {
  spec.validate();
  // x = a + t/(1-t), dx = dt/(1-t)^2, t in [0, 1).
  auto g = [&f, a](double t) {
    double u = 1.0 - t;
    double x = a + t / u;
    return f(x) / (u * u);
  };
  return adaptive(g, 0.0, 1.0, spec);
}

QuadResult integrate_prolate2d(const std::function<double(double, double)>& f,
                               const QuadratureSpec& spec) {
  spec.validate();
  QuadratureSpec inner = spec;
  inner.rel_tol = spec.rel_tol * 0.1;
  inner.abs_tol = spec.abs_tol * 0.1;
  std::int64_t inner_evals = 0;
  bool inner_ok = true;
  auto outer = [&](double mu) {
    auto r = integrate(
        [&f, mu](double nu) { return f(mu, nu); }, -1.0, 1.0, inner);
    inner_evals += r.evaluations;
    inner_ok = inner_ok && r.converged;
    return r.value;
  };
  auto res = integrate_semi_infinite(outer, 1.0, spec);
  res.evaluations += inner_evals;
  res.converged = res.converged && inner_ok;
  return res;
}

QuadResult integrate_spherical3d(
    const std::function<double(double, double, double)>& f,
    const QuadratureSpec& spec) {
  spec.validate();
  QuadratureSpec mid = spec;
  mid.rel_tol = spec.rel_tol * 0.1;
  mid.abs_tol = spec.abs_tol * 0.1;
  QuadratureSpec inner = spec;
  inner.rel_tol = spec.rel_tol * 0.03;
  inner.abs_tol = spec.abs_tol * 0.03;
  std::int64_t extra = 0;
  bool sub_ok = true;
  double scale = spec.b > 0.0 ? spec.b : 1.0;
  auto radial = [&](double r) {
    auto th = integrate(
        [&](double theta) {
          auto ph = integrate(
              [&](double phi) { return f(r, theta, phi); }, 0.0,
              2.0 * M_PI, inner);
          extra += ph.evaluations;
          sub_ok = sub_ok && ph.converged;
          return ph.value * std::sin(theta);
        },
        0.0, M_PI, mid);
    extra += th.evaluations;
    sub_ok = sub_ok && th.converged;
    return th.value;
  };
  QuadratureSpec outer = spec;
  auto res = integrate_semi_infinite(
      [&](double t) { return radial(scale * t) * scale; }, 0.0, outer);
  res.evaluations += extra;
  res.converged = res.converged && sub_ok;
  return res;
}

QuadResult quad(const std::function<double(const double*)>& f,
                const QuadratureSpec& spec) {
  switch (spec.domain) {
    case QuadDomain::interval:
      return integrate([&f](double x) { return f(&x); }, spec.a, spec.b, spec);
    case QuadDomain::semi_infinite:
      return integrate_semi_infinite([&f](double x) { return f(&x); }, spec.a,
                                     spec);
    case QuadDomain::prolate2d:
      return integrate_prolate2d(
          [&f](double mu, double nu) {
            double xy[2] = {mu, nu};
            return f(xy);
          },
          spec);
    case QuadDomain::spherical3d:
      return integrate_spherical3d(
          [&f](double r, double t, double p) {
            double xyz[3] = {r, t, p};
            return f(xyz);
          },
          spec);
  }
  throw std::logic_error("quad: bad domain");
}

void gauss_legendre(int n, double* nodes, double* weights) {
  if (n < 1) throw std::domain_error("gauss_legendre: n < 1");
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev estimate.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

}  // namespace sturmint::mathcore
