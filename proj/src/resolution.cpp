#include "sturmint/resolution/resolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "sturmint/mathcore/aux_ab.hpp"
#include "sturmint/mathcore/gaunt.hpp"
#include "sturmint/mathcore/quadrature.hpp"
#include "sturmint/mathcore/special.hpp"
#include "sturmint/poisson/poisson.hpp"
#include "sturmint/twocenter/twocenter.hpp"

namespace sturmint::resolution {

using basis::BasisFunction;
using basis::BasisKind;
using basis::Molecule;
using basis::Vec3;
using mathcore::binomial;
using mathcore::factorial;

namespace {

constexpr int kMaxL = 6;
constexpr double kSqrt2 = 1.4142135623730951;

constexpr int kMaxN = 64;

// Laguerre expansion coefficients of h_n: L_n(2x) = sum_k c_k x^k,
// tabulated once for all n < kMaxN.
const double* laguerre2_coeffs(int n) {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t(kMaxN);
    for (int nn = 0; nn < kMaxN; ++nn) {
      t[nn].resize(nn + 1);
      for (int k = 0; k <= nn; ++k)
        t[nn][k] = binomial(nn, k) * std::pow(-2.0, k) / factorial(k);
    }
    return t;
  }();
  if (n >= kMaxN) throw std::domain_error("potential_V: n too large");
  return table[n].data();
}

// Moments M_j(n) = int_0^inf x^j L_n(2x) e^{-x} dx, via the stable
// single-sign sum j! (-1)^n sum_a C(j,a) C(j+n-a, j).
double moment_Mjn(int j, int n) {
  double s = 0.0;
  for (int a = 0; a <= std::min(j, n); ++a)
    s += binomial(j, a) * binomial(j + n - a, j);
  double m = factorial(j) * s;
  return (n % 2) ? -m : m;
}

// Small-r power series of V_nl (long double: terms grow before they decay
// once the switch radius scales with n).
double potential_series(int n, int l, double r) {
  long double sum = 0.0L;
  long double term_scale = std::pow((long double)r, l) /
                           (long double)mathcore::double_factorial(2 * l + 1);
  for (int t = 0; t < 60; ++t) {
    int j = l + 2 * t;
    long double term = term_scale * (long double)moment_Mjn(j, n);
    sum += term;
    if (std::abs((double)term) < 1e-18 * std::abs((double)sum) && t > 2) break;
    term_scale *= -(long double)(r * r) /
                  (2.0L * (t + 1) * (2.0L * l + 2.0L * t + 3.0L));
  }
  return kSqrt2 * (double)sum;
}

// T_{k,l}(r) = int x^k e^{-x} j_l(r x) dx table via Laplace-transform seeds
// and the Bessel three-term recurrence (long double; l stays small).
// T is a flat buffer of (kmax+1) x (lmax+1), row-major in k.
void t_table(int kmax, int lmax, double r, long double* T) {
  using C = std::complex<long double>;
  const int stride = lmax + 1;
  long double lr = r;
  long double atr = std::atan(lr);
  // W_k = Gamma(k) w^k, w = 1/(1 - i r)
  C w = 1.0L / C(1.0L, -lr);
  thread_local std::vector<C> W;
  W.resize(kmax + 2);
  W[1] = w;
  for (int k = 1; k <= kmax; ++k) W[k + 1] = W[k] * w * (long double)k;
  T[0] = atr / lr;
  for (int k = 1; k <= kmax; ++k) T[k * stride] = W[k].imag() / lr;
  if (lmax >= 1) {
    T[1] = (1.0L - atr / lr) / lr;
    if (kmax >= 1)
      T[stride + 1] = atr / (lr * lr) - 1.0L / (lr * (1.0L + lr * lr));
    for (int k = 2; k <= kmax; ++k)
      T[k * stride + 1] = W[k - 1].imag() / (lr * lr) - W[k].real() / lr;
  }
  for (int l = 1; l < lmax; ++l) {
    // k = 0 column has its own recurrence.
    T[l + 1] = (l * T[l - 1] - (2.0L * l + 1.0L) * T[l] / lr) / (l + 1.0L);
    for (int k = 1; k <= kmax; ++k)
      T[k * stride + l + 1] = (2.0L * l + 1.0L) / lr * T[(k - 1) * stride + l] -
                              T[k * stride + l - 1];
  }
}

void check_nl(int n, int l) {
  if (n < 0) throw std::domain_error("potential_V: n < 0");
  if (l < 0 || l > kMaxL) throw std::domain_error("potential_V: l out of range");
}

}  // namespace

double h_fn(int n, double x) {
  if (n < 0) throw std::domain_error("h_fn: n < 0");
  if (x < 0.0) throw std::domain_error("h_fn: x < 0");
  return kSqrt2 * mathcore::assoc_laguerre(n, 0.0, 2.0 * x) * std::exp(-x);
}

double series_switch_radius(int n) { return n <= 10 ? 0.2 : 0.5; }

double potential_V(int n, int l, double r) {
  check_nl(n, l);
  if (r < 0.0) throw std::domain_error("potential_V: r < 0");
  if (r < series_switch_radius(n)) return potential_series(n, l, r);
  thread_local std::vector<long double> T;
  T.resize((n + 1) * (l + 1));
  t_table(n, l, r, T.data());
  const double* c = laguerre2_coeffs(n);
  long double sum = 0.0L;
  for (int k = 0; k <= n; ++k) sum += (long double)c[k] * T[k * (l + 1) + l];
  return kSqrt2 * (double)sum;
}

/// All potentials V_nl for n < n_max, l <= l_max at one radius; out has
/// layout out[n * (l_max+1) + l].
static void potential_V_all(int n_max, int l_max, double r, double* out) {
  if (r < series_switch_radius(n_max - 1)) {
    for (int n = 0; n < n_max; ++n)
      for (int l = 0; l <= l_max; ++l)
        out[n * (l_max + 1) + l] = potential_series(n, l, r);
    return;
  }
  const int stride = l_max + 1;
  thread_local std::vector<long double> T;
  T.resize(n_max * stride);
  t_table(n_max - 1, l_max, r, T.data());
  for (int n = 0; n < n_max; ++n) {
    const double* c = laguerre2_coeffs(n);
    for (int l = 0; l <= l_max; ++l) {
      long double sum = 0.0L;
      for (int k = 0; k <= n; ++k) sum += (long double)c[k] * T[k * stride + l];
      out[n * stride + l] = kSqrt2 * (double)sum;
    }
  }
}

double potential_V_quadrature(int n, int l, double r, double tol) {
  check_nl(n, l);
  if (!(r >= 0.0)) throw std::domain_error("potential_V_quadrature: r < 0");
  double xmax = 2.0 * n + 60.0;
  double h = M_PI / std::max(r, 0.5);
  mathcore::QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = tol * 1e-3 * h / xmax;
  double acc = 0.0;
  double x0 = 0.0;
  int quiet = 0;
  while (x0 < xmax && quiet < 3) {
    double x1 = std::min(x0 + h, xmax);
    auto res = mathcore::integrate(
        [&](double x) {
          return h_fn(n, x) * std::sph_bessel((unsigned)l, r * x);
        },
        x0, x1, spec);
    if (!res.converged)
      throw std::runtime_error("potential_V_quadrature: block not converged");
    acc += res.value;
    quiet = (std::abs(res.value) < 1e-17 * (std::abs(acc) + 1.0)) ? quiet + 1 : 0;
    x0 = x1;
  }
  return acc;
}

void ResolutionConfig::validate() const {
  if (n_max < 1) throw std::domain_error("ResolutionConfig: n_max < 1");
  if (l_max < 0 || l_max > kMaxL)
    throw std::domain_error("ResolutionConfig: l_max out of range");
  if (!(eps > 0.0)) throw std::domain_error("ResolutionConfig: eps <= 0");
  if (!(scale > 0.0)) throw std::domain_error("ResolutionConfig: scale <= 0");
  if (schwarz_tau < 0.0)
    throw std::domain_error("ResolutionConfig: schwarz_tau < 0");
}

int AuxiliaryBlock::index(int n, int l, int m, int n_max) {
  return (l * l + (m + l)) * n_max + n;
}

std::complex<double> AuxiliaryBlock::at(int n, int l, int m) const {
  return values[index(n, l, m, n_max)];
}

// ---------------------------------------------------------------------------
// Auxiliary evaluation paths.

namespace {

struct Gl {
  std::vector<double> x, w;
  explicit Gl(int n) : x(n), w(n) {
    mathcore::gauss_legendre(n, x.data(), w.data());
  }
};

const Gl& gl20() { static const Gl g(20); return g; }
const Gl& gl24() { static const Gl g(24); return g; }
const Gl& gl32() { static const Gl g(32); return g; }

std::vector<double> mu_panels(double p, int extra) {
  double span = (50.0 + 3.0 * extra) / std::max(p, 1e-3);
  std::vector<double> b{1.0};
  double w = 0.2 / std::max(p, 0.25);
  while (b.back() - 1.0 < span) {
    b.push_back(b.back() + w);
    w *= 1.4;
  }
  return b;
}

double dist3(const Vec3& a, const Vec3& b) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    double t = a[k] - b[k];
    s += t * t;
  }
  return std::sqrt(s);
}

bool is_s_pair(const BasisFunction& a, const BasisFunction& b) {
  return a.l == 0 && b.l == 0;
}

// PATH A: s-s pair; the potential origin and the orbital centers lie on at
// most two distinct points. Computed in the prolate frame (P1 = origin,
// P2 = remaining point); the potential's global orientation is restored by
// a Wigner rotation of the axial result.
AuxiliaryBlock block_axial(const BasisFunction& a, const BasisFunction& b,
                           const Vec3& origin, double lambda, int n_max,
                           int l_max, const Molecule& mol) {
  const Vec3& ca = mol.centers[a.center_index].position;
  const Vec3& cb = mol.centers[b.center_index].position;
  // P2 = the pair point distinct from the origin.
  Vec3 p2 = ca;
  if (dist3(ca, origin) < 1e-12) p2 = cb;
  double R = dist3(p2, origin);

  int pow1 = 1, pow2 = 1;
  double z1 = 0.0, z2 = 0.0;
  for (const auto* bf : {&a, &b}) {
    const Vec3& c = mol.centers[bf->center_index].position;
    if (dist3(c, origin) < 1e-12) {
      pow1 += bf->n - 1;
      z1 += bf->zeta;
    } else {
      pow2 += bf->n - 1;
      z2 += bf->zeta;
    }
  }
  double p = 0.5 * (z1 + z2) * R;
  double q = 0.5 * (z1 - z2) * R;
  double norm = basis::normalization(a) * basis::normalization(b);

  auto panels = mu_panels(p, pow1 + pow2);
  const auto& gmu = gl24();
  const auto& gnu = gl32();
  int nl = l_max + 1;
  std::vector<double> acc(n_max * nl, 0.0);
  std::vector<double> vall(n_max * nl);
  std::vector<double> th(nl);
  for (std::size_t kp = 0; kp + 1 < panels.size(); ++kp) {
    double h = 0.5 * (panels[kp + 1] - panels[kp]);
    double c0 = 0.5 * (panels[kp + 1] + panels[kp]);
    for (std::size_t i = 0; i < gmu.x.size(); ++i) {
      double mu = c0 + h * gmu.x[i];
      double wmu = h * gmu.w[i];
      for (std::size_t j = 0; j < gnu.x.size(); ++j) {
        double nu = gnu.x[j];
        double wt = wmu * gnu.w[j];
        double r1 = 0.5 * R * (mu + nu);   // distance from origin point
        double r2 = 0.5 * R * (mu - nu);
        double dens = std::pow(mu + nu, pow1) * std::pow(mu - nu, pow2) *
                      std::exp(-p * (mu - 1.0) - q * nu);
        double ct = (mu * nu + 1.0) / (mu + nu);
        potential_V_all(n_max, l_max, lambda * r1, vall.data());
        for (int l = 0; l <= l_max; ++l) th[l] = mathcore::theta_lm(l, 0, ct);
        (void)r2;
        for (int n = 0; n < n_max; ++n)
          for (int l = 0; l <= l_max; ++l)
            acc[n * nl + l] += wt * dens * vall[n * nl + l] * th[l];
      }
    }
  }
  // Assembly constants: sqrt(lambda) 2 sqrt2 * N * (1/4pi) * 2pi *
  // (1/sqrt(2pi)) * (R/2)^{sum(n_i-1)+3} and the factored e^{-p}.
  double pref = std::sqrt(lambda) * 2.0 * kSqrt2 * norm / (4.0 * M_PI) *
                2.0 * M_PI / std::sqrt(2.0 * M_PI) *
                std::pow(0.5 * R, a.n + b.n + 1) * std::exp(-p);
  // Rotate the axial (m = 0) result into the global orientation.
  double theta = std::acos(std::clamp((p2[2] - origin[2]) / R, -1.0, 1.0));
  double phi = std::atan2(p2[1] - origin[1], p2[0] - origin[0]);
  AuxiliaryBlock blk;
  blk.n_max = n_max;
  blk.l_max = l_max;
  blk.values.assign((l_max + 1) * (l_max + 1) * n_max, {0.0, 0.0});
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      // Coefficient of Y_l^0(local) in the local expansion of Y_l^m(global).
      std::complex<double> cm =
          twocenter::harmonic_frame_coeffs(l, m, theta, phi)[l];
      for (int n = 0; n < n_max; ++n)
        blk.values[AuxiliaryBlock::index(n, l, m, n_max)] =
            cm * (pref * acc[n * nl + l]);
    }
  }
  return blk;
}

// PATH B: general pair, potential origin anywhere. 3D grid in prolate
// coordinates of the two pair centers (two-center pair) or spherical
// coordinates about the pair center (one-center pair).
AuxiliaryBlock block_grid3d(const BasisFunction& a, const BasisFunction& b,
                            const Vec3& origin, double lambda, int n_max,
                            int l_max, const Molecule& mol) {
  const Vec3& ca = mol.centers[a.center_index].position;
  const Vec3& cb = mol.centers[b.center_index].position;
  int nl = l_max + 1;
  int nlm = (l_max + 1) * (l_max + 1);
  std::vector<std::complex<double>> acc(nlm * n_max, {0.0, 0.0});
  std::vector<double> vall(n_max * nl);

  int nphi = 32;
  auto accumulate_point = [&](const Vec3& pt, double weight) {
    std::complex<double> dens =
        std::conj(basis::evaluate(a, mol, pt)) * basis::evaluate(b, mol, pt);
    if (dens == std::complex<double>(0.0, 0.0)) return;
    Vec3 s{pt[0] - origin[0], pt[1] - origin[1], pt[2] - origin[2]};
    double sr = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
    potential_V_all(n_max, l_max, lambda * sr, vall.data());
    double cth = (sr > 0.0) ? std::clamp(s[2] / sr, -1.0, 1.0) : 1.0;
    double sphi = std::atan2(s[1], s[0]);
    double sth = std::acos(cth);
    for (int l = 0; l <= l_max; ++l)
      for (int m = -l; m <= l; ++m) {
        std::complex<double> y = mathcore::spherical_harmonic(l, m, sth, sphi);
        for (int n = 0; n < n_max; ++n)
          acc[AuxiliaryBlock::index(n, l, m, n_max)] +=
              weight * dens * vall[n * nl + l] * y;
      }
  };

  if (a.center_index != b.center_index) {
    double R = dist3(ca, cb);
    double zsum = a.zeta + b.zeta;
    double pfr = 0.5 * zsum * R;
    // local frame: z along the pair axis
    Vec3 ez{(cb[0] - ca[0]) / R, (cb[1] - ca[1]) / R, (cb[2] - ca[2]) / R};
    Vec3 ref = (std::abs(ez[2]) < 0.9) ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 ex{ez[1] * ref[2] - ez[2] * ref[1], ez[2] * ref[0] - ez[0] * ref[2],
            ez[0] * ref[1] - ez[1] * ref[0]};
    double exn = std::sqrt(ex[0] * ex[0] + ex[1] * ex[1] + ex[2] * ex[2]);
    for (auto& v : ex) v /= exn;
    Vec3 ey{ez[1] * ex[2] - ez[2] * ex[1], ez[2] * ex[0] - ez[0] * ex[2],
            ez[0] * ex[1] - ez[1] * ex[0]};
    auto panels = mu_panels(pfr, a.n + b.n);
    const auto& gmu = gl20();
    const auto& gnu = gl24();
    for (std::size_t kp = 0; kp + 1 < panels.size(); ++kp) {
      double h = 0.5 * (panels[kp + 1] - panels[kp]);
      double c0 = 0.5 * (panels[kp + 1] + panels[kp]);
      for (std::size_t i = 0; i < gmu.x.size(); ++i) {
        double mu = c0 + h * gmu.x[i];
        for (std::size_t j = 0; j < gnu.x.size(); ++j) {
          double nu = gnu.x[j];
          double jac = std::pow(0.5 * R, 3) * (mu * mu - nu * nu);
          double w2 = h * gmu.w[i] * gnu.w[j] * jac * (2.0 * M_PI / nphi);
          // cylindrical coordinates about the midpoint
          double zloc = 0.5 * R * mu * nu;
          double rho = 0.5 * R *
                       std::sqrt(std::max(0.0, (mu * mu - 1.0) * (1.0 - nu * nu)));
          Vec3 mid{0.5 * (ca[0] + cb[0]), 0.5 * (ca[1] + cb[1]),
                   0.5 * (ca[2] + cb[2])};
          for (int kphi = 0; kphi < nphi; ++kphi) {
            double ph = 2.0 * M_PI * kphi / nphi;
            double cx = rho * std::cos(ph), cy = rho * std::sin(ph);
            Vec3 pt{mid[0] + cx * ex[0] + cy * ey[0] + zloc * ez[0],
                    mid[1] + cx * ex[1] + cy * ey[1] + zloc * ez[1],
                    mid[2] + cx * ex[2] + cy * ey[2] + zloc * ez[2]};
            accumulate_point(pt, w2);
          }
        }
      }
    }
  } else {
    // spherical panels about the single pair center
    double zsum = a.zeta + b.zeta;
    std::vector<double> rb{0.0};
    double w = 0.25 / zsum;
    double span = (50.0 + 3.0 * (a.n + b.n)) / zsum;
    while (rb.back() < span) {
      rb.push_back(rb.back() + w);
      w *= 1.7;
    }
    const auto& gr = gl20();
    const auto& gt = gl24();
    for (std::size_t kp = 0; kp + 1 < rb.size(); ++kp) {
      double h = 0.5 * (rb[kp + 1] - rb[kp]);
      double c0 = 0.5 * (rb[kp + 1] + rb[kp]);
      for (std::size_t i = 0; i < gr.x.size(); ++i) {
        double r = c0 + h * gr.x[i];
        for (std::size_t j = 0; j < gt.x.size(); ++j) {
          double cth = gt.x[j];
          double sth = std::sqrt(std::max(0.0, 1.0 - cth * cth));
          double w2 = h * gr.w[i] * gt.w[j] * r * r * (2.0 * M_PI / nphi);
          for (int kphi = 0; kphi < nphi; ++kphi) {
            double ph = 2.0 * M_PI * kphi / nphi;
            Vec3 pt{ca[0] + r * sth * std::cos(ph),
                    ca[1] + r * sth * std::sin(ph), ca[2] + r * cth};
            accumulate_point(pt, w2);
          }
        }
      }
    }
  }
  AuxiliaryBlock blk;
  blk.n_max = n_max;
  blk.l_max = l_max;
  blk.values.assign(nlm * n_max, {0.0, 0.0});
  double pref = std::sqrt(lambda) * 2.0 * kSqrt2;
  for (std::size_t i = 0; i < acc.size(); ++i) blk.values[i] = pref * acc[i];
  return blk;
}

// One-center pair with the potential on the same center: radial integral
// times a Gaunt factor.
AuxiliaryBlock block_radial(const BasisFunction& a, const BasisFunction& b,
                            double lambda, int n_max, int l_max,
                            const Molecule& mol) {
  (void)mol;
  int nl = l_max + 1;
  AuxiliaryBlock blk;
  blk.n_max = n_max;
  blk.l_max = l_max;
  blk.values.assign((l_max + 1) * (l_max + 1) * n_max, {0.0, 0.0});
  // radial integrals int R_a R_b V_nl(lambda r) r^2 dr
  std::vector<double> rad(n_max * nl, 0.0);
  mathcore::QuadratureSpec spec;
  spec.rel_tol = 1e-11;
  spec.abs_tol = 1e-15;
  for (int l = 0; l <= l_max; ++l) {
    for (int n = 0; n < n_max; ++n) {
      auto res = mathcore::integrate_semi_infinite(
          [&](double r) {
            return basis::radial_value(a, r) * basis::radial_value(b, r) *
                   potential_V(n, l, lambda * r) * r * r;
          },
          0.0, spec);
      rad[n * nl + l] = res.value;
    }
  }
  double pref = std::sqrt(lambda) * 2.0 * kSqrt2;
  for (int l = 0; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m) {
      double g = mathcore::gaunt({a.l, a.m, l, m, b.l, b.m});
      if (g == 0.0) continue;
      for (int n = 0; n < n_max; ++n)
        blk.values[AuxiliaryBlock::index(n, l, m, n_max)] =
            pref * g * rad[n * nl + l];
    }
  return blk;
}

}  // namespace

AuxiliaryBlock auxiliary_block(const BasisFunction& a, const BasisFunction& b,
                               const Vec3& origin, double lambda, int n_max,
                               int l_max, const Molecule& mol) {
  if (l_max > kMaxL) throw std::domain_error("auxiliary_block: l_max too big");
  const Vec3& ca = mol.centers[a.center_index].position;
  const Vec3& cb = mol.centers[b.center_index].position;
  bool same_center = (a.center_index == b.center_index);
  bool origin_on_a = dist3(ca, origin) < 1e-12;
  bool origin_on_b = dist3(cb, origin) < 1e-12;
  if (same_center && origin_on_a)
    return block_radial(a, b, lambda, n_max, l_max, mol);
  if (is_s_pair(a, b) && (same_center || origin_on_a || origin_on_b))
    return block_axial(a, b, origin, lambda, n_max, l_max, mol);
  return block_grid3d(a, b, origin, lambda, n_max, l_max, mol);
}

std::complex<double> auxiliary(const BasisFunction& a, const BasisFunction& b,
                               const ResolutionPotential& pot,
                               const Molecule& mol) {
  auto blk = auxiliary_block(a, b, pot.origin, pot.scale, pot.n + 1,
                             std::min(kMaxL, std::max(pot.l, 0)), mol);
  return blk.at(pot.n, pot.l, pot.m);
}

Vec3 resolution_origin(const BasisFunction& a, const BasisFunction& b,
                       const BasisFunction& c, const BasisFunction& d,
                       const Molecule& mol) {
  // A one-center pair pins the origin to its atom (its auxiliaries then
  // carry only the l = 0 channels); otherwise the midpoint of the first
  // pair's centers keeps the angular expansion short.
  if (a.center_index == b.center_index)
    return mol.centers[a.center_index].position;
  if (c.center_index == d.center_index)
    return mol.centers[c.center_index].position;
  const Vec3& pa = mol.centers[a.center_index].position;
  const Vec3& pb = mol.centers[b.center_index].position;
  return {0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1]), 0.5 * (pa[2] + pb[2])};
}

namespace {

EriResult assemble_eri(const AuxiliaryBlock& blk1, const AuxiliaryBlock& blk2,
                       const ResolutionConfig& cfg) {
  EriResult out;
  double worst_tail = 0.0;
  for (int l = 0; l <= cfg.l_max; ++l) {
    double last = 0.0;
    bool exited = false;
    for (int n = 0; n < cfg.n_max; ++n) {
      std::complex<double> block = 0.0;
      for (int m = -l; m <= l; ++m)
        block += blk1.at(n, l, m) * std::conj(blk2.at(n, l, m));
      out.value += block.real();
      ++out.terms_used;
      last = std::abs(block);
      if (last < cfg.eps) {
        exited = true;
        break;
      }
    }
    if (!exited) worst_tail = std::max(worst_tail, last);
    out.tail_estimate = std::max(out.tail_estimate, last);
  }
  out.converged = (worst_tail < cfg.eps);
  if (!out.converged) out.tail_estimate = worst_tail;
  return out;
}

}  // namespace

EriResult eri_resolution(const BasisFunction& a, const BasisFunction& b,
                         const BasisFunction& c, const BasisFunction& d,
                         const Molecule& mol, const ResolutionConfig& cfg) {
  cfg.validate();
  if (cfg.schwarz_tau > 0.0) {
    double bound = schwarz_bound(a, b, mol) * schwarz_bound(c, d, mol);
    if (bound < cfg.schwarz_tau) return {0.0, 0, 0.0, true};
  }
  const Vec3 origin = resolution_origin(a, b, c, d, mol);
  auto blk1 =
      auxiliary_block(a, b, origin, cfg.scale, cfg.n_max, cfg.l_max, mol);
  auto blk2 =
      auxiliary_block(d, c, origin, cfg.scale, cfg.n_max, cfg.l_max, mol);
  return assemble_eri(blk1, blk2, cfg);
}

AuxiliaryCache::AuxiliaryCache(const Molecule& mol, ResolutionConfig cfg)
    : mol_(mol), cfg_(cfg) {
  cfg_.validate();
}

const AuxiliaryBlock& AuxiliaryCache::block(int p, int q,
                                            const Vec3& origin) {
  auto key = std::make_tuple(p, q, std::llround(origin[0] * 1e9),
                             std::llround(origin[1] * 1e9),
                             std::llround(origin[2] * 1e9));
  {
    std::shared_lock lock(mutex_);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return *it->second;
  }
  auto blk = std::make_shared<const AuxiliaryBlock>(
      auxiliary_block(mol_.basis[p], mol_.basis[q], origin, cfg_.scale,
                      cfg_.n_max, cfg_.l_max, mol_));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = blocks_.emplace(key, std::move(blk));
  return *it->second;
}

EriResult AuxiliaryCache::eri(int i, int j, int k, int l) {
  Vec3 origin = resolution_origin(mol_.basis[i], mol_.basis[j], mol_.basis[k],
                                  mol_.basis[l], mol_);
  const auto& b1 = block(i, j, origin);
  const auto& b2 = block(l, k, origin);
  return assemble_eri(b1, b2, cfg_);
}

double schwarz_bound(const BasisFunction& a, const BasisFunction& b,
                     const Molecule& mol) {
  double v;
  if (a.l == 0 && b.l == 0) {
    v = poisson::eri_exact(a, b, a, b, mol);
  } else if (a.center_index == b.center_index) {
    v = poisson::eri_one_center(a, b, a, b, mol);
  } else {
    ResolutionConfig cfg;
    cfg.n_max = 20;
    cfg.l_max = 4;
    cfg.eps = 1e-8;
    cfg.schwarz_tau = 0.0;
    v = eri_resolution(a, b, a, b, mol, cfg).value;
  }
  return std::sqrt(std::max(v, 0.0));
}

}  // namespace sturmint::resolution
