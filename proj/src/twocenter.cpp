#include "sturmint/twocenter/twocenter.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "sturmint/mathcore/aux_ab.hpp"
#include "sturmint/mathcore/gaunt.hpp"
#include "sturmint/mathcore/quadrature.hpp"
#include "sturmint/mathcore/special.hpp"
#include "sturmint/poisson/radial.hpp"

namespace sturmint::twocenter {

using basis::BasisFunction;
using basis::BasisKind;
using basis::Molecule;
using basis::Vec3;
using mathcore::aux_A;
using mathcore::aux_B;
using mathcore::factorial;

namespace {

// ---------------------------------------------------------------------------
// Exact rational bivariate polynomials in (mu, nu).

struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long n, long long d = 1) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(std::abs(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }
  Frac operator+(const Frac& o) const {
    return Frac(num * o.den + o.num * den, den * o.den);
  }
  Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
  bool zero() const { return num == 0; }
};

using Poly2 = std::map<std::pair<int, int>, Frac>;

void add_term(Poly2& p, int i, int j, const Frac& c) {
  if (c.zero()) return;
  auto key = std::make_pair(i, j);
  auto it = p.find(key);
  if (it == p.end()) {
    p[key] = c;
  } else {
    it->second = it->second + c;
    if (it->second.zero()) p.erase(it);
  }
}

Poly2 poly_mul(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b)
      add_term(r, ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

Poly2 poly_pow(const Poly2& a, int n) {
  Poly2 r;
  r[{0, 0}] = Frac(1);
  for (int k = 0; k < n; ++k) r = poly_mul(r, a);
  return r;
}

Poly2 poly_scaled(const Poly2& a, const Frac& c) {
  Poly2 r;
  for (const auto& [k, v] : a) add_term(r, k.first, k.second, v * c);
  return r;
}

// Rational coefficients of P_l(x): coeff[k] multiplies x^k.
std::vector<Frac> legendre_coeffs(int l) {
  std::vector<Frac> c(l + 1, Frac(0));
  long long two_l = 1;
  for (int i = 0; i < l; ++i) two_l *= 2;
  for (int k = 0; k <= l / 2; ++k) {
    long long sign = (k % 2) ? -1 : 1;
    long long binom1 = std::llround(mathcore::binomial(l, k));
    long long binom2 = std::llround(mathcore::binomial(2 * l - 2 * k, l));
    c[l - 2 * k] = Frac(sign * binom1 * binom2, two_l);
  }
  return c;
}

// Polynomial part of P_l^m: coefficients of d^m/dx^m P_l(x).
std::vector<Frac> assoc_legendre_poly(int l, int m) {
  auto c = legendre_coeffs(l);
  std::vector<Frac> d(l - m + 1, Frac(0));
  for (int k = m; k <= l; ++k) {
    long long fall = 1;
    for (int t = 0; t < m; ++t) fall *= (k - t);
    d[k - m] = c[k] * Frac(fall);
  }
  return d;
}

// sum_k q_k (1 + s*mu*nu)^k (mu + s*nu)^{l-m-k} for s = +1 (center a) or
// s = -1 (center b); the arguments are cos(theta_a) = (1+mu nu)/(mu+nu) and
// cos(theta_b) = (mu nu - 1)/(mu - nu) = -(1 - mu nu)/(mu - nu).
Poly2 angular_factor(int l, int m, int s) {
  auto q = assoc_legendre_poly(l, m);
  Poly2 lin_arg;  // s*(1) + mu*nu  ... careful below
  // For s=+1: numerator (1 + mu nu); for s=-1: numerator (mu nu - 1).
  Poly2 numer;
  numer[{1, 1}] = Frac(1);
  numer[{0, 0}] = Frac(s);
  Poly2 denom;  // (mu + s nu)
  denom[{1, 0}] = Frac(1);
  denom[{0, 1}] = Frac(s);
  (void)lin_arg;
  Poly2 total;
  for (int k = 0; k <= l - m; ++k) {
    if (q[k].zero()) continue;
    Poly2 term = poly_mul(poly_pow(numer, k), poly_pow(denom, l - m - k));
    for (const auto& [key, v] : term) add_term(total, key.first, key.second, v * q[k]);
  }
  return total;
}

struct ExpansionKey {
  int n1, l1, n2, l2, m;
  bool operator<(const ExpansionKey& o) const {
    return std::tie(n1, l1, n2, l2, m) < std::tie(o.n1, o.l1, o.n2, o.l2, o.m);
  }
};

OverlapExpansion build_expansion(int n1, int l1, int n2, int l2, int m) {
  OverlapExpansion ex;
  if (m > l1 || m > l2) return ex;  // zero by symmetry

  // (mu+nu)^{n1-l1} (mu-nu)^{n2-l2} [(mu^2-1)(1-nu^2)]^m * A * B
  Poly2 plus;
  plus[{1, 0}] = Frac(1);
  plus[{0, 1}] = Frac(1);
  Poly2 minus;
  minus[{1, 0}] = Frac(1);
  minus[{0, 1}] = Frac(-1);
  Poly2 weight;  // (mu^2 - 1)(1 - nu^2)
  weight[{2, 0}] = Frac(1);
  weight[{2, 2}] = Frac(-1);
  weight[{0, 0}] = Frac(-1);
  weight[{0, 2}] = Frac(1);

  Poly2 poly = poly_pow(plus, n1 - l1);
  poly = poly_mul(poly, poly_pow(minus, n2 - l2));
  poly = poly_mul(poly, poly_pow(weight, m));
  poly = poly_mul(poly, angular_factor(l1, m, +1));
  poly = poly_mul(poly, angular_factor(l2, m, -1));

  if (poly.empty()) return ex;

  // Pull the rational content out so the Y matrix is integer.
  long long lcm = 1;
  for (const auto& [k, v] : poly) lcm = std::lcm(lcm, v.den);
  long long gcd = 0;
  for (const auto& [k, v] : poly) gcd = std::gcd(gcd, std::abs(v.num * (lcm / v.den)));
  for (const auto& [k, v] : poly)
    ex.terms.push_back({k.first, k.second, v.num * (lcm / v.den) / gcd});

  double norm1 = std::sqrt((2.0 * l1 + 1.0) / 2.0 * factorial(l1 - m) /
                           factorial(l1 + m));
  double norm2 = std::sqrt((2.0 * l2 + 1.0) / 2.0 * factorial(l2 - m) /
                           factorial(l2 + m));
  ex.D = norm1 * norm2 * (double)gcd / (double)lcm;
  return ex;
}

const OverlapExpansion& cached_expansion(int n1, int l1, int n2, int l2,
                                         int m) {
  static std::map<ExpansionKey, OverlapExpansion> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  ExpansionKey key{n1, l1, n2, l2, m};
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, build_expansion(n1, l1, n2, l2, m)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// Frame helpers.

struct Frame {
  double R;
  double theta;
  double phi;
};

Frame bond_frame(const Molecule& mol, int ci, int cj) {
  const Vec3& a = mol.centers[ci].position;
  const Vec3& b = mol.centers[cj].position;
  double dx = b[0] - a[0], dy = b[1] - a[1], dz = b[2] - a[2];
  double R = std::sqrt(dx * dx + dy * dy + dz * dz);
  double theta = (R > 0.0) ? std::acos(std::clamp(dz / R, -1.0, 1.0)) : 0.0;
  double phi = std::atan2(dy, dx);
  return {R, theta, phi};
}

double wigner_d_small(int l, int mp, int m, double beta) {
  double cb = std::cos(0.5 * beta);
  double sb = std::sin(0.5 * beta);
  int kmin = std::max(0, m - mp);
  int kmax = std::min(l + m, l - mp);
  double pref = std::sqrt(factorial(l + mp) * factorial(l - mp) *
                          factorial(l + m) * factorial(l - m));
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    double den = factorial(k) * factorial(l + m - k) * factorial(l - mp - k) *
                 factorial(mp - m + k);
    double term = 1.0 / den;
    int pc = 2 * l + m - mp - 2 * k;
    int ps = mp - m + 2 * k;
    term *= std::pow(cb, pc) * std::pow(sb, ps);
    if (k % 2) term = -term;
    sum += term;
  }
  return pref * sum;
}

double same_center_radial(int n1, double z1, int n2, double z2, int extra_r) {
  // int r^{n1 - 1} r^{n2 - 1} r^{extra_r} e^{-(z1+z2) r} r^2 dr
  int power = n1 + n2 + extra_r;
  return factorial(power) / std::pow(z1 + z2, power + 1);
}

void require_sto(const BasisFunction& b) {
  if (b.kind != BasisKind::STO)
    throw std::invalid_argument("two-center integrals: STO kind required");
}

}  // namespace

std::vector<std::complex<double>> harmonic_frame_coeffs(int l, int m,
                                                        double thetaR,
                                                        double phiR) {
  std::vector<std::complex<double>> c(2 * l + 1);
  std::complex<double> phase(std::cos(m * phiR), std::sin(m * phiR));
  for (int k = -l; k <= l; ++k)
    c[k + l] = phase * wigner_d_small(l, k, m, thetaR);
  return c;
}

ProlateFrame::ProlateFrame(double R_, double k1, double k2)
    : R(R_), alpha(k1 * R_), beta(k2 * R_) {
  if (!(R > 0.0) || !(k1 > 0.0) || !(k2 >= 0.0))
    throw std::domain_error("ProlateFrame: need R > 0 and exponents >= 0");
}

OverlapExpansion binomial_matrix(int n1, int l1, int n2, int l2, int m) {
  if (m < 0) throw std::domain_error("binomial_matrix: m must be >= 0");
  if (n1 < l1 || n2 < l2 || l1 < 0 || l2 < 0)
    throw std::domain_error("binomial_matrix: need n >= l >= 0");
  return cached_expansion(n1, l1, n2, l2, m);
}

double core_s(const OverlapExpansion& e, double p, double q) {
  if (e.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : e.terms)
    sum += (double)t.Y * aux_A(t.i, p) * aux_B(t.j, q);
  return e.D * sum;
}

double raw_two_center(int n1, int l1, int n2, int l2, int m, double z1,
                      double z2, double R) {
  const auto& ex = cached_expansion(n1, l1, n2, l2, std::abs(m));
  if (ex.empty()) return 0.0;
  double p = 0.5 * (z1 + z2) * R;
  double q = 0.5 * (z1 - z2) * R;
  return std::pow(0.5 * R, n1 + n2 + 1) * core_s(ex, p, q);
}

double overlap(const BasisFunction& b1, const BasisFunction& b2,
               const Molecule& mol) {
  require_sto(b1);
  require_sto(b2);
  double N1 = basis::normalization(b1);
  double N2 = basis::normalization(b2);
  if (b1.center_index == b2.center_index) {
    if (b1.l != b2.l || b1.m != b2.m) return 0.0;
    return N1 * N2 * same_center_radial(b1.n, b1.zeta, b2.n, b2.zeta, 0);
  }
  Frame f = bond_frame(mol, b1.center_index, b2.center_index);
  if (b1.l == 0 && b2.l == 0)
    return N1 * N2 * raw_two_center(b1.n, 0, b2.n, 0, 0, b1.zeta, b2.zeta, f.R);
  auto ca = harmonic_frame_coeffs(b1.l, b1.m, f.theta, f.phi);
  auto cb = harmonic_frame_coeffs(b2.l, b2.m, f.theta, f.phi);
  int mmax = std::min(b1.l, b2.l);
  std::complex<double> s = 0.0;
  for (int k = -mmax; k <= mmax; ++k)
    s += std::conj(ca[k + b1.l]) * cb[k + b2.l] *
         raw_two_center(b1.n, b1.l, b2.n, b2.l, k, b1.zeta, b2.zeta, f.R);
  return N1 * N2 * s.real();
}

namespace {

// <chi1 | -1/2 lap | chi2> over the bond frame for one common |m| channel,
// without normalization constants.
double kinetic_raw_channel(const BasisFunction& b1, const BasisFunction& b2,
                           int m, double R) {
  double A = b2.n * (b2.n - 1.0) - b2.l * (b2.l + 1.0);
  double sum = 0.0;
  if (A != 0.0)
    sum += A * raw_two_center(b1.n, b1.l, b2.n - 2, b2.l, m, b1.zeta, b2.zeta, R);
  sum += -2.0 * b2.zeta * b2.n *
         raw_two_center(b1.n, b1.l, b2.n - 1, b2.l, m, b1.zeta, b2.zeta, R);
  sum += b2.zeta * b2.zeta *
         raw_two_center(b1.n, b1.l, b2.n, b2.l, m, b1.zeta, b2.zeta, R);
  return -0.5 * sum;
}

}  // namespace

double kinetic(const BasisFunction& b1, const BasisFunction& b2,
               const Molecule& mol) {
  require_sto(b1);
  require_sto(b2);
  double N1 = basis::normalization(b1);
  double N2 = basis::normalization(b2);
  if (b1.center_index == b2.center_index) {
    if (b1.l != b2.l || b1.m != b2.m) return 0.0;
    double A = b2.n * (b2.n - 1.0) - b2.l * (b2.l + 1.0);
    double sum = 0.0;
    if (A != 0.0)
      sum += A * same_center_radial(b1.n, b1.zeta, b2.n - 2, b2.zeta, 0);
    sum += -2.0 * b2.zeta * b2.n *
           same_center_radial(b1.n, b1.zeta, b2.n - 1, b2.zeta, 0);
    sum += b2.zeta * b2.zeta * same_center_radial(b1.n, b1.zeta, b2.n, b2.zeta, 0);
    return -0.5 * N1 * N2 * sum;
  }
  Frame f = bond_frame(mol, b1.center_index, b2.center_index);
  if (b1.l == 0 && b2.l == 0)
    return N1 * N2 * kinetic_raw_channel(b1, b2, 0, f.R);
  auto ca = harmonic_frame_coeffs(b1.l, b1.m, f.theta, f.phi);
  auto cb = harmonic_frame_coeffs(b2.l, b2.m, f.theta, f.phi);
  int mmax = std::min(b1.l, b2.l);
  std::complex<double> s = 0.0;
  for (int k = -mmax; k <= mmax; ++k)
    s += std::conj(ca[k + b1.l]) * cb[k + b2.l] * kinetic_raw_channel(b1, b2, k, f.R);
  return N1 * N2 * s.real();
}

namespace {

// Case: both orbitals on one center A, nucleus at distance d along dhat.
double na_one_center_pair(const BasisFunction& b1, const BasisFunction& b2,
                          const Vec3& dvec) {
  double d = std::sqrt(dvec[0] * dvec[0] + dvec[1] * dvec[1] + dvec[2] * dvec[2]);
  double N1 = basis::normalization(b1);
  double N2 = basis::normalization(b2);
  double theta = std::acos(std::clamp(dvec[2] / d, -1.0, 1.0));
  double phi = std::atan2(dvec[1], dvec[0]);
  poisson::RadialDensity g;
  g.n_eff = b1.n + b2.n - 1;
  g.zeta_eff = b1.zeta + b2.zeta;
  int M = b1.m - b2.m;
  std::complex<double> sum = 0.0;
  for (int L = std::abs(b1.l - b2.l); L <= b1.l + b2.l; ++L) {
    if (std::abs(M) > L) continue;
    double G = mathcore::gaunt({b1.l, b1.m, L, M, b2.l, b2.m});
    if (G == 0.0) continue;
    g.l = L;
    double rad = poisson::radial_potential(g, d);
    std::complex<double> ylm =
        std::conj(mathcore::spherical_harmonic(L, M, theta, phi));
    sum += 4.0 * M_PI / (2.0 * L + 1.0) * G * ylm * rad;
  }
  return N1 * N2 * sum.real();
}

// Case: orbitals on A and B, nucleus on one of them. on_first selects 1/r_a;
// the 1/r factor just lowers the radial power fed to the expansion.
double na_two_center_channel(const BasisFunction& b1, const BasisFunction& b2,
                             int m, double R, bool on_first) {
  if (on_first)
    return raw_two_center(b1.n - 1, b1.l, b2.n, b2.l, m, b1.zeta, b2.zeta, R);
  return raw_two_center(b1.n, b1.l, b2.n - 1, b2.l, m, b1.zeta, b2.zeta, R);
}

// General three-center case by quadrature in spherical coordinates about C;
// the radial measure absorbs the 1/r_C singularity.
double na_three_center(const BasisFunction& b1, const BasisFunction& b2,
                       const Molecule& mol, const Vec3& c) {
  using mathcore::QuadratureSpec;
  QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  spec.abs_tol = 1e-13;
  double scale = 2.0 / (b1.zeta + b2.zeta);
  const Vec3& a = mol.centers[b1.center_index].position;
  const Vec3& b = mol.centers[b2.center_index].position;
  double da = 0.0, db = 0.0;
  for (int k = 0; k < 3; ++k) {
    da += (a[k] - c[k]) * (a[k] - c[k]);
    db += (b[k] - c[k]) * (b[k] - c[k]);
  }
  spec.b = scale + 0.5 * (std::sqrt(da) + std::sqrt(db));
  auto integrand = [&](double r, double theta, double phi) {
    double st = std::sin(theta);
    Vec3 pt{c[0] + r * st * std::cos(phi), c[1] + r * st * std::sin(phi),
            c[2] + r * std::cos(theta)};
    std::complex<double> v =
        std::conj(basis::evaluate(b1, mol, pt)) * basis::evaluate(b2, mol, pt);
    return v.real() * r;  // r^2 dr / r_C
  };
  auto res = mathcore::integrate_spherical3d(integrand, spec);
  if (!res.converged)
    throw std::runtime_error("nuclear_attraction: quadrature not converged");
  return res.value;
}

}  // namespace

double nuclear_attraction(const BasisFunction& b1, const BasisFunction& b2,
                          int nucleus, const Molecule& mol) {
  require_sto(b1);
  require_sto(b2);
  if (nucleus < 0 || nucleus >= (int)mol.centers.size())
    throw std::invalid_argument("nuclear_attraction: bad nucleus index");
  int ca = b1.center_index, cb = b2.center_index;
  const Vec3& cpos = mol.centers[nucleus].position;

  if (ca == cb) {
    if (nucleus == ca) {
      if (b1.l != b2.l || b1.m != b2.m) return 0.0;
      return basis::normalization(b1) * basis::normalization(b2) *
             same_center_radial(b1.n, b1.zeta, b2.n, b2.zeta, -1);
    }
    Vec3 d{cpos[0] - mol.centers[ca].position[0],
           cpos[1] - mol.centers[ca].position[1],
           cpos[2] - mol.centers[ca].position[2]};
    return na_one_center_pair(b1, b2, d);
  }

  double N1 = basis::normalization(b1);
  double N2 = basis::normalization(b2);
  if (nucleus == ca || nucleus == cb) {
    Frame f = bond_frame(mol, ca, cb);
    bool on_first = (nucleus == ca);
    if (b1.l == 0 && b2.l == 0)
      return N1 * N2 * na_two_center_channel(b1, b2, 0, f.R, on_first);
    auto va = harmonic_frame_coeffs(b1.l, b1.m, f.theta, f.phi);
    auto vb = harmonic_frame_coeffs(b2.l, b2.m, f.theta, f.phi);
    int mmax = std::min(b1.l, b2.l);
    std::complex<double> s = 0.0;
    for (int k = -mmax; k <= mmax; ++k)
      s += std::conj(va[k + b1.l]) * vb[k + b2.l] *
           na_two_center_channel(b1, b2, k, f.R, on_first);
    return N1 * N2 * s.real();
  }
  return na_three_center(b1, b2, mol, cpos);
}

}  // namespace sturmint::twocenter
