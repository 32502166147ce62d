#include "sturmint/poisson/poisson.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sturmint/mathcore/aux_ab.hpp"
#include "sturmint/mathcore/gaunt.hpp"
#include "sturmint/mathcore/quadrature.hpp"
#include "sturmint/mathcore/special.hpp"
#include "sturmint/twocenter/twocenter.hpp"

namespace sturmint::poisson {

using basis::BasisFunction;
using basis::BasisKind;
using basis::Molecule;
using basis::Vec3;
using mathcore::factorial;

namespace {

void require_sto(const BasisFunction& b) {
  if (b.kind != BasisKind::STO)
    throw std::invalid_argument("poisson ERI: STO kind required");
}

void require_s(const BasisFunction& b) {
  if (b.l != 0)
    throw std::invalid_argument(
        "poisson two-center ERI: only s-type orbitals are closed form; use "
        "the resolution route for l > 0");
}

int center_count(std::initializer_list<const BasisFunction*> bfs) {
  std::vector<int> c;
  for (const auto* b : bfs) c.push_back(b->center_index);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return (int)c.size();
}

// ---------------------------------------------------------------------------
// One-center route.

double radial_coulomb(int m1, double s1, int m2, double s2, double scale1,
                      double scale2, int L) {
  // int g1(r) Pi_L[g2](r) r^2 dr with g_k = scale_k r^{m_k - 1} e^{-s_k r}.
  RadialDensity g2{m2, s2, L};
  mathcore::QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-16;
  auto res = mathcore::integrate_semi_infinite(
      [&](double r) {
        return std::pow(r, m1 - 1) * std::exp(-s1 * r) *
               radial_potential(g2, r) * r * r;
      },
      0.0, spec);
  return scale1 * scale2 * res.value;
}

}  // namespace

double eri_one_center(const BasisFunction& a, const BasisFunction& b,
                      const BasisFunction& c, const BasisFunction& d,
                      const Molecule& mol) {
  (void)mol;
  for (const auto* x : {&a, &b, &c, &d}) require_sto(*x);
  if (center_count({&a, &b, &c, &d}) != 1)
    throw std::invalid_argument("eri_one_center: orbitals span > 1 center");
  int M = a.m - b.m;
  if (M != d.m - c.m) return 0.0;
  double Na = basis::normalization(a) * basis::normalization(b);
  double Nc = basis::normalization(c) * basis::normalization(d);
  int Lmin = std::max({std::abs(a.l - b.l), std::abs(c.l - d.l), std::abs(M)});
  int Lmax = std::min(a.l + b.l, c.l + d.l);
  double sum = 0.0;
  for (int L = Lmin; L <= Lmax; ++L) {
    if ((a.l + b.l + L) % 2 || (c.l + d.l + L) % 2) continue;
    double g1 = mathcore::gaunt({a.l, a.m, L, M, b.l, b.m});
    double g2 = mathcore::gaunt({d.l, d.m, L, M, c.l, c.m});
    if (g1 == 0.0 || g2 == 0.0) continue;
    double rad = radial_coulomb(a.n + b.n - 1, a.zeta + b.zeta,
                                c.n + d.n - 1, c.zeta + d.zeta, Na, Nc, L);
    sum += 4.0 * M_PI / (2.0 * L + 1.0) * g1 * g2 * rad;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Closed Coulomb route: pair 1 on center A, pair 2 on center B.

namespace {

double coulomb_two_center_closed(const BasisFunction& a,
                                 const BasisFunction& b,
                                 const BasisFunction& c,
                                 const BasisFunction& d,
                                 const Molecule& mol) {
  // Potential of the (c,d) density on B expanded into 1/r and r^k e^{-beta r}
  // terms, then integrated against the (a,b) density on A with the A/B
  // auxiliary machinery.
  const auto& posA = mol.centers[a.center_index].position;
  const auto& posB = mol.centers[c.center_index].position;
  double R = 0.0;
  for (int k = 0; k < 3; ++k) {
    double t = posA[k] - posB[k];
    R += t * t;
  }
  R = std::sqrt(R);

  int mg = c.n + d.n - 2;
  double bb = c.zeta + d.zeta;
  double Qfac = factorial(mg + 2) / std::pow(bb, mg + 3);
  // V(r)/N_cN_d = Qfac/r + e^{-bb r} (coeff[k] r^{k-1}, k = 0 .. mg+2)
  std::vector<double> coeff(mg + 3, 0.0);
  double bpow = 1.0;
  for (int k = 0; k <= mg + 2; ++k) {
    coeff[k] -= Qfac * bpow / factorial(k);
    bpow *= bb;
  }
  for (int k = 0; k <= mg + 1; ++k)
    coeff[k + 1] += factorial(mg + 1) / factorial(k) / std::pow(bb, mg + 2 - k);

  int na = a.n + b.n - 1;  // density power about A
  double za = a.zeta + b.zeta;
  double sum = Qfac * twocenter::raw_two_center(na, 0, 0, 0, 0, za, 0.0, R);
  for (int k = 0; k <= mg + 2; ++k) {
    if (coeff[k] == 0.0) continue;
    sum += coeff[k] * twocenter::raw_two_center(na, 0, k, 0, 0, za, bb, R);
  }
  return basis::normalization(a) * basis::normalization(b) *
         basis::normalization(c) * basis::normalization(d) * sum;
}

// ---------------------------------------------------------------------------
// Legendre (Neumann) expansion engine for general s-type two-center
// distributions in a shared prolate frame.

struct Gl16 {
  std::array<double, 16> x{}, w{};
  Gl16() { mathcore::gauss_legendre(16, x.data(), w.data()); }
};
const Gl16& gl16() {
  static const Gl16 g;
  return g;
}

// Modified spherical Bessel i_t(q), t = 0..tmax, by downward recurrence.
std::vector<double> bessel_i_all(int tmax, double q) {
  std::vector<double> out(tmax + 1, 0.0);
  double aq = std::abs(q);
  if (aq < 1e-8) {
    double pw = 1.0;
    for (int t = 0; t <= tmax; ++t) {
      out[t] = pw * (1.0 + aq * aq / (2.0 * (2 * t + 3)));
      pw *= aq / (2 * t + 3);
    }
  } else {
    int top = tmax + 20 + (int)aq;
    std::vector<long double> tmp(top + 2, 0.0L);
    tmp[top + 1] = 0.0L;
    tmp[top] = 1e-280L;
    for (int t = top; t >= 1; --t) {
      tmp[t - 1] = tmp[t + 1] + (2.0L * t + 1.0L) / aq * tmp[t];
      if (std::abs((double)tmp[t - 1]) > 1e260) {
        for (int s = t - 1; s <= top + 1; ++s) tmp[s] *= 1e-260L;
      }
    }
    long double norm = 0.0L;
    for (int t = 0; t <= top; ++t) norm += (2.0L * t + 1.0L) * tmp[t];
    long double scale = std::exp((long double)aq) / norm;
    for (int t = 0; t <= tmax; ++t) out[t] = (double)(tmp[t] * scale);
  }
  if (q < 0.0)
    for (int t = 1; t <= tmax; t += 2) out[t] = -out[t];
  return out;
}

// Legendre Q_t(x), t = 0..tmax, x > 1, by downward (Miller) recurrence
// normalized to Q_0.
void legendre_q_all(int tmax, double x, double* out) {
  double q0 = 0.5 * std::log((x + 1.0) / (x - 1.0));
  if (tmax >= 0) out[0] = q0;
  if (tmax == 0) return;
  int top = tmax + 24;
  std::vector<long double> tmp(top + 2, 0.0L);
  tmp[top + 1] = 0.0L;
  tmp[top] = 1e-270L;
  for (int t = top; t >= 1; --t) {
    tmp[t - 1] = ((2.0L * t + 1.0L) * (long double)x * tmp[t] -
                  (t + 1.0L) * tmp[t + 1]) /
                 (long double)t;
    if (std::abs((double)tmp[t - 1]) > 1e250) {
      for (int s = t - 1; s <= top + 1; ++s) tmp[s] *= 1e-250L;
    }
  }
  long double scale = (long double)q0 / tmp[0];
  for (int t = 1; t <= tmax; ++t) out[t] = (double)(tmp[t] * scale);
}

// Legendre P_t(x), t = 0..tmax (stable upward).
void legendre_p_all(int tmax, double x, double* out) {
  out[0] = 1.0;
  if (tmax == 0) return;
  out[1] = x;
  for (int t = 1; t < tmax; ++t)
    out[t + 1] = ((2.0 * t + 1.0) * x * out[t] - t * out[t - 1]) / (t + 1.0);
}

// Coefficients of nu^j P_tau(nu) in the Legendre basis, via j applications
// of the x P_t recurrence. Returns c[t] with t = 0 .. tau + j.
std::vector<double> nu_power_times_p(int j, int tau) {
  std::vector<double> c(tau + j + 1, 0.0);
  c[tau] = 1.0;
  for (int rep = 0; rep < j; ++rep) {
    std::vector<double> nc(c.size(), 0.0);
    for (int t = 0; t < (int)c.size(); ++t) {
      if (c[t] == 0.0) continue;
      // x P_t = (t+1)/(2t+1) P_{t+1} + t/(2t+1) P_{t-1}
      if (t + 1 < (int)nc.size()) nc[t + 1] += c[t] * (t + 1.0) / (2.0 * t + 1.0);
      if (t >= 1) nc[t - 1] += c[t] * t / (2.0 * t + 1.0);
    }
    c.swap(nc);
  }
  return c;
}

// One s-type orbital-pair distribution expressed in the prolate frame of
// centers (A, B): integer table of (mu+nu)^powA (mu-nu)^powB and exponents.
struct AxialDistribution {
  double norm = 1.0;  // product of the two orbital normalizations
  int powA = 1, powB = 1;
  double p = 0.0, q = 0.0;
  int imax = 0, jmax = 0;
  // dense table a[i][j]
  std::vector<std::vector<double>> table;

  // C_{i tau} = sum_j a_{ij} Bleg_{tau, j}(q)
  std::vector<std::vector<double>> C;  // [tau][i]
};

AxialDistribution make_distribution(const BasisFunction& u,
                                    const BasisFunction& v, int centerA,
                                    int centerB, double R, int tau_max) {
  AxialDistribution d;
  d.norm = basis::normalization(u) * basis::normalization(v);
  int nA = 0, nB = 0;
  double zA = 0.0, zB = 0.0;
  for (const auto* b : {&u, &v}) {
    if (b->center_index == centerA) {
      nA += b->n - 1;
      zA += b->zeta;
    } else if (b->center_index == centerB) {
      nB += b->n - 1;
      zB += b->zeta;
    } else {
      throw std::logic_error("make_distribution: orbital off frame");
    }
  }
  d.powA = nA + 1;
  d.powB = nB + 1;
  d.p = 0.5 * (zA + zB) * R;
  d.q = 0.5 * (zA - zB) * R;
  d.imax = d.powA + d.powB;
  d.jmax = d.powA + d.powB;
  d.table.assign(d.imax + 1, std::vector<double>(d.jmax + 1, 0.0));
  for (int s = 0; s <= d.powA; ++s) {
    double c1 = mathcore::binomial(d.powA, s);
    for (int t = 0; t <= d.powB; ++t) {
      double c2 = mathcore::binomial(d.powB, t);
      double sign = ((d.powB - t) % 2) ? -1.0 : 1.0;
      d.table[s + t][d.powA + d.powB - s - t] += c1 * c2 * sign;
    }
  }
  // nu integrals: Bleg_{tau, j}(q) = sum_t gamma^{(j,tau)}_t 2 (-1)^t i_t(q)
  auto bi = bessel_i_all(tau_max + d.jmax + 1, d.q);
  d.C.assign(tau_max + 1, std::vector<double>(d.imax + 1, 0.0));
  for (int tau = 0; tau <= tau_max; ++tau) {
    for (int j = 0; j <= d.jmax; ++j) {
      auto gam = nu_power_times_p(j, tau);
      double bleg = 0.0;
      for (int t = 0; t < (int)gam.size(); ++t) {
        if (gam[t] == 0.0) continue;
        double ct = 2.0 * ((t % 2) ? -bi[t] : bi[t]);
        bleg += gam[t] * ct;
      }
      if (bleg == 0.0) continue;
      for (int i = 0; i <= d.imax; ++i)
        if (d.table[i][j] != 0.0) d.C[tau][i] += d.table[i][j] * bleg;
    }
  }
  return d;
}

double eval_G(const AxialDistribution& d, int tau, double x) {
  double poly = 0.0;
  double xp = 1.0;
  for (int i = 0; i <= d.imax; ++i) {
    poly += d.C[tau][i] * xp;
    xp *= x;
  }
  return poly * std::exp(-d.p * (x - 1.0));  // scaled; see note below
}

// The e^{-p} offset is factored out of G to avoid underflow; every product
// G1 * G2 integral carries e^{-(p1+p2)} restored at assembly time.

std::vector<double> make_panels(double p1, double p2, int imax) {
  double pmin = std::max(1e-3, std::min(p1, p2));
  double span = (55.0 + 3.0 * imax) / pmin;
  std::vector<double> bounds;
  bounds.push_back(1.0);
  double d = 1e-8;
  while (d < 0.4) {
    bounds.push_back(1.0 + d);
    d *= 5.0;
  }
  double x = bounds.back();
  double w = std::min(1.0, 2.0 / pmin);
  while (x - 1.0 < span) {
    x += w;
    bounds.push_back(x);
    w *= 1.25;
  }
  return bounds;
}

struct NeumannWorkspace {
  int tau_max;
  std::vector<double> panels;
  // cumulative integrals at panel boundaries, for distribution 2:
  // A2[tau][k] = int_1^{panels[k]} G2 P_tau, B2[tau][k] = int_{panels[k]}^inf G2 Q_tau
  std::vector<std::vector<double>> A2, B2;
};

NeumannWorkspace build_workspace(const AxialDistribution& d2, double p1,
                                 int tau_max) {
  NeumannWorkspace ws;
  ws.tau_max = tau_max;
  ws.panels = make_panels(p1, d2.p, d2.imax);
  int np = (int)ws.panels.size();
  ws.A2.assign(tau_max + 1, std::vector<double>(np, 0.0));
  ws.B2.assign(tau_max + 1, std::vector<double>(np, 0.0));
  const auto& g = gl16();
  std::vector<double> P(tau_max + 1), Q(tau_max + 1);
  // forward cumulative of G2 P_tau
  for (int k = 0; k + 1 < np; ++k) {
    double a = ws.panels[k], b = ws.panels[k + 1];
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    std::vector<double> inc(tau_max + 1, 0.0);
    for (int i = 0; i < 16; ++i) {
      double y = c + h * g.x[i];
      legendre_p_all(tau_max, y, P.data());
      for (int tau = 0; tau <= tau_max; ++tau) {
        double gv = eval_G(d2, tau, y);
        inc[tau] += g.w[i] * gv * P[tau];
      }
    }
    for (int tau = 0; tau <= tau_max; ++tau)
      ws.A2[tau][k + 1] = ws.A2[tau][k] + h * inc[tau];
  }
  // backward cumulative of G2 Q_tau (tail beyond the last panel ~ 0)
  for (int k = np - 2; k >= 0; --k) {
    double a = ws.panels[k], b = ws.panels[k + 1];
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    std::vector<double> inc(tau_max + 1, 0.0);
    for (int i = 0; i < 16; ++i) {
      double y = c + h * g.x[i];
      legendre_q_all(tau_max, y, Q.data());
      for (int tau = 0; tau <= tau_max; ++tau) {
        double gv = eval_G(d2, tau, y);
        inc[tau] += g.w[i] * gv * Q[tau];
      }
    }
    for (int tau = 0; tau <= tau_max; ++tau)
      ws.B2[tau][k] = ws.B2[tau][k + 1] + h * inc[tau];
  }
  return ws;
}

// Per-tau coupled integrals M_tau = int G1(x) [Q_tau(x) A2_tau(x) +
// P_tau(x) B2_tau(x)] dx over the same panels.
std::vector<double> coupled_integrals(const AxialDistribution& d1,
                                      const AxialDistribution& d2,
                                      const NeumannWorkspace& ws) {
  int tau_max = ws.tau_max;
  const auto& g = gl16();
  std::vector<double> M(tau_max + 1, 0.0);
  std::vector<double> P(tau_max + 1), Q(tau_max + 1), Pi(tau_max + 1),
      Qi(tau_max + 1);
  std::vector<double> partialA(tau_max + 1), partialB(tau_max + 1);
  int np = (int)ws.panels.size();
  for (int k = 0; k + 1 < np; ++k) {
    double a = ws.panels[k], b = ws.panels[k + 1];
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (int io = 0; io < 16; ++io) {
      double x = c + h * g.x[io];
      legendre_p_all(tau_max, x, P.data());
      legendre_q_all(tau_max, x, Q.data());
      // partial inner integrals over [a, x] and [x, b]
      std::fill(partialA.begin(), partialA.end(), 0.0);
      std::fill(partialB.begin(), partialB.end(), 0.0);
      double hh = 0.5 * (x - a), cc = 0.5 * (x + a);
      for (int ii = 0; ii < 16; ++ii) {
        double y = cc + hh * g.x[ii];
        legendre_p_all(tau_max, y, Pi.data());
        for (int tau = 0; tau <= tau_max; ++tau)
          partialA[tau] += g.w[ii] * eval_G(d2, tau, y) * Pi[tau];
      }
      double hb = 0.5 * (b - x), cb2 = 0.5 * (b + x);
      for (int ii = 0; ii < 16; ++ii) {
        double y = cb2 + hb * g.x[ii];
        legendre_q_all(tau_max, y, Qi.data());
        for (int tau = 0; tau <= tau_max; ++tau)
          partialB[tau] += g.w[ii] * eval_G(d2, tau, y) * Qi[tau];
      }
      for (int tau = 0; tau <= tau_max; ++tau) {
        double A2x = ws.A2[tau][k] + hh * partialA[tau];
        double B2x = ws.B2[tau][k + 1] + hb * partialB[tau];
        double g1 = eval_G(d1, tau, x);
        M[tau] += g.w[io] * h * g1 * (Q[tau] * A2x + P[tau] * B2x);
      }
    }
  }
  return M;
}

int choose_tau_max(const AxialDistribution& probe1,
                   const AxialDistribution& probe2) {
  // Polynomial reach plus the superexponential decay of i_t(q).
  int floor_tau = probe1.jmax + probe2.jmax + 2;
  double q1 = std::abs(probe1.q), q2 = std::abs(probe2.q);
  auto b1 = bessel_i_all(40, q1);
  auto b2 = bessel_i_all(40, q2);
  int tau = floor_tau;
  while (tau < 36) {
    double r1 = b1[tau] / std::max(b1[0], 1e-300);
    double r2 = b2[tau] / std::max(b2[0], 1e-300);
    if (std::abs(r1 * r2) < 1e-19) break;
    ++tau;
  }
  return tau;
}

struct FramePair {
  int centerA, centerB;
  double R;
};

FramePair find_frame(const BasisFunction& a, const BasisFunction& b,
                     const BasisFunction& c, const BasisFunction& d,
                     const Molecule& mol) {
  std::vector<int> centers;
  for (const auto* x : {&a, &b, &c, &d}) centers.push_back(x->center_index);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  if (centers.size() != 2)
    throw std::invalid_argument("two-center ERI: orbitals must span 2 centers");
  const auto& pa = mol.centers[centers[0]].position;
  const auto& pb = mol.centers[centers[1]].position;
  double R = 0.0;
  for (int k = 0; k < 3; ++k) {
    double t = pa[k] - pb[k];
    R += t * t;
  }
  return {centers[0], centers[1], std::sqrt(R)};
}

double neumann_eri(const BasisFunction& a, const BasisFunction& b,
                   const BasisFunction& c, const BasisFunction& d,
                   const Molecule& mol) {
  for (const auto* x : {&a, &b, &c, &d}) require_s(*x);
  FramePair f = find_frame(a, b, c, d, mol);
  // tau_max from cheap probes of the two nu-profiles
  AxialDistribution d1 = make_distribution(a, b, f.centerA, f.centerB, f.R, 0);
  AxialDistribution d2 = make_distribution(c, d, f.centerA, f.centerB, f.R, 0);
  int tau_max = choose_tau_max(d1, d2);
  d1 = make_distribution(a, b, f.centerA, f.centerB, f.R, tau_max);
  d2 = make_distribution(c, d, f.centerA, f.centerB, f.R, tau_max);
  auto ws = build_workspace(d2, d1.p, tau_max);
  auto M = coupled_integrals(d1, d2, ws);
  double sum = 0.0;
  for (int tau = 0; tau <= tau_max; ++tau) sum += (2.0 * tau + 1.0) * M[tau];
  int ntot = a.n + b.n + c.n + d.n;
  double pref = d1.norm * d2.norm * 0.25 * (2.0 / f.R) *
                std::pow(0.5 * f.R, ntot + 2) *
                std::exp(-(d1.p + d2.p));  // restore the factored exponents
  return pref * sum;
}

}  // namespace

double eri_two_center(const BasisFunction& a, const BasisFunction& b,
                      const BasisFunction& c, const BasisFunction& d,
                      const Molecule& mol) {
  for (const auto* x : {&a, &b, &c, &d}) require_sto(*x);
  if (center_count({&a, &b, &c, &d}) != 2)
    throw std::invalid_argument("eri_two_center: orbitals must span 2 centers");
  bool pair1_one = (a.center_index == b.center_index);
  bool pair2_one = (c.center_index == d.center_index);
  if (pair1_one && pair2_one && a.center_index != c.center_index) {
    if (a.l == 0 && b.l == 0 && c.l == 0 && d.l == 0)
      return coulomb_two_center_closed(a, b, c, d, mol);
    // One-center densities with l > 0 still have a finite multipole sum;
    // not needed by the s-type SCF surface.
    throw std::invalid_argument(
        "eri_two_center: l > 0 Coulomb not implemented; use resolution");
  }
  return neumann_eri(a, b, c, d, mol);
}

double eri_exact(const BasisFunction& a, const BasisFunction& b,
                 const BasisFunction& c, const BasisFunction& d,
                 const Molecule& mol) {
  int nc = center_count({&a, &b, &c, &d});
  if (nc == 1) return eri_one_center(a, b, c, d, mol);
  if (nc == 2) return eri_two_center(a, b, c, d, mol);
  throw std::invalid_argument(
      "eri_exact: 3- and 4-center integrals need the resolution route");
}

// ---------------------------------------------------------------------------
// Pair potential and the per-integral quadrature fallback.

namespace {

struct PreparedPairPotential {
  bool one_center = false;
  // one-center case
  Vec3 center{};
  RadialDensity gdens{};
  double norm = 1.0;
  // two-center case
  FramePair frame{};
  Vec3 posA{}, posB{};
  int tau_max = 0;
  AxialDistribution dist;
  NeumannWorkspace ws;
  double pref = 0.0;

  double eval(const Vec3& point) const;
};

PreparedPairPotential prepare_pair_potential(const BasisFunction& a,
                                             const BasisFunction& b,
                                             const Molecule& mol) {
  require_sto(a);
  require_sto(b);
  require_s(a);
  require_s(b);
  PreparedPairPotential pp;
  if (a.center_index == b.center_index) {
    pp.one_center = true;
    pp.center = mol.centers[a.center_index].position;
    pp.gdens = RadialDensity{a.n + b.n - 1, a.zeta + b.zeta, 0};
    pp.norm = basis::normalization(a) * basis::normalization(b);
    return pp;
  }
  pp.frame = find_frame(a, a, b, b, mol);
  pp.posA = mol.centers[pp.frame.centerA].position;
  pp.posB = mol.centers[pp.frame.centerB].position;
  {
    AxialDistribution probe =
        make_distribution(a, b, pp.frame.centerA, pp.frame.centerB, pp.frame.R, 0);
    auto bi = bessel_i_all(40, std::abs(probe.q));
    pp.tau_max = probe.jmax + 4;
    while (pp.tau_max < 36 &&
           std::abs(bi[pp.tau_max] / std::max(bi[0], 1e-300)) > 1e-15)
      ++pp.tau_max;
  }
  pp.dist = make_distribution(a, b, pp.frame.centerA, pp.frame.centerB,
                              pp.frame.R, pp.tau_max);
  pp.ws = build_workspace(pp.dist, pp.dist.p, pp.tau_max);
  pp.pref = pp.dist.norm * 0.5 * std::pow(0.5 * pp.frame.R, a.n + b.n + 1) *
            (2.0 / pp.frame.R) * std::exp(-pp.dist.p);
  return pp;
}

double PreparedPairPotential::eval(const Vec3& point) const {
  if (one_center) {
    double d = 0.0;
    for (int k = 0; k < 3; ++k) {
      double t = point[k] - center[k];
      d += t * t;
    }
    return norm * radial_potential(gdens, std::sqrt(d));
  }
  double ra = 0.0, rb = 0.0;
  for (int k = 0; k < 3; ++k) {
    double t1 = point[k] - posA[k], t2 = point[k] - posB[k];
    ra += t1 * t1;
    rb += t2 * t2;
  }
  ra = std::sqrt(ra);
  rb = std::sqrt(rb);
  double mu = std::max(1.0 + 1e-14, (ra + rb) / frame.R);
  double nu = std::clamp((ra - rb) / frame.R, -1.0, 1.0);

  const auto& g = gl16();
  std::vector<double> P(tau_max + 1), Q(tau_max + 1), Pi(tau_max + 1),
      Qi(tau_max + 1);
  legendre_p_all(tau_max, mu, P.data());
  legendre_q_all(tau_max, mu, Q.data());
  int k = 0;
  while (k + 2 < (int)ws.panels.size() && ws.panels[k + 1] < mu) ++k;
  int kb = std::min(k + 1, (int)ws.panels.size() - 1);
  double aP = ws.panels[k], bP = std::max(mu, ws.panels[kb]);
  std::vector<double> partialA(tau_max + 1, 0.0), partialB(tau_max + 1, 0.0);
  double hh = 0.5 * (mu - aP), cc = 0.5 * (mu + aP);
  for (int i = 0; i < 16; ++i) {
    double y = cc + hh * g.x[i];
    legendre_p_all(tau_max, y, Pi.data());
    for (int tau = 0; tau <= tau_max; ++tau)
      partialA[tau] += g.w[i] * eval_G(dist, tau, y) * Pi[tau];
  }
  double hb = 0.5 * (bP - mu), cb2 = 0.5 * (bP + mu);
  for (int i = 0; i < 16; ++i) {
    double y = cb2 + hb * g.x[i];
    legendre_q_all(tau_max, y, Qi.data());
    for (int tau = 0; tau <= tau_max; ++tau)
      partialB[tau] += g.w[i] * eval_G(dist, tau, y) * Qi[tau];
  }
  std::vector<double> nuP(tau_max + 1);
  legendre_p_all(tau_max, nu, nuP.data());
  double sum = 0.0;
  for (int tau = 0; tau <= tau_max; ++tau) {
    double A2 = ws.A2[tau][k] + hh * partialA[tau];
    double B2 = ws.B2[tau][kb] + hb * partialB[tau];
    sum += (2.0 * tau + 1.0) * nuP[tau] * (Q[tau] * A2 + P[tau] * B2);
  }
  return pref * sum;
}

}  // namespace

double pair_potential(const BasisFunction& a, const BasisFunction& b,
                      const Molecule& mol, const Vec3& point) {
  return prepare_pair_potential(a, b, mol).eval(point);
}

double eri_quadrature(const BasisFunction& a, const BasisFunction& b,
                      const BasisFunction& c, const BasisFunction& d,
                      const Molecule& mol, double abs_tol) {
  require_s(c);
  require_s(d);
  auto pp = prepare_pair_potential(a, b, mol);
  const auto& pc = mol.centers[c.center_index].position;
  const auto& pd = mol.centers[d.center_index].position;
  Vec3 mid{0.5 * (pc[0] + pd[0]), 0.5 * (pc[1] + pd[1]),
           0.5 * (pc[2] + pd[2])};
  double Rcd = 0.0;
  for (int k = 0; k < 3; ++k) {
    double t = pc[k] - pd[k];
    Rcd += t * t;
  }
  Rcd = std::sqrt(Rcd);
  mathcore::QuadratureSpec spec;
  spec.abs_tol = abs_tol * 0.3;
  spec.rel_tol = 1e-8;
  spec.b = 0.5 * Rcd + 2.0 / (c.zeta + d.zeta);
  auto res = mathcore::integrate_spherical3d(
      [&](double r, double theta, double phi) {
        double st = std::sin(theta);
        Vec3 pt{mid[0] + r * st * std::cos(phi),
                mid[1] + r * st * std::sin(phi), mid[2] + r * std::cos(theta)};
        double dens = std::real(std::conj(basis::evaluate(c, mol, pt)) *
                                basis::evaluate(d, mol, pt));
        if (dens == 0.0) return 0.0;
        return dens * pp.eval(pt) * r * r;
      },
      spec);
  return res.value;
}

}  // namespace sturmint::poisson
