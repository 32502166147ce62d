#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "sturmint/basis/basis.hpp"

namespace sturmint::resolution {

/// h_n(x) = sqrt(2) L_n(2x) e^{-x}, orthonormal on [0, inf).
double h_fn(int n, double x);

/// V_nl(r) = int_0^inf h_n(x) j_l(r x) dx in closed form (stable series for
/// small r, Laplace-transform recurrences otherwise). l <= 6.
double potential_V(int n, int l, double r);

/// The defining Hankel-type integral evaluated by blockwise adaptive
/// quadrature between oscillation scales; reference implementation for
/// validating potential_V. Throws on non-convergence.
double potential_V_quadrature(int n, int l, double r, double tol = 1e-10);

/// One resolution potential phi_{nlm}(r) = sqrt(lambda) * 2 sqrt(2) *
/// V_nl(lambda |r - origin|) Y_l^m about `origin`.
struct ResolutionPotential {
  int n = 0;
  int l = 0;
  int m = 0;
  double scale = 1.0;  // lambda
  basis::Vec3 origin{0.0, 0.0, 0.0};
};

struct ResolutionConfig {
  int n_max = 25;  // n runs over 0 .. n_max-1
  int l_max = 4;
  double eps = 1e-6;  // absolute ERI target
  double scale = 1.0;
  double schwarz_tau = 0.0;

  void validate() const;
};

struct EriResult {
  double value = 0.0;
  int terms_used = 0;       // completed (n,l) blocks
  double tail_estimate = 0.0;
  bool converged = true;
};

/// Overlap-like auxiliary <conj(chi_a) chi_b phi> including all potential
/// normalization factors, so that (ab|cd) = sum_i aux_ab(i) conj(aux_dc(i)).
std::complex<double> auxiliary(const basis::BasisFunction& a,
                               const basis::BasisFunction& b,
                               const ResolutionPotential& pot,
                               const basis::Molecule& mol);

/// Dense block of auxiliaries for one orbital pair and one potential origin:
/// all (n, l, m) with n < n_max, l <= l_max, |m| <= l, at scale lambda.
/// Index layout: for l in 0..l_max, m in -l..l, n in 0..n_max-1.
struct AuxiliaryBlock {
  int n_max = 0;
  int l_max = 0;
  std::vector<std::complex<double>> values;

  std::complex<double> at(int n, int l, int m) const;
  static int index(int n, int l, int m, int n_max);
};

AuxiliaryBlock auxiliary_block(const basis::BasisFunction& a,
                               const basis::BasisFunction& b,
                               const basis::Vec3& origin, double lambda,
                               int n_max, int l_max,
                               const basis::Molecule& mol);

/// Potential origin used by eri_resolution: the atom of a one-center pair
/// when present, else the midpoint of the (a,b) pair's centers.
basis::Vec3 resolution_origin(const basis::BasisFunction& a,
                              const basis::BasisFunction& b,
                              const basis::BasisFunction& c,
                              const basis::BasisFunction& d,
                              const basis::Molecule& mol);

/// (ab|cd) by the Coulomb-operator resolution, truncated at cfg.n_max /
/// cfg.l_max with the per-(n,l)-block tail rule. Screened pairs return 0
/// with terms_used = 0.
EriResult eri_resolution(const basis::BasisFunction& a,
                         const basis::BasisFunction& b,
                         const basis::BasisFunction& c,
                         const basis::BasisFunction& d,
                         const basis::Molecule& mol,
                         const ResolutionConfig& cfg);

/// sqrt((ab|ab)) computed by the exact route (pairs span at most 2 centers).
double schwarz_bound(const basis::BasisFunction& a,
                     const basis::BasisFunction& b,
                     const basis::Molecule& mol);

/// Shared store of auxiliary blocks keyed by (pair, origin): the same
/// auxiliaries serve many integrals. Safe for concurrent readers;
/// insertions are serialized.
class AuxiliaryCache {
 public:
  AuxiliaryCache(const basis::Molecule& mol, ResolutionConfig cfg);

  const AuxiliaryBlock& block(int p, int q, const basis::Vec3& origin);

  /// (ij|kl) over basis indices with the same truncation rule as
  /// eri_resolution (no Schwarz screening here).
  EriResult eri(int i, int j, int k, int l);

  const ResolutionConfig& config() const { return cfg_; }

 private:
  const basis::Molecule& mol_;
  ResolutionConfig cfg_;
  std::map<std::tuple<int, int, long long, long long, long long>,
           std::shared_ptr<const AuxiliaryBlock>>
      blocks_;
  std::shared_mutex mutex_;
};

}  // namespace sturmint::resolution
