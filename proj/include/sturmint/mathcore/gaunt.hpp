#pragma once

namespace sturmint::mathcore {

/// Key of one Gaunt coefficient <Y_l1^m1 | Y_L^M Y_lam^mu>, i.e. the plain
/// triple product integral
///   G = int conj(Y_l1^m1) Y_L^M Y_lam^mu dOmega
/// under the Condon-Shortley convention. No 4pi factors are applied.
struct GauntKey {
  int l1, m1;
  int L, M;
  int lam, mu;

  bool operator==(const GauntKey&) const = default;
};

/// Gaunt coefficient by adaptive quadrature over the sphere, cached per key.
/// Returns exactly 0.0 when a selection rule fails (mu != m1 - M, triangle
/// rule, or odd parity of l1 + L + lam).
double gaunt(const GauntKey& key);

/// Wigner 3j symbol (Racah formula); valid for small angular momenta.
double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3);

/// Same Gaunt coefficient from the closed 3j product form (fast path; the
/// quadrature above is the reference).
double gaunt_3j(const GauntKey& key);

}  // namespace sturmint::mathcore
