#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sturmint/basis/basis.hpp"
#include "sturmint/resolution/resolution.hpp"

namespace sturmint::scf {

using Matrix = Eigen::MatrixXd;

enum class EriRoute { poisson_preferred, resolution_only };

struct ScfConfig {
  int max_iter = 100;
  double energy_tol = 1e-9;   // Ha
  double density_tol = 1e-7;
  double damping = 0.3;       // fraction of the old density kept
  EriRoute eri_route = EriRoute::poisson_preferred;
  resolution::ResolutionConfig resolution_cfg{};
  int threads = 1;

  void validate() const;
};

struct ScfResult {
  double energy_total = 0.0;       // Ha
  double energy_electronic = 0.0;  // Ha
  double nuclear_repulsion = 0.0;  // Ha
  Matrix density;
  std::vector<double> orbital_energies;
  bool converged = false;
  int iterations = 0;
};

/// Symmetric container for (ij|kl) with 8-fold permutational symmetry.
class EriTensor {
 public:
  explicit EriTensor(int nbf);
  double get(int i, int j, int k, int l) const;
  void set(int i, int j, int k, int l, double v);
  int nbf() const { return nbf_; }

 private:
  static std::size_t pair_index(int i, int j);
  int nbf_;
  std::vector<double> data_;
};

struct OneElectron {
  Matrix S, T, V;
};

OneElectron one_electron_matrices(const basis::Molecule& mol);

/// Builds the full ERI tensor. poisson_preferred uses closed routes for
/// integrals spanning <= 2 centers and the resolution for 3-/4-center ones.
EriTensor build_eri_tensor(const basis::Molecule& mol, const ScfConfig& cfg);

/// Closed-shell restricted Hartree-Fock with symmetric orthogonalization and
/// damped density updates. Core-Hamiltonian initial guess.
ScfResult rhf(const basis::Molecule& mol, const ScfConfig& cfg = {});

/// E(dimer) - 2 E(monomer) in kcal/mol.
double interaction_energy(const basis::Molecule& dimer,
                          const basis::Molecule& monomer,
                          const ScfConfig& cfg = {});

constexpr double kcal_per_mol_per_hartree = 627.509474;

/// Samples of -1/2 (d rho / d r) / rho along a ray from `origin` in
/// direction `dir` (normalized internally), r in (0, r_max].
std::vector<std::pair<double, double>> cusp_diagnostic(
    const ScfResult& result, const basis::Molecule& mol,
    const basis::Vec3& origin, const basis::Vec3& dir, int samples,
    double r_max = 2.0);

}  // namespace sturmint::scf
