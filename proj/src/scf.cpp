#include "sturmint/scf/scf.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <thread>

#include "sturmint/poisson/poisson.hpp"
#include "sturmint/twocenter/twocenter.hpp"

namespace sturmint::scf {

using basis::BasisFunction;
using basis::Molecule;
using basis::Vec3;

void ScfConfig::validate() const {
  if (max_iter < 1) throw std::domain_error("ScfConfig: max_iter < 1");
  if (!(energy_tol > 0.0) || !(density_tol > 0.0))
    throw std::domain_error("ScfConfig: tolerances must be positive");
  if (damping < 0.0 || damping >= 1.0)
    throw std::domain_error("ScfConfig: damping must be in [0, 1)");
  resolution_cfg.validate();
}

EriTensor::EriTensor(int nbf) : nbf_(nbf) {
  std::size_t np = (std::size_t)nbf * (nbf + 1) / 2;
  data_.assign(np * (np + 1) / 2, 0.0);
}

std::size_t EriTensor::pair_index(int i, int j) {
  if (i < j) std::swap(i, j);
  return (std::size_t)i * (i + 1) / 2 + j;
}

double EriTensor::get(int i, int j, int k, int l) const {
  std::size_t ij = pair_index(i, j), kl = pair_index(k, l);
  if (ij < kl) std::swap(ij, kl);
  return data_[ij * (ij + 1) / 2 + kl];
}

void EriTensor::set(int i, int j, int k, int l, double v) {
  std::size_t ij = pair_index(i, j), kl = pair_index(k, l);
  if (ij < kl) std::swap(ij, kl);
  data_[ij * (ij + 1) / 2 + kl] = v;
}

OneElectron one_electron_matrices(const Molecule& mol) {
  int n = (int)mol.basis.size();
  OneElectron out;
  out.S = Matrix::Zero(n, n);
  out.T = Matrix::Zero(n, n);
  out.V = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = twocenter::overlap(mol.basis[i], mol.basis[j], mol);
      double t = twocenter::kinetic(mol.basis[i], mol.basis[j], mol);
      double v = 0.0;
      for (std::size_t c = 0; c < mol.centers.size(); ++c)
        v -= mol.nuclear_charges[c] *
             twocenter::nuclear_attraction(mol.basis[i], mol.basis[j], (int)c,
                                           mol);
      out.S(i, j) = out.S(j, i) = s;
      out.T(i, j) = out.T(j, i) = t;
      out.V(i, j) = out.V(j, i) = v;
    }
  return out;
}

namespace {

int center_span(const Molecule& mol, int i, int j, int k, int l) {
  std::vector<int> c{mol.basis[i].center_index, mol.basis[j].center_index,
                     mol.basis[k].center_index, mol.basis[l].center_index};
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return (int)c.size();
}

}  // namespace

EriTensor build_eri_tensor(const Molecule& mol, const ScfConfig& cfg) {
  int n = (int)mol.basis.size();
  EriTensor eri(n);
  resolution::AuxiliaryCache cache(mol, cfg.resolution_cfg);

  std::vector<std::array<int, 4>> quartets;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= k; ++l) {
          if (k == i && l > j) continue;
          quartets.push_back({i, j, k, l});
        }

  auto compute = [&](const std::array<int, 4>& q) {
    auto [i, j, k, l] = q;
    int span = center_span(mol, i, j, k, l);
    if (cfg.eri_route == EriRoute::poisson_preferred && span <= 2)
      return poisson::eri_exact(mol.basis[i], mol.basis[j], mol.basis[k],
                                mol.basis[l], mol);
    if (cfg.resolution_cfg.schwarz_tau > 0.0) {
      double bound = resolution::schwarz_bound(mol.basis[i], mol.basis[j], mol) *
                     resolution::schwarz_bound(mol.basis[k], mol.basis[l], mol);
      if (bound < cfg.resolution_cfg.schwarz_tau) return 0.0;
    }
    return cache.eri(i, j, k, l).value;
  };

  if (cfg.threads > 1) {
    int nt = cfg.threads;
    std::vector<double> results(quartets.size(), 0.0);
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t qi = t; qi < quartets.size(); qi += nt)
          results[qi] = compute(quartets[qi]);
      });
    for (auto& th : pool) th.join();
    for (std::size_t qi = 0; qi < quartets.size(); ++qi)
      eri.set(quartets[qi][0], quartets[qi][1], quartets[qi][2],
              quartets[qi][3], results[qi]);
  } else {
    for (const auto& q : quartets) eri.set(q[0], q[1], q[2], q[3], compute(q));
  }
  return eri;
}

ScfResult rhf(const Molecule& mol, const ScfConfig& cfg) {
  cfg.validate();
  mol.validate();
  int nelec = mol.n_electrons();
  if (nelec % 2 != 0)
    throw std::invalid_argument("rhf: odd electron count (closed shell only)");
  int nocc = nelec / 2;
  int n = (int)mol.basis.size();
  if (nocc > n) throw std::invalid_argument("rhf: basis smaller than occupation");

  OneElectron one = one_electron_matrices(mol);
  Matrix h = one.T + one.V;

  Eigen::SelfAdjointEigenSolver<Matrix> es(one.S);
  double smin = es.eigenvalues().minCoeff();
  if (smin < 1e-10)
    throw std::runtime_error(
        "rhf: overlap matrix near singular (smallest eigenvalue " +
        std::to_string(smin) + ")");
  Matrix X = es.operatorInverseSqrt();

  EriTensor eri = build_eri_tensor(mol, cfg);

  auto fock = [&](const Matrix& P) {
    Matrix G = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double g = 0.0;
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            g += P(k, l) * (eri.get(i, j, l, k) - 0.5 * eri.get(i, k, l, j));
        G(i, j) = g;
      }
    return Matrix(h + G);
  };

  auto density_from = [&](const Matrix& F) {
    Matrix Fp = X.transpose() * F * X;
    Eigen::SelfAdjointEigenSolver<Matrix> fes(Fp);
    Matrix C = X * fes.eigenvectors();
    Matrix Cocc = C.leftCols(nocc);
    return std::make_pair(Matrix(2.0 * Cocc * Cocc.transpose()),
                          fes.eigenvalues());
  };

  ScfResult out;
  out.nuclear_repulsion = mol.nuclear_repulsion();

  auto [P, eps0] = density_from(h);
  double e_old = 0.0;
  bool converged = false;
  int iter = 0;
  Eigen::VectorXd orbital_eps = eps0;
  for (iter = 1; iter <= cfg.max_iter; ++iter) {
    Matrix F = fock(P);
    double e_elec = 0.5 * (P.cwiseProduct(h + F)).sum();
    auto [Pnew, epsv] = density_from(F);
    orbital_eps = epsv;
    Matrix Pdamped = (1.0 - cfg.damping) * Pnew + cfg.damping * P;
    double dP = (Pdamped - P).cwiseAbs().maxCoeff();
    double dE = std::abs(e_elec - e_old);
    e_old = e_elec;
    P = Pdamped;
    if (iter > 1 && dE < cfg.energy_tol && dP < cfg.density_tol) {
      converged = true;
      break;
    }
  }
  // Final energy from the converged (undamped) density.
  Matrix F = fock(P);
  out.energy_electronic = 0.5 * (P.cwiseProduct(h + F)).sum();
  out.energy_total = out.energy_electronic + out.nuclear_repulsion;
  out.density = P;
  out.orbital_energies.assign(orbital_eps.data(),
                              orbital_eps.data() + orbital_eps.size());
  out.converged = converged;
  out.iterations = std::min(iter, cfg.max_iter);
  return out;
}

double interaction_energy(const Molecule& dimer, const Molecule& monomer,
                          const ScfConfig& cfg) {
  auto rd = rhf(dimer, cfg);
  auto rm = rhf(monomer, cfg);
  if (!rd.converged || !rm.converged)
    throw std::runtime_error("interaction_energy: SCF not converged");
  return (rd.energy_total - 2.0 * rm.energy_total) * kcal_per_mol_per_hartree;
}

std::vector<std::pair<double, double>> cusp_diagnostic(
    const ScfResult& result, const Molecule& mol, const Vec3& origin,
    const Vec3& dir, int samples, double r_max) {
  if (samples < 1) throw std::invalid_argument("cusp_diagnostic: samples < 1");
  double dn = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
  if (!(dn > 0.0)) throw std::invalid_argument("cusp_diagnostic: zero direction");
  Vec3 u{dir[0] / dn, dir[1] / dn, dir[2] / dn};
  int n = (int)mol.basis.size();

  auto rho = [&](double r) {
    Vec3 pt{origin[0] + r * u[0], origin[1] + r * u[1], origin[2] + r * u[2]};
    std::vector<std::complex<double>> chi(n);
    for (int i = 0; i < n; ++i) chi[i] = basis::evaluate(mol.basis[i], mol, pt);
    double v = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        v += result.density(i, j) * std::real(std::conj(chi[i]) * chi[j]);
    return v;
  };

  std::vector<std::pair<double, double>> out;
  for (int s = 1; s <= samples; ++s) {
    double r = r_max * s / samples;
    double hstep = std::min(1e-5, 0.1 * r);
    double rp = rho(r + hstep), rm = rho(r - hstep), r0 = rho(r);
    if (r0 < 1e-300) continue;
    double drho = (rp - rm) / (2.0 * hstep);
    out.emplace_back(r, -0.5 * drho / r0);
  }
  return out;
}

}  // namespace sturmint::scf
