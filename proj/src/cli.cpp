#include "sturmint/cli/app.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "sturmint/basis/parse.hpp"
#include "sturmint/nmr/nmr.hpp"
#include "sturmint/poisson/poisson.hpp"
#include "sturmint/resolution/resolution.hpp"
#include "sturmint/scf/scf.hpp"
#include "sturmint/version.hpp"

namespace sturmint::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

json tagged(double v, const char* unit) {
  return json{{"value", v}, {"unit", unit}};
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string label_of(const std::vector<int>& idx) {
  bool small = true;
  for (int i : idx)
    if (i + 1 > 9) small = false;
  std::string s;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k && !small) s += '.';
    s += std::to_string(idx[k] + 1);
  }
  return s;
}

struct Timings {
  Clock::time_point start = Clock::now();
  json out = json::object();
  void lap(const std::string& name) {
    auto now = Clock::now();
    double ms =
        std::chrono::duration_cast<std::chrono::microseconds>(now - start)
            .count() /
        1000.0;
    out[name] = tagged(ms, "ms");
    start = now;
  }
};

basis::Molecule rotated(const basis::Molecule& mol, char axis, double deg) {
  basis::Molecule out = mol;
  double a = deg * M_PI / 180.0;
  double c = std::cos(a), s = std::sin(a);
  for (auto& ctr : out.centers) {
    auto& p = ctr.position;
    double x = p[0], y = p[1], z = p[2];
    switch (axis) {
      case 'x': p = {x, c * y - s * z, s * y + c * z}; break;
      case 'y': p = {c * x + s * z, y, -s * x + c * z}; break;
      case 'z': p = {c * x - s * y, s * x + c * y, z}; break;
      default: throw std::invalid_argument("rotate: axis must be x, y or z");
    }
  }
  return out;
}

// Table-1 reporting convention: each one-center Coulomb (ii|jj) is divided
// by its equal-exponent pattern constant, i.e. by the value the same
// integral takes when both exponents are 1 (5/8 for a 1s/1s pattern). The
// diagonal then reads back the orbital exponent itself.
double table1_pattern_constant(const basis::BasisFunction& a,
                               const basis::BasisFunction& b,
                               const basis::Molecule& mol) {
  basis::BasisFunction ua = a, ub = b;
  ua.zeta = 1.0;
  ub.zeta = 1.0;
  return poisson::eri_one_center(ua, ua, ub, ub, mol);
}

int emit(const json& doc, bool pretty) {
  if (pretty)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << doc.dump() << "\n";
  return 0;
}

struct CommonOpts {
  std::string input;
  double eps = 1e-6;
  std::string route = "hybrid";
  int threads = 1;
  bool pretty = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("input", o.input, "geometry+basis input file")->required();
  cmd->add_option("--eps", o.eps, "target absolute ERI accuracy");
  cmd->add_option("--route", o.route, "poisson | resolution | hybrid");
  cmd->add_option("--threads", o.threads, "worker thread cap");
  cmd->add_flag("--pretty", o.pretty, "indented JSON output");
}

json report_header(const std::string& command, const std::string& input_text) {
  json doc;
  doc["command"] = command;
  doc["inputs_digest"] = fnv1a_digest(input_text);
  doc["tool_version"] = version_string;
  return doc;
}

int cmd_integrals(const CommonOpts& o, bool table1_convention) {
  std::string text = read_file(o.input);
  auto mol = basis::parse_molecule(text);
  json doc = report_header("integrals", text);
  Timings tm;
  int n = (int)mol.basis.size();

  json one_center = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      if (mol.basis[i].center_index != mol.basis[j].center_index) continue;
      double v = poisson::eri_one_center(mol.basis[i], mol.basis[i],
                                         mol.basis[j], mol.basis[j], mol);
      json row;
      row["label"] = label_of({i, i, j, j});
      row["coulomb"] = tagged(v, "Ha");
      if (table1_convention) {
        double c = table1_pattern_constant(mol.basis[i], mol.basis[j], mol);
        row["table1"] = tagged(v / c, "dimensionless");
      }
      one_center.push_back(row);
    }
  tm.lap("one_center_coulomb");

  json atomic_exchange = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      if (mol.basis[i].center_index != mol.basis[j].center_index) continue;
      double v = poisson::eri_one_center(mol.basis[i], mol.basis[j],
                                         mol.basis[i], mol.basis[j], mol);
      json row;
      row["label"] = label_of({i, j, i, j});
      row["exchange"] = tagged(v, "Ha");
      atomic_exchange.push_back(row);
    }
  tm.lap("atomic_exchange");

  // Two-center exchange over mixed pairs.
  std::vector<std::pair<int, int>> mixed;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (mol.basis[i].center_index != mol.basis[j].center_index)
        mixed.push_back({i, j});
  json two_center = json::array();
  for (std::size_t p = 0; p < mixed.size(); ++p)
    for (std::size_t q = p; q < mixed.size(); ++q) {
      auto [i, j] = mixed[p];
      auto [k, l] = mixed[q];
      double v = poisson::eri_two_center(mol.basis[i], mol.basis[j],
                                         mol.basis[k], mol.basis[l], mol);
      json row;
      row["label"] = label_of({i, j, k, l});
      row["exchange"] = tagged(v, "Ha");
      two_center.push_back(row);
    }
  tm.lap("two_center_exchange");

  doc["results"]["one_center_coulomb"] = one_center;
  doc["results"]["atomic_exchange"] = atomic_exchange;
  doc["results"]["two_center_exchange"] = two_center;
  doc["timings"] = tm.out;
  return emit(doc, o.pretty);
}

scf::ScfConfig scf_config_from(const CommonOpts& o) {
  scf::ScfConfig cfg;
  cfg.threads = o.threads;
  cfg.resolution_cfg.eps = o.eps;
  if (o.route == "poisson" || o.route == "hybrid")
    cfg.eri_route = scf::EriRoute::poisson_preferred;
  else if (o.route == "resolution")
    cfg.eri_route = scf::EriRoute::resolution_only;
  else
    throw std::invalid_argument("unknown --route value: " + o.route);
  return cfg;
}

int cmd_scf(const CommonOpts& o, const std::string& dimer_of) {
  std::string text = read_file(o.input);
  auto mol = basis::parse_molecule(text);
  json doc = report_header("scf", text);
  Timings tm;
  auto cfg = scf_config_from(o);
  auto res = scf::rhf(mol, cfg);
  tm.lap("scf");
  doc["results"]["energy_total"] = tagged(res.energy_total, "Ha");
  doc["results"]["energy_electronic"] = tagged(res.energy_electronic, "Ha");
  doc["results"]["nuclear_repulsion"] = tagged(res.nuclear_repulsion, "Ha");
  doc["results"]["converged"] = res.converged;
  doc["results"]["iterations"] = res.iterations;
  json eps = json::array();
  for (double e : res.orbital_energies) eps.push_back(e);
  doc["results"]["orbital_energies"] = {{"values", eps}, {"unit", "Ha"}};
  if (!dimer_of.empty()) {
    auto mono = basis::parse_molecule(read_file(dimer_of));
    double de = scf::interaction_energy(mol, mono, cfg);
    doc["results"]["interaction_energy"] = tagged(de, "kcal/mol");
    tm.lap("interaction_energy");
  }
  doc["timings"] = tm.out;
  int rc = emit(doc, o.pretty);
  if (!res.converged) return 3;
  return rc;
}

int cmd_benchmark(const CommonOpts& o, int max_integrals) {
  std::string text = read_file(o.input);
  auto mol = basis::parse_molecule(text);
  json doc = report_header("benchmark", text);
  int n = (int)mol.basis.size();

  // All canonical quartets spanning 3 or 4 centers.
  std::vector<std::array<int, 4>> quartets;
  for (int i = 0; i < n && (int)quartets.size() < max_integrals; ++i)
    for (int j = 0; j <= i && (int)quartets.size() < max_integrals; ++j)
      for (int k = 0; k <= i && (int)quartets.size() < max_integrals; ++k)
        for (int l = 0; l <= k && (int)quartets.size() < max_integrals; ++l) {
          if (k == i && l > j) continue;
          std::vector<int> c{mol.basis[i].center_index,
                             mol.basis[j].center_index,
                             mol.basis[k].center_index,
                             mol.basis[l].center_index};
          std::sort(c.begin(), c.end());
          c.erase(std::unique(c.begin(), c.end()), c.end());
          if (c.size() >= 3) quartets.push_back({i, j, k, l});
        }

  resolution::ResolutionConfig rcfg;
  rcfg.eps = o.eps;

  auto t0 = Clock::now();
  std::vector<double> res_vals(quartets.size());
  {
    scf::ScfConfig cfg;
    cfg.resolution_cfg = rcfg;
    // Reuse the cached-auxiliary path through eri_resolution one by one to
    // keep the two routes comparable per integral.
    for (std::size_t qi = 0; qi < quartets.size(); ++qi) {
      auto [i, j, k, l] = quartets[qi];
      res_vals[qi] = resolution::eri_resolution(mol.basis[i], mol.basis[j],
                                                mol.basis[k], mol.basis[l],
                                                mol, rcfg)
                         .value;
    }
  }
  auto t1 = Clock::now();
  std::vector<double> fb_vals(quartets.size());
  for (std::size_t qi = 0; qi < quartets.size(); ++qi) {
    auto [i, j, k, l] = quartets[qi];
    fb_vals[qi] = poisson::eri_quadrature(mol.basis[i], mol.basis[j],
                                          mol.basis[k], mol.basis[l], mol,
                                          o.eps);
  }
  auto t2 = Clock::now();

  double max_diff = 0.0;
  for (std::size_t qi = 0; qi < quartets.size(); ++qi)
    max_diff = std::max(max_diff, std::abs(res_vals[qi] - fb_vals[qi]));

  auto ms = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::microseconds>(b - a)
               .count() /
           1000.0;
  };
  doc["results"]["integrals_timed"] = (int)quartets.size();
  doc["results"]["eps"] = tagged(o.eps, "Ha");
  doc["results"]["resolution_time"] = tagged(ms(t0, t1), "ms");
  doc["results"]["fallback_time"] = tagged(ms(t1, t2), "ms");
  doc["results"]["resolution_faster"] = ms(t0, t1) < ms(t1, t2);
  doc["results"]["max_route_difference"] = tagged(max_diff, "Ha");
  doc["timings"]["total"] = tagged(ms(t0, t2), "ms");
  return emit(doc, o.pretty);
}

int cmd_nmr(const CommonOpts& o, int nucleus, int mu_idx, int nu_idx,
            bool all_pairs, const std::string& rotate) {
  std::string text = read_file(o.input);
  auto mol = basis::parse_molecule(text);
  if (!rotate.empty()) {
    auto colon = rotate.find(':');
    if (colon == std::string::npos || colon != 1)
      throw std::invalid_argument("--rotate expects <axis>:<degrees>");
    mol = rotated(mol, rotate[0], std::stod(rotate.substr(colon + 1)));
  }
  if (nucleus < 1 || nucleus > (int)mol.centers.size())
    throw std::invalid_argument("--nucleus index out of range");
  json doc = report_header("nmr", text);
  Timings tm;
  int n = (int)mol.basis.size();
  std::vector<std::pair<int, int>> pairs;
  if (all_pairs) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) pairs.push_back({i, j});
  } else {
    if (mu_idx < 1 || mu_idx > n || nu_idx < 1 || nu_idx > n)
      throw std::invalid_argument("--mu/--nu index out of range");
    pairs.push_back({mu_idx - 1, nu_idx - 1});
  }
  const char* names = "xyz";
  json table = json::array();
  for (auto [i, j] : pairs) {
    json entry;
    entry["pair"] = label_of({i, j});
    json mat = json::object();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double v = nmr::dipole_integral(mol.basis[i], mol.basis[j],
                                        nucleus - 1, (nmr::Axis)a,
                                        (nmr::Axis)b, mol);
        mat[std::string{names[a], names[b]}] = tagged(v, "bohr^-1");
      }
    entry["tensor"] = mat;
    table.push_back(entry);
  }
  tm.lap("nmr_integrals");
  doc["results"]["nucleus"] = nucleus;
  doc["results"]["dipole_integrals"] = table;
  doc["timings"] = tm.out;
  return emit(doc, o.pretty);
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"sturmint - molecular integrals over exponential-type orbitals"};
  app.require_subcommand(1);

  CommonOpts o_int, o_scf, o_bench, o_nmr;
  bool table1 = false;
  std::string dimer_of;
  int bench_max = 150;
  int nmr_nucleus = 1, nmr_mu = 1, nmr_nu = 1;
  bool nmr_all = false;
  std::string nmr_rotate;

  auto* c_int = app.add_subcommand("integrals", "one- and two-center ERI tables");
  add_common(c_int, o_int);
  c_int->add_flag("--table1-convention", table1,
                  "also report one-center Coulomb values divided by their "
                  "equal-exponent pattern constants");

  auto* c_scf = app.add_subcommand("scf", "closed-shell restricted Hartree-Fock");
  add_common(c_scf, o_scf);
  c_scf->add_option("--dimer-of", dimer_of,
                    "monomer input; also report E(dimer) - 2 E(monomer)");

  auto* c_bench = app.add_subcommand(
      "benchmark", "time resolution route vs per-integral fallback");
  add_common(c_bench, o_bench);
  c_bench->add_option("--max-integrals", bench_max,
                      "cap on the number of 3-/4-center integrals timed");

  auto* c_nmr = app.add_subcommand("nmr", "nuclear dipole one-electron integrals");
  add_common(c_nmr, o_nmr);
  c_nmr->add_option("--nucleus", nmr_nucleus, "1-based nucleus index");
  c_nmr->add_option("--mu", nmr_mu, "1-based bra orbital index");
  c_nmr->add_option("--nu", nmr_nu, "1-based ket orbital index");
  c_nmr->add_flag("--all-pairs", nmr_all, "tensor for every basis pair");
  c_nmr->add_option("--rotate", nmr_rotate, "rigid rotation <axis>:<degrees>");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_int->parsed()) return cmd_integrals(o_int, table1);
    if (c_scf->parsed()) return cmd_scf(o_scf, dimer_of);
    if (c_bench->parsed()) return cmd_benchmark(o_bench, bench_max);
    if (c_nmr->parsed())
      return cmd_nmr(o_nmr, nmr_nucleus, nmr_mu, nmr_nu, nmr_all, nmr_rotate);
  } catch (const basis::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    if (msg.find("not converged") != std::string::npos ||
        msg.find("near singular") != std::string::npos)
      return 3;
    return msg.find("cannot open") != std::string::npos ? 2 : 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 4;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  return run(args);
}

}  // namespace sturmint::cli
