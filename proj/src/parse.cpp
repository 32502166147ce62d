#include "sturmint/basis/parse.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace sturmint::basis {

namespace {

const std::map<std::string, double>& element_charges() {
  static const std::map<std::string, double> z = {
      {"H", 1},   {"He", 2},  {"Li", 3},  {"Be", 4},  {"B", 5},   {"C", 6},
      {"N", 7},   {"O", 8},   {"F", 9},   {"Ne", 10}, {"Na", 11}, {"Mg", 12},
      {"Al", 13}, {"Si", 14}, {"P", 15},  {"S", 16},  {"Cl", 17}, {"Ar", 18}};
  return z;
}

double charge_from_label(const std::string& label, int line) {
  const auto& table = element_charges();
  if (label.size() >= 2) {
    auto it = table.find(label.substr(0, 2));
    if (it != table.end()) return it->second;
  }
  if (!label.empty()) {
    auto it = table.find(label.substr(0, 1));
    if (it != table.end()) return it->second;
  }
  throw ParseError(line, "cannot derive an element from label '" + label + "'");
}

double parse_double(const std::string& tok, int line, const char* what) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + tok.size())
    throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok, int line, const char* what) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  long v = std::strtol(begin, &end, 10);
  if (end != begin + tok.size())
    throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
  return (int)v;
}

}  // namespace

Molecule parse_molecule(const std::string& text) {
  Molecule mol;
  std::map<std::string, int> center_of_label;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "center") {
      std::string label, xs, ys, zs;
      if (!(ls >> label >> xs >> ys >> zs))
        throw ParseError(lineno, "expected: center <label> <x> <y> <z>");
      if (center_of_label.count(label))
        throw ParseError(lineno, "duplicate center label '" + label + "'");
      Center c;
      c.label = label;
      c.position = {parse_double(xs, lineno, "coordinate"),
                    parse_double(ys, lineno, "coordinate"),
                    parse_double(zs, lineno, "coordinate")};
      center_of_label[label] = (int)mol.centers.size();
      mol.centers.push_back(c);
      mol.nuclear_charges.push_back(charge_from_label(label, lineno));
    } else if (word == "basis") {
      std::string label, kind, ns, lst, ms, zs;
      if (!(ls >> label >> kind >> ns >> lst >> ms >> zs))
        throw ParseError(
            lineno, "expected: basis <center-label> <kind> <n> <l> <m> <zeta>");
      auto it = center_of_label.find(label);
      if (it == center_of_label.end())
        throw ParseError(lineno, "unknown center label '" + label + "'");
      BasisFunction bf;
      bf.center_index = it->second;
      if (kind == "sto") {
        bf.kind = BasisKind::STO;
      } else if (kind == "sturmian") {
        bf.kind = BasisKind::Sturmian;
      } else if (kind.rfind("eto", 0) == 0) {
        bf.kind = BasisKind::GeneralizedETO;
        bf.alpha = parse_int(kind.substr(3), lineno, "alpha");
      } else {
        throw ParseError(lineno, "unknown basis kind '" + kind + "'");
      }
      bf.n = parse_int(ns, lineno, "n");
      bf.l = parse_int(lst, lineno, "l");
      bf.m = parse_int(ms, lineno, "m");
      bf.zeta = parse_double(zs, lineno, "zeta");
      try {
        bf.validate((int)mol.centers.size());
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
      }
      for (const auto& prev : mol.basis)
        if (prev == bf) throw ParseError(lineno, "duplicate basis entry");
      mol.basis.push_back(bf);
    } else {
      throw ParseError(lineno, "unknown directive '" + word + "'");
    }
  }
  if (mol.centers.empty()) throw ParseError(lineno, "no centers defined");
  if (mol.basis.empty()) throw ParseError(lineno, "empty basis list");
  mol.validate();
  return mol;
}

Molecule load_molecule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_molecule(ss.str());
}

}  // namespace sturmint::basis
