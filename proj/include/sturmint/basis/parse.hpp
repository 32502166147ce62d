#pragma once

#include <stdexcept>
#include <string>

#include "sturmint/basis/basis.hpp"

namespace sturmint::basis {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the geometry+basis text format:
///   center <label> <x> <y> <z>          (bohr)
///   basis <center-label> <kind> <n> <l> <m> <zeta>
/// with '#' comments. <kind> is one of sto | sturmian | eto<int>.
/// The nuclear charge of a center is derived from the element symbol at the
/// start of its label (e.g. "H1" -> 1.0).
Molecule parse_molecule(const std::string& text);

/// Reads a file and parses it. Throws std::runtime_error if unreadable.
Molecule load_molecule(const std::string& path);

}  // namespace sturmint::basis
