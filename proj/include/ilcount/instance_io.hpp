#pragma once

#include <stdexcept>
#include <string>

#include "ilcount/system.hpp"

namespace ilc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Instance text format (UTF-8):
//   # comment                      anywhere; blank lines are ignored
//   p ilc <n> <m>                  header: n variable lines, m row lines
//   d <j> <l_j> <u_j>              n lines, ascending variable ids
//   r <a>*x<j> ... <op> <b>        m lines, op is <=, >= or =
// Integers are arbitrary-precision decimals with an optional leading '-'.
// >= rows are stored negated; = rows split into <= and >=. Zero
// coefficients are dropped (a row may even lose its whole support).
System parse_instance(const std::string& text);
System load_instance(const std::string& path);

// Canonical text: header, d lines ascending, one "r ... <= b" line per live
// row in row-id order. render(parse(render(s))) == render(s) byte for byte.
// Inconsistency is not representable, so rendering an inconsistent system
// throws std::invalid_argument.
std::string render_instance(const System& s);
void save_instance(const System& s, const std::string& path);

}  // namespace ilc
