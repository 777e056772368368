#pragma once

#include <cstdint>
#include <string>

#include "ilcount/system.hpp"

namespace ilc {

// Random instance parameters. Variables get ids 1..num_vars and the common
// domain [domain_lower, domain_upper]. Each row draws k uniform in
// [1, max_terms] distinct variables, nonzero coefficients uniform in the
// coefficient range, and a rhs uniform in the rhs range.
struct GenParams {
  int num_vars = 5;
  int num_rows = 3;
  int max_terms = 3;
  long long domain_lower = -8;
  long long domain_upper = 7;
  long long coeff_lower = -10;
  long long coeff_upper = 10;
  long long rhs_lower = -20;
  long long rhs_upper = 20;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

// Deterministic for a given parameter set: mt19937_64 seeded with
// params.seed, ranges drawn by rejection sampling (no use of
// implementation-defined distributions), so instances are byte-identical
// across platforms.
System generate(const GenParams& params);

// The instance text with a header comment stamping the generator name and
// every parameter, ready to write to disk.
std::string render_generated(const GenParams& params);

}  // namespace ilc
