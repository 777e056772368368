#include "ilcount/generator.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ilcount/instance_io.hpp"

namespace ilc {

namespace {

// Uniform draw from [0, n) by rejection; avoids the implementation-defined
// sequences of std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % n;
}

long long uniform_range(std::mt19937_64& rng, long long lo, long long hi) {
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  return lo + static_cast<long long>(uniform_below(rng, span));
}

long long uniform_nonzero(std::mt19937_64& rng, long long lo, long long hi) {
  if (lo > 0 || hi < 0) return uniform_range(rng, lo, hi);
  // Skip 0 by drawing from a range one smaller and shifting the upper half.
  const long long v = uniform_range(rng, lo, hi - 1);
  return v >= 0 ? v + 1 : v;
}

}  // namespace

void GenParams::validate() const {
  if (num_vars < 1) throw std::invalid_argument("num_vars must be >= 1");
  if (num_rows < 1) throw std::invalid_argument("num_rows must be >= 1");
  if (max_terms < 1 || max_terms > num_vars) {
    throw std::invalid_argument("max_terms must be in [1, num_vars]");
  }
  if (domain_lower > domain_upper) {
    throw std::invalid_argument("empty domain range");
  }
  if (coeff_lower > coeff_upper) {
    throw std::invalid_argument("empty coefficient range");
  }
  if (coeff_lower == 0 && coeff_upper == 0) {
    throw std::invalid_argument("coefficient range holds no nonzero value");
  }
  if (rhs_lower > rhs_upper) throw std::invalid_argument("empty rhs range");
}

System generate(const GenParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  System s;
  for (int j = 1; j <= params.num_vars; ++j) {
    s.add_variable(j, BigInt(params.domain_lower), BigInt(params.domain_upper));
  }
  std::vector<VarId> pool(params.num_vars);
  for (int j = 0; j < params.num_vars; ++j) pool[j] = j + 1;
  for (int i = 0; i < params.num_rows; ++i) {
    const int k =
        static_cast<int>(uniform_range(rng, 1, params.max_terms));
    // Partial Fisher-Yates: the first k entries become the row's support.
    for (int t = 0; t < k; ++t) {
      const int swap_with = t + static_cast<int>(uniform_below(
                                    rng, params.num_vars - t));
      std::swap(pool[t], pool[swap_with]);
    }
    std::vector<Term> terms;
    terms.reserve(k);
    for (int t = 0; t < k; ++t) {
      terms.push_back(Term{
          pool[t],
          BigInt(uniform_nonzero(rng, params.coeff_lower, params.coeff_upper))});
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.var < b.var; });
    BigInt rhs(uniform_range(rng, params.rhs_lower, params.rhs_upper));
    s.add_row(Row{std::move(terms), std::move(rhs)});
  }
  return s;
}

std::string render_generated(const GenParams& params) {
  System s = generate(params);
  std::ostringstream out;
  out << "# ilcount generate rng=mt19937_64 seed=" << params.seed
      << " n=" << params.num_vars << " m=" << params.num_rows
      << " l=" << params.max_terms << " domain=[" << params.domain_lower
      << ',' << params.domain_upper << "] coeff=[" << params.coeff_lower
      << ',' << params.coeff_upper << "] rhs=[" << params.rhs_lower << ','
      << params.rhs_upper << "]\n";
  out << render_instance(s);
  return out.str();
}

}  // namespace ilc
