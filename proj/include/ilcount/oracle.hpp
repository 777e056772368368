#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ilcount/system.hpp"

namespace ilc {

// One integer point, as (variable, value) pairs in ascending variable order.
using Assignment = std::vector<std::pair<VarId, BigInt>>;

// Enumeration budget: boxes with more points than this are refused.
BigInt oracle_default_budget();  // 10^7

// Brute-force ground truth. Walks the whole box in odometer order (last
// variable fastest) and tests every live row by direct evaluation; no
// pruning, no propagation, and no code shared with the counter, the
// simplifier, or the LP solver beyond the core System type. Returns
// std::nullopt when the box exceeds the budget.
std::optional<BigInt> oracle_count(const System& s,
                                   const BigInt& budget = oracle_default_budget());

// Same walk, returning the satisfying points themselves in enumeration
// order.
std::optional<std::vector<Assignment>> oracle_solutions(
    const System& s, const BigInt& budget = oracle_default_budget());

}  // namespace ilc
