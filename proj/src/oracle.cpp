#include "ilcount/oracle.hpp"

namespace ilc {

namespace {

// Visits every point of the box in odometer order and calls fn on each.
template <typename Fn>
void walk_box(const System& s, Fn&& fn) {
  const auto& bounds = s.bounds();
  const std::size_t n = bounds.size();
  std::vector<BigInt> point(n);
  for (std::size_t j = 0; j < n; ++j) point[j] = bounds[j].lower;
  while (true) {
    fn(point);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (point[j] < bounds[j].upper) {
        ++point[j];
        for (std::size_t k = j + 1; k < n; ++k) point[k] = bounds[k].lower;
        break;
      }
      if (j == 0) return;
    }
    if (n == 0) return;
  }
}

bool satisfies_all_rows(const System& s, const std::vector<BigInt>& point) {
  const auto& bounds = s.bounds();
  for (const auto& entry : s.rows()) {
    BigInt lhs = 0;
    std::size_t j = 0;
    for (const Term& t : entry.row.terms) {
      while (bounds[j].var != t.var) ++j;
      lhs += t.coeff * point[j];
    }
    if (lhs > entry.row.rhs) return false;
  }
  return true;
}

bool box_within_budget(const System& s, const BigInt& budget) {
  BigInt points = 1;
  for (const VarBounds& vb : s.bounds()) {
    points *= vb.upper - vb.lower + 1;
    if (points > budget) return false;
  }
  return points <= budget;
}

}  // namespace

BigInt oracle_default_budget() {
  return BigInt(10000000);
}

std::optional<BigInt> oracle_count(const System& s, const BigInt& budget) {
  if (s.inconsistent()) return BigInt(0);
  if (!box_within_budget(s, budget)) return std::nullopt;
  BigInt count = 0;
  walk_box(s, [&](const std::vector<BigInt>& point) {
    if (satisfies_all_rows(s, point)) ++count;
  });
  return count;
}

std::optional<std::vector<Assignment>> oracle_solutions(const System& s,
                                                        const BigInt& budget) {
  if (s.inconsistent()) return std::vector<Assignment>{};
  if (!box_within_budget(s, budget)) return std::nullopt;
  std::vector<Assignment> solutions;
  const auto& bounds = s.bounds();
  walk_box(s, [&](const std::vector<BigInt>& point) {
    if (!satisfies_all_rows(s, point)) return;
    Assignment a;
    a.reserve(bounds.size());
    for (std::size_t j = 0; j < bounds.size(); ++j) {
      a.emplace_back(bounds[j].var, point[j]);
    }
    solutions.push_back(std::move(a));
  });
  return solutions;
}

}  // namespace ilc
