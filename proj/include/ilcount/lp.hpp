#pragma once

#include <utility>
#include <vector>

#include "ilcount/common.hpp"

namespace ilc {

// A box-bounded LP in <=-form. Every variable that occurs anywhere must have
// a (finite) box entry; box entries are ascending by variable id.
struct LpProblem {
  struct LpRow {
    std::vector<std::pair<VarId, BigRational>> terms;  // ascending var
    BigRational rhs;
  };
  struct Box {
    VarId var;
    BigRational lower;
    BigRational upper;
  };

  std::vector<std::pair<VarId, BigRational>> objective;  // ascending var
  std::vector<LpRow> rows;
  std::vector<Box> box;
};

// Finite boxes rule out unbounded outcomes, so an LP is either optimal or
// infeasible. Values and witnesses are exact rationals.
struct LpOutcome {
  enum class Kind { Optimal, Infeasible };

  Kind kind = Kind::Infeasible;
  BigRational value;
  std::vector<std::pair<VarId, BigRational>> witness;  // ascending var

  static LpOutcome infeasible() { return LpOutcome{}; }
  bool optimal() const { return kind == Kind::Optimal; }
};

// Exact rational primal simplex for bounded variables, Bland's rule in both
// phases (anti-cycling), fully deterministic: identical problems give
// identical outcomes including the witness. Throws std::logic_error if the
// internal iteration cap is hit, which anti-cycling makes unreachable.
class LpSolver {
 public:
  LpOutcome maximize(const LpProblem& p) const;
  LpOutcome minimize(const LpProblem& p) const;
};

}  // namespace ilc
