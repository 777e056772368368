#pragma once

#include <array>
#include <string>
#include <vector>

#include "ilcount/lp.hpp"
#include "ilcount/system.hpp"

namespace ilc {

enum class Technique {
  RemoveVariables,
  StrengthenBounds,
  StrengthenCoefficients,
  RemoveIndividualRows,
  RemoveIndividualRowsLp,
  RemoveParallelRows,
  RemoveSubsetRows,
};
inline constexpr int kTechniqueCount = 7;

const char* technique_name(Technique t);
// Accepts the names printed by technique_name; returns false on unknown.
bool technique_from_name(const std::string& name, Technique& out);

// What a simplification pass did: per-technique counters plus the ordered
// action list. Row ids are stable, so logs are reproducible run to run.
// merge() folds another log's counters in and drops its actions (the counter
// aggregates totals over millions of nodes).
struct SimplifyLog {
  enum class ActionKind {
    VarRemoved,
    RowRemoved,
    LowerTightened,
    UpperTightened,
    CoeffStrengthened,
    MarkedInconsistent,
  };
  struct Action {
    Technique technique;
    ActionKind kind;
    int id;  // row id or var id, per kind
  };
  struct Counters {
    long rows_removed = 0;
    long vars_removed = 0;
    long bounds_tightened = 0;
    long coeffs_strengthened = 0;
  };

  std::array<Counters, kTechniqueCount> per_technique;
  std::vector<Action> actions;

  void record(Technique t, ActionKind kind, int id);
  void merge(const SimplifyLog& other);
  long rows_removed_total() const;
  long vars_removed_total() const;
};

// Which techniques run; the pipeline order itself is fixed.
struct SimplifyConfig {
  bool remove_variables = true;
  bool strengthen_bounds = true;
  bool strengthen_coefficients = true;
  bool remove_individual_rows = true;
  bool remove_individual_rows_lp = true;
  bool remove_parallel_rows = true;
  bool remove_subset_rows = true;
  int fixpoint_iteration_cap = 1000;

  bool& technique_enabled(Technique t);
  bool technique_enabled(Technique t) const;
  static SimplifyConfig all_disabled();
};

// The seven techniques. Each takes an arbitrary system, returns an
// equivalent one (same model count), and leaves non-OPEN inputs untouched.
// All are deterministic; rows are scanned in ascending id order.

// Substitutes every variable with l_j == u_j into the rows and drops it.
System remove_variables(const System& s, SimplifyLog* log = nullptr);

// One sweep of bound propagation: for each row i and support variable j,
//   a_ij > 0:  u_j <- min(u_j, floor((b_i - inf(A_iN-j)) / a_ij))
//   a_ij < 0:  l_j <- max(l_j, ceil ((b_i - inf(A_iN-j)) / a_ij))
// (mathematical floor/ceil). A crossed bound reports INCONSISTENT. Updates
// take effect immediately; the enclosing pipeline loops to a fixpoint.
System strengthen_bounds(const System& s, SimplifyLog* log = nullptr);

// Coefficient strengthening, sequential over each row's support:
//   a_ij > 0: d = b_i - sup(A_iN-j) - a_ij (u_j - 1);
//             if a_ij >= d > 0: a_ij -= d, b_i -= d * u_j
//   a_ij < 0: d = b_i - sup(A_iN-j) - a_ij (l_j + 1);
//             if -a_ij >= d > 0: a_ij += d, b_i += d * l_j
// Coefficients that hit zero leave the support. Count-preserving on the box.
System strengthen_coefficients(const System& s, SimplifyLog* log = nullptr);

// Activity test per row: inf > b_i reports INCONSISTENT, sup <= b_i removes
// the row (always satisfied).
System remove_individual_rows(const System& s, SimplifyLog* log = nullptr);

// LP version: maximizes/minimizes each row's lhs subject to the other live
// rows plus the box (exact relaxation). U <= b_i removes the row; L > b_i
// or an infeasible relaxation reports INCONSISTENT. Rows are processed in
// ascending id order against the already-reduced set.
System remove_individual_rows_lp(const System& s, const LpSolver& lp,
                                 SimplifyLog* log = nullptr);

// Detects rows with proportional coefficient vectors via normalized row
// keys. Positive-parallel rows keep the tighter rhs (cross-multiplied
// exactly); negative-parallel rows with an empty band report INCONSISTENT.
System remove_parallel_rows(const System& s, SimplifyLog* log = nullptr);

// Row i is a subset of row k when they agree on i's support and k has extra
// variables N'. inf(A_kN') >= b_k - b_i removes i; otherwise
// sup(A_kN') <= b_k - b_i removes k. First applicable rule wins; removed
// rows skip later pairs.
System remove_subset_rows(const System& s, SimplifyLog* log = nullptr);

// Sparse normalized coefficient vector: coefficients divided by the positive
// gcd of their absolute values, signs preserved. Empty-support rows have no
// key (callers skip them).
struct NormalizedRowKey {
  std::vector<Term> coeffs;
  BigInt gcd;

  static NormalizedRowKey of(const Row& row);
  std::string bytes() const;
  std::string negated_bytes() const;
  bool operator==(const NormalizedRowKey&) const = default;
};

struct SimplifyResult {
  System system;
  SimplifyLog log;
};

// The full pipeline: loops {remove_variables; strengthen_bounds;
// remove_individual_rows} to a fixpoint (early exit on INCONSISTENT/VALID),
// then runs strengthen_coefficients, remove_individual_rows_lp,
// remove_parallel_rows, remove_subset_rows once each, with the same early
// exits. Disabled techniques are skipped; non-OPEN inputs come back
// unchanged. Never increases rows, variables, domains, or |coefficients|.
SimplifyResult simplify(const System& s, const SimplifyConfig& cfg,
                        const LpSolver& lp);

}  // namespace ilc
