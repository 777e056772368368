#pragma once

#include <optional>
#include <vector>

#include "ilcount/common.hpp"

namespace ilc {

// One term of a sparse row. The coefficient is never zero.
struct Term {
  VarId var;
  BigInt coeff;
  bool operator==(const Term&) const = default;
};

// A single inequality  sum_j coeff_j * x_j <= rhs  with terms in ascending
// variable order. An empty term list is a transient state produced by
// assignment; such rows are classified by row removal (0 <= rhs).
struct Row {
  std::vector<Term> terms;
  BigInt rhs;

  const BigInt* coeff_of(VarId var) const;
  bool operator==(const Row&) const = default;
};

// Convenience builder: sorts terms by variable and drops zero coefficients.
Row make_row(std::vector<Term> terms, BigInt rhs);

struct VarBounds {
  VarId var;
  BigInt lower;
  BigInt upper;
  bool operator==(const VarBounds&) const = default;
};

// VALID means no live rows remain (count is the box product); INCONSISTENT
// is sticky and dominates.
enum class SystemStatus { Open, Valid, Inconsistent };

// Row activity (sup or inf over the variable box). Every variable in this
// artifact is box-bounded, so the unbounded markers are never produced; the
// enum keeps the contract explicit.
struct Activity {
  enum class Kind { Finite, UnboundedAbove, UnboundedBelow };
  Kind kind = Kind::Finite;
  BigInt value;
};

// A system of integer linear <=-rows over box-bounded integer variables.
// Value type: search and simplification copy systems, they never share
// mutable state. Row ids are stable: simplification only removes rows, so a
// surviving row keeps its id and transformation logs stay reproducible.
class System {
 public:
  struct RowEntry {
    RowId id;
    Row row;
    bool operator==(const RowEntry&) const = default;
  };

  // Declaring an empty box (lower > upper) marks the system inconsistent on
  // the spot; the bounds entry is still recorded.
  void add_variable(VarId var, BigInt lower, BigInt upper);
  RowId add_row(Row row);
  void add_row_with_id(RowId id, Row row);
  void mark_inconsistent() { inconsistent_ = true; }

  SystemStatus status() const;
  bool inconsistent() const { return inconsistent_; }
  bool open() const { return status() == SystemStatus::Open; }

  const std::vector<VarBounds>& bounds() const { return bounds_; }
  const std::vector<RowEntry>& rows() const { return rows_; }
  std::size_t num_vars() const { return bounds_.size(); }
  std::size_t num_rows() const { return rows_.size(); }

  const VarBounds* find_var(VarId var) const;
  const Row* find_row(RowId id) const;

  // Mutators used by assignment and simplification. Tightening a bound past
  // its partner marks the system inconsistent (empty box). The tighten
  // functions return whether the bound moved.
  bool tighten_lower(VarId var, const BigInt& value);
  bool tighten_upper(VarId var, const BigInt& value);
  void remove_row(RowId id);
  void replace_row(RowId id, Row row);
  void remove_variable(VarId var);

  // Structural equality (bounds, rows with ids, inconsistency flag); used
  // for fixpoint detection in the simplification pipeline.
  bool operator==(const System& other) const;

 private:
  friend System assign(const System&, VarId, const BigInt&);

  std::vector<VarBounds> bounds_;  // ascending var id
  std::vector<RowEntry> rows_;     // ascending row id
  RowId next_row_id_ = 1;
  bool inconsistent_ = false;
};

// sup(A_i.) / inf(A_i.) over the box, optionally excluding one variable's
// contribution (the N_{-j} forms used by bound and coefficient
// strengthening). Excluding a variable outside the row's support is allowed
// and changes nothing.
Activity sup_activity(const System& s, RowId row,
                      std::optional<VarId> exclude = std::nullopt);
Activity inf_activity(const System& s, RowId row,
                      std::optional<VarId> exclude = std::nullopt);

// Substitutes x_var = value: the variable leaves the system and each row
// containing it loses the term while its rhs drops by coeff * value. Rows
// whose support empties out are retained.
System assign(const System& s, VarId var, const BigInt& value);

// Product of domain sizes (u_j - l_j + 1). Throws std::logic_error if live
// rows remain.
BigInt valid_count(const System& s);

// The distinguished inconsistent system; its count is 0.
System make_inconsistent();

}  // namespace ilc
