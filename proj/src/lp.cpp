#include "ilcount/lp.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ilc {

namespace {

constexpr int kNoRow = -1;
constexpr int kIterationCap = 200000;

struct Column {
  BigRational lower;
  BigRational upper;      // meaningful iff has_upper
  bool has_upper = false;
  bool retired = false;   // artificials after phase 1
};

// Dense exact tableau over columns [structural | slacks | artificials].
// Basic columns form an identity inside T_; nonbasic columns rest exactly on
// one of their bounds, tracked in val_.
class Tableau {
 public:
  explicit Tableau(const LpProblem& p) { build(p); }

  bool phase1();
  void set_objective(const std::vector<std::pair<VarId, BigRational>>& terms);
  void optimize();

  BigRational objective_value() const {
    BigRational v = 0;
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      if (obj_[c] != 0) v += obj_[c] * val_[c];
    }
    return v;
  }

  std::vector<std::pair<VarId, BigRational>> structural_values() const {
    std::vector<std::pair<VarId, BigRational>> out;
    out.reserve(var_ids_.size());
    for (std::size_t c = 0; c < var_ids_.size(); ++c) {
      out.emplace_back(var_ids_[c], val_[c]);
    }
    return out;
  }

 private:
  void build(const LpProblem& p);
  void pivot(int row, int enter);
  void rebuild_row_of();

  int col_of(VarId var) const {
    auto it = std::lower_bound(var_ids_.begin(), var_ids_.end(), var);
    assert(it != var_ids_.end() && *it == var);
    return static_cast<int>(it - var_ids_.begin());
  }

  bool can_increase(int c) const {
    return !cols_[c].has_upper || val_[c] < cols_[c].upper;
  }
  bool can_decrease(int c) const { return val_[c] > cols_[c].lower; }

  std::vector<VarId> var_ids_;   // structural columns, ascending
  int first_artificial_ = 0;
  std::vector<Column> cols_;
  std::vector<std::vector<BigRational>> T_;  // one row per constraint
  std::vector<int> basis_;                   // row -> col
  std::vector<int> row_of_;                  // col -> row or kNoRow
  std::vector<BigRational> val_;             // current point, every column
  std::vector<BigRational> obj_;
};

void Tableau::build(const LpProblem& p) {
  const int n = static_cast<int>(p.box.size());
  const int m = static_cast<int>(p.rows.size());
  var_ids_.reserve(n);
  for (const auto& b : p.box) var_ids_.push_back(b.var);
  assert(std::is_sorted(var_ids_.begin(), var_ids_.end()));

  cols_.resize(n + m);
  val_.resize(n + m);
  for (int c = 0; c < n; ++c) {
    cols_[c] = Column{p.box[c].lower, p.box[c].upper, true, false};
    val_[c] = p.box[c].lower;
  }
  for (int c = n; c < n + m; ++c) {
    cols_[c] = Column{BigRational(0), BigRational(0), false, false};
    val_[c] = 0;
  }
  first_artificial_ = n + m;

  T_.assign(m, std::vector<BigRational>(n + m, BigRational(0)));
  basis_.resize(m);
  for (int r = 0; r < m; ++r) {
    BigRational slack = p.rows[r].rhs;
    for (const auto& [var, coeff] : p.rows[r].terms) {
      const int c = col_of(var);
      T_[r][c] = coeff;
      slack -= coeff * val_[c];
    }
    T_[r][n + r] = 1;
    val_[n + r] = slack;
    basis_[r] = n + r;
  }

  // Rows whose slack starts negative get an artificial basic variable:
  // negate the row so the artificial enters with coefficient +1.
  for (int r = 0; r < m; ++r) {
    if (val_[n + r] >= 0) continue;
    for (auto& entry : T_[r]) entry = -entry;
    const int z = static_cast<int>(cols_.size());
    cols_.push_back(Column{BigRational(0), BigRational(0), false, false});
    val_.push_back(-val_[n + r]);
    val_[n + r] = 0;
    for (int q = 0; q < m; ++q) T_[q].push_back(q == r ? BigRational(1) : BigRational(0));
    basis_[r] = z;
  }
  obj_.assign(cols_.size(), BigRational(0));
  rebuild_row_of();
}

void Tableau::rebuild_row_of() {
  row_of_.assign(cols_.size(), kNoRow);
  for (std::size_t r = 0; r < basis_.size(); ++r) row_of_[basis_[r]] = static_cast<int>(r);
}

void Tableau::pivot(int row, int enter) {
  BigRational piv = T_[row][enter];
  assert(piv != 0);
  if (piv != 1) {
    for (auto& entry : T_[row]) {
      if (entry != 0) entry /= piv;
    }
  }
  for (std::size_t q = 0; q < T_.size(); ++q) {
    if (static_cast<int>(q) == row) continue;
    const BigRational factor = T_[q][enter];
    if (factor == 0) continue;
    for (std::size_t c = 0; c < T_[q].size(); ++c) {
      if (T_[row][c] != 0) T_[q][c] -= factor * T_[row][c];
    }
  }
  row_of_[basis_[row]] = kNoRow;
  basis_[row] = enter;
  row_of_[enter] = row;
}

void Tableau::set_objective(
    const std::vector<std::pair<VarId, BigRational>>& terms) {
  obj_.assign(cols_.size(), BigRational(0));
  for (const auto& [var, coeff] : terms) obj_[col_of(var)] = coeff;
}

void Tableau::optimize() {
  for (int iter = 0; iter < kIterationCap; ++iter) {
    // Bland: smallest-index nonbasic column with an improving direction.
    int enter = -1;
    int dir = 0;
    for (int c = 0; c < static_cast<int>(cols_.size()); ++c) {
      if (row_of_[c] != kNoRow || cols_[c].retired) continue;
      BigRational d = obj_[c];
      for (std::size_t r = 0; r < basis_.size(); ++r) {
        if (obj_[basis_[r]] != 0 && T_[r][c] != 0) {
          d -= obj_[basis_[r]] * T_[r][c];
        }
      }
      if (d > 0 && can_increase(c)) {
        enter = c;
        dir = 1;
        break;
      }
      if (d < 0 && can_decrease(c)) {
        enter = c;
        dir = -1;
        break;
      }
    }
    if (enter < 0) return;  // optimal

    // Ratio test: the entering column moves by t >= 0 toward its opposite
    // bound; each basic variable moves at rate -dir * T[r][enter].
    bool has_flip = false;
    BigRational flip_gap;
    if (dir > 0) {
      if (cols_[enter].has_upper) {
        has_flip = true;
        flip_gap = cols_[enter].upper - val_[enter];
      }
    } else {
      has_flip = true;
      flip_gap = val_[enter] - cols_[enter].lower;
    }

    int leave_row = -1;
    bool leave_to_upper = false;
    BigRational best_t;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const BigRational& a = T_[r][enter];
      if (a == 0) continue;
      const int bcol = basis_[r];
      const bool rising = (dir > 0) ? (a < 0) : (a > 0);
      BigRational t;
      if (rising) {
        if (!cols_[bcol].has_upper) continue;
        t = (cols_[bcol].upper - val_[bcol]) / abs(a);
      } else {
        t = (val_[bcol] - cols_[bcol].lower) / abs(a);
      }
      if (leave_row < 0 || t < best_t ||
          (t == best_t && bcol < basis_[leave_row])) {
        leave_row = static_cast<int>(r);
        best_t = t;
        leave_to_upper = rising;
      }
    }

    if (leave_row < 0 && !has_flip) {
      throw std::logic_error("simplex: unbounded step on a box-bounded LP");
    }
    const bool do_flip = has_flip && (leave_row < 0 || flip_gap < best_t);
    const BigRational t = do_flip ? flip_gap : best_t;

    if (t != 0) {
      val_[enter] += (dir > 0) ? t : -t;
      for (std::size_t r = 0; r < basis_.size(); ++r) {
        if (T_[r][enter] != 0) {
          val_[basis_[r]] -= (dir > 0 ? t : -t) * T_[r][enter];
        }
      }
    }
    if (!do_flip) {
      const int leaving = basis_[leave_row];
      val_[leaving] =
          leave_to_upper ? cols_[leaving].upper : cols_[leaving].lower;
      pivot(leave_row, enter);
    }
  }
  throw std::logic_error("simplex: iteration cap exceeded");
}

bool Tableau::phase1() {
  if (first_artificial_ == static_cast<int>(cols_.size())) return true;
  std::vector<std::pair<VarId, BigRational>> empty;
  set_objective(empty);
  for (int c = first_artificial_; c < static_cast<int>(cols_.size()); ++c) {
    obj_[c] = -1;
  }
  optimize();
  if (objective_value() != 0) return false;

  // Drive leftover (degenerate, value 0) artificials out of the basis, or
  // drop their rows when the row has no nonzero non-artificial entry.
  for (int r = 0; r < static_cast<int>(basis_.size());) {
    if (basis_[r] < first_artificial_) {
      ++r;
      continue;
    }
    int enter = -1;
    for (int c = 0; c < first_artificial_; ++c) {
      if (T_[r][c] != 0) {
        enter = c;
        break;
      }
    }
    if (enter >= 0) {
      pivot(r, enter);
      ++r;
    } else {
      T_.erase(T_.begin() + r);
      basis_.erase(basis_.begin() + r);
    }
  }
  for (int c = first_artificial_; c < static_cast<int>(cols_.size()); ++c) {
    cols_[c].retired = true;
  }
  rebuild_row_of();
  return true;
}

}  // namespace

LpOutcome LpSolver::maximize(const LpProblem& p) const {
  for (const auto& b : p.box) {
    if (b.lower > b.upper) return LpOutcome::infeasible();
  }
  Tableau tab(p);
  if (!tab.phase1()) return LpOutcome::infeasible();
  tab.set_objective(p.objective);
  tab.optimize();
  LpOutcome out;
  out.kind = LpOutcome::Kind::Optimal;
  out.value = tab.objective_value();
  out.witness = tab.structural_values();
  return out;
}

LpOutcome LpSolver::minimize(const LpProblem& p) const {
  LpProblem negated = p;
  for (auto& [var, coeff] : negated.objective) coeff = -coeff;
  LpOutcome out = maximize(negated);
  if (out.optimal()) out.value = -out.value;
  return out;
}

}  // namespace ilc
