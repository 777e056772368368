#include "ilcount/system.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ilc {

namespace {

bool term_var_less(const Term& t, VarId var) { return t.var < var; }

std::vector<Term>::const_iterator find_term(const std::vector<Term>& terms,
                                            VarId var) {
  auto it = std::lower_bound(terms.begin(), terms.end(), var, term_var_less);
  if (it != terms.end() && it->var == var) return it;
  return terms.end();
}

}  // namespace

const BigInt* Row::coeff_of(VarId var) const {
  auto it = find_term(terms, var);
  return it == terms.end() ? nullptr : &it->coeff;
}

Row make_row(std::vector<Term> terms, BigInt rhs) {
  std::erase_if(terms, [](const Term& t) { return t.coeff == 0; });
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  for (std::size_t i = 1; i < terms.size(); ++i) {
    assert(terms[i - 1].var != terms[i].var && "duplicate variable in row");
  }
  return Row{std::move(terms), std::move(rhs)};
}

void System::add_variable(VarId var, BigInt lower, BigInt upper) {
  auto it = std::lower_bound(
      bounds_.begin(), bounds_.end(), var,
      [](const VarBounds& vb, VarId v) { return vb.var < v; });
  assert((it == bounds_.end() || it->var != var) && "duplicate variable");
  if (lower > upper) inconsistent_ = true;
  bounds_.insert(it, VarBounds{var, std::move(lower), std::move(upper)});
}

RowId System::add_row(Row row) {
  const RowId id = next_row_id_++;
  add_row_with_id(id, std::move(row));
  return id;
}

void System::add_row_with_id(RowId id, Row row) {
  assert((rows_.empty() || rows_.back().id < id) &&
         "row ids must be added in ascending order");
  for (const Term& t : row.terms) {
    assert(t.coeff != 0 && "zero coefficient stored");
    assert(find_var(t.var) != nullptr && "row references unknown variable");
    (void)t;
  }
  rows_.push_back(RowEntry{id, std::move(row)});
  if (id >= next_row_id_) next_row_id_ = id + 1;
}

SystemStatus System::status() const {
  if (inconsistent_) return SystemStatus::Inconsistent;
  return rows_.empty() ? SystemStatus::Valid : SystemStatus::Open;
}

const VarBounds* System::find_var(VarId var) const {
  auto it = std::lower_bound(
      bounds_.begin(), bounds_.end(), var,
      [](const VarBounds& vb, VarId v) { return vb.var < v; });
  if (it != bounds_.end() && it->var == var) return &*it;
  return nullptr;
}

const Row* System::find_row(RowId id) const {
  auto it = std::lower_bound(
      rows_.begin(), rows_.end(), id,
      [](const RowEntry& e, RowId r) { return e.id < r; });
  if (it != rows_.end() && it->id == id) return &it->row;
  return nullptr;
}

bool System::tighten_lower(VarId var, const BigInt& value) {
  auto it = std::lower_bound(
      bounds_.begin(), bounds_.end(), var,
      [](const VarBounds& vb, VarId v) { return vb.var < v; });
  assert(it != bounds_.end() && it->var == var);
  if (value <= it->lower) return false;
  it->lower = value;
  if (it->lower > it->upper) inconsistent_ = true;
  return true;
}

bool System::tighten_upper(VarId var, const BigInt& value) {
  auto it = std::lower_bound(
      bounds_.begin(), bounds_.end(), var,
      [](const VarBounds& vb, VarId v) { return vb.var < v; });
  assert(it != bounds_.end() && it->var == var);
  if (value >= it->upper) return false;
  it->upper = value;
  if (it->lower > it->upper) inconsistent_ = true;
  return true;
}

void System::remove_row(RowId id) {
  auto it = std::lower_bound(
      rows_.begin(), rows_.end(), id,
      [](const RowEntry& e, RowId r) { return e.id < r; });
  assert(it != rows_.end() && it->id == id);
  rows_.erase(it);
}

void System::replace_row(RowId id, Row row) {
  auto it = std::lower_bound(
      rows_.begin(), rows_.end(), id,
      [](const RowEntry& e, RowId r) { return e.id < r; });
  assert(it != rows_.end() && it->id == id);
  it->row = std::move(row);
}

void System::remove_variable(VarId var) {
  auto it = std::lower_bound(
      bounds_.begin(), bounds_.end(), var,
      [](const VarBounds& vb, VarId v) { return vb.var < v; });
  assert(it != bounds_.end() && it->var == var);
  bounds_.erase(it);
}

bool System::operator==(const System& other) const {
  return inconsistent_ == other.inconsistent_ && bounds_ == other.bounds_ &&
         rows_ == other.rows_;
}

namespace {

Activity activity_sum(const System& s, RowId row, std::optional<VarId> exclude,
                      bool want_sup) {
  const Row* r = s.find_row(row);
  assert(r != nullptr && "activity of unknown row");
  Activity a;
  a.value = 0;
  for (const Term& t : r->terms) {
    if (exclude && t.var == *exclude) continue;
    const VarBounds* vb = s.find_var(t.var);
    assert(vb != nullptr);
    const bool take_upper = want_sup ? (t.coeff > 0) : (t.coeff < 0);
    a.value += t.coeff * (take_upper ? vb->upper : vb->lower);
  }
  return a;
}

}  // namespace

Activity sup_activity(const System& s, RowId row, std::optional<VarId> exclude) {
  return activity_sum(s, row, exclude, true);
}

Activity inf_activity(const System& s, RowId row, std::optional<VarId> exclude) {
  return activity_sum(s, row, exclude, false);
}

System assign(const System& s, VarId var, const BigInt& value) {
  const VarBounds* vb = s.find_var(var);
  assert(vb != nullptr && vb->lower <= value && value <= vb->upper);
  (void)vb;
  System out = s;
  out.remove_variable(var);
  for (auto& entry : out.rows_) {
    auto& terms = entry.row.terms;
    auto it = std::lower_bound(terms.begin(), terms.end(), var, term_var_less);
    if (it != terms.end() && it->var == var) {
      entry.row.rhs -= it->coeff * value;
      terms.erase(it);
    }
  }
  return out;
}

BigInt valid_count(const System& s) {
  if (s.inconsistent() || !s.rows().empty()) {
    throw std::logic_error("valid_count on a system that is not VALID");
  }
  BigInt product = 1;
  for (const VarBounds& vb : s.bounds()) {
    product *= vb.upper - vb.lower + 1;
  }
  return product;
}

System make_inconsistent() {
  System s;
  s.mark_inconsistent();
  return s;
}

}  // namespace ilc
