#include "ilcount/simplify.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace ilc {

namespace {

void log_action(SimplifyLog* log, Technique t, SimplifyLog::ActionKind kind,
                int id) {
  if (log) log->record(t, kind, id);
}

std::vector<RowId> row_ids(const System& s) {
  std::vector<RowId> ids;
  ids.reserve(s.num_rows());
  for (const auto& entry : s.rows()) ids.push_back(entry.id);
  return ids;
}

// sup of a working row copy under the system's current bounds.
BigInt row_sup(const System& s, const Row& row) {
  BigInt sup = 0;
  for (const Term& t : row.terms) {
    const VarBounds* vb = s.find_var(t.var);
    assert(vb != nullptr);
    sup += t.coeff * (t.coeff > 0 ? vb->upper : vb->lower);
  }
  return sup;
}

}  // namespace

const char* technique_name(Technique t) {
  switch (t) {
    case Technique::RemoveVariables: return "remove_variables";
    case Technique::StrengthenBounds: return "strengthen_bounds";
    case Technique::StrengthenCoefficients: return "strengthen_coefficients";
    case Technique::RemoveIndividualRows: return "remove_individual_rows";
    case Technique::RemoveIndividualRowsLp: return "remove_individual_rows_lp";
    case Technique::RemoveParallelRows: return "remove_parallel_rows";
    case Technique::RemoveSubsetRows: return "remove_subset_rows";
  }
  return "?";
}

bool technique_from_name(const std::string& name, Technique& out) {
  for (int i = 0; i < kTechniqueCount; ++i) {
    const Technique t = static_cast<Technique>(i);
    if (name == technique_name(t)) {
      out = t;
      return true;
    }
  }
  return false;
}

void SimplifyLog::record(Technique t, ActionKind kind, int id) {
  actions.push_back(Action{t, kind, id});
  Counters& c = per_technique[static_cast<int>(t)];
  switch (kind) {
    case ActionKind::VarRemoved: ++c.vars_removed; break;
    case ActionKind::RowRemoved: ++c.rows_removed; break;
    case ActionKind::LowerTightened:
    case ActionKind::UpperTightened: ++c.bounds_tightened; break;
    case ActionKind::CoeffStrengthened: ++c.coeffs_strengthened; break;
    case ActionKind::MarkedInconsistent: break;
  }
}

void SimplifyLog::merge(const SimplifyLog& other) {
  for (int i = 0; i < kTechniqueCount; ++i) {
    per_technique[i].rows_removed += other.per_technique[i].rows_removed;
    per_technique[i].vars_removed += other.per_technique[i].vars_removed;
    per_technique[i].bounds_tightened += other.per_technique[i].bounds_tightened;
    per_technique[i].coeffs_strengthened +=
        other.per_technique[i].coeffs_strengthened;
  }
}

long SimplifyLog::rows_removed_total() const {
  long total = 0;
  for (const Counters& c : per_technique) total += c.rows_removed;
  return total;
}

long SimplifyLog::vars_removed_total() const {
  long total = 0;
  for (const Counters& c : per_technique) total += c.vars_removed;
  return total;
}

bool& SimplifyConfig::technique_enabled(Technique t) {
  switch (t) {
    case Technique::RemoveVariables: return remove_variables;
    case Technique::StrengthenBounds: return strengthen_bounds;
    case Technique::StrengthenCoefficients: return strengthen_coefficients;
    case Technique::RemoveIndividualRows: return remove_individual_rows;
    case Technique::RemoveIndividualRowsLp: return remove_individual_rows_lp;
    case Technique::RemoveParallelRows: return remove_parallel_rows;
    case Technique::RemoveSubsetRows: return remove_subset_rows;
  }
  return remove_variables;
}

bool SimplifyConfig::technique_enabled(Technique t) const {
  return const_cast<SimplifyConfig*>(this)->technique_enabled(t);
}

SimplifyConfig SimplifyConfig::all_disabled() {
  SimplifyConfig cfg;
  for (int i = 0; i < kTechniqueCount; ++i) {
    cfg.technique_enabled(static_cast<Technique>(i)) = false;
  }
  return cfg;
}

System remove_variables(const System& s, SimplifyLog* log) {
  if (!s.open()) return s;
  System out = s;
  std::vector<VarId> fixed;
  for (const VarBounds& vb : out.bounds()) {
    if (vb.lower == vb.upper) fixed.push_back(vb.var);
  }
  for (VarId var : fixed) {
    out = assign(out, var, out.find_var(var)->lower);
    log_action(log, Technique::RemoveVariables,
               SimplifyLog::ActionKind::VarRemoved, var);
  }
  return out;
}

System strengthen_bounds(const System& s, SimplifyLog* log) {
  if (!s.open()) return s;
  System out = s;
  for (const RowId id : row_ids(out)) {
    const Row& row = *out.find_row(id);
    // inf(A_i.) once per row; each exclusion subtracts one contribution.
    // Bounds updated for this row's own variables never feed its inf (a
    // positive coefficient tightens u_j but inf uses l_j, and vice versa),
    // so the cached value stays exact across the row.
    BigInt inf_full = inf_activity(out, id).value;
    for (const Term& t : row.terms) {
      const VarBounds* vb = out.find_var(t.var);
      const BigInt contribution =
          t.coeff * (t.coeff < 0 ? vb->upper : vb->lower);
      const BigInt residual = row.rhs - (inf_full - contribution);
      if (t.coeff > 0) {
        if (out.tighten_upper(t.var, floor_div(residual, t.coeff))) {
          log_action(log, Technique::StrengthenBounds,
                     SimplifyLog::ActionKind::UpperTightened, t.var);
        }
      } else {
        if (out.tighten_lower(t.var, ceil_div(residual, t.coeff))) {
          log_action(log, Technique::StrengthenBounds,
                     SimplifyLog::ActionKind::LowerTightened, t.var);
        }
      }
      if (out.inconsistent()) {
        log_action(log, Technique::StrengthenBounds,
                   SimplifyLog::ActionKind::MarkedInconsistent, t.var);
        return out;
      }
    }
  }
  return out;
}

System strengthen_coefficients(const System& s, SimplifyLog* log) {
  if (!s.open()) return s;
  System out = s;
  for (const RowId id : row_ids(out)) {
    Row row = *out.find_row(id);
    bool changed = false;
    BigInt sup_full = row_sup(out, row);
    for (std::size_t t = 0; t < row.terms.size();) {
      const BigInt a = row.terms[t].coeff;
      const VarBounds* vb = out.find_var(row.terms[t].var);
      const BigInt sup_excl =
          sup_full - a * (a > 0 ? vb->upper : vb->lower);
      bool strengthened = false;
      if (a > 0) {
        const BigInt d = row.rhs - sup_excl - a * (vb->upper - 1);
        if (d > 0 && a >= d) {
          row.terms[t].coeff = a - d;
          row.rhs -= d * vb->upper;
          strengthened = true;
        }
      } else {
        const BigInt d = row.rhs - sup_excl - a * (vb->lower + 1);
        if (d > 0 && -a >= d) {
          row.terms[t].coeff = a + d;
          row.rhs += d * vb->lower;
          strengthened = true;
        }
      }
      if (strengthened) {
        changed = true;
        log_action(log, Technique::StrengthenCoefficients,
                   SimplifyLog::ActionKind::CoeffStrengthened,
                   row.terms[t].var);
        if (row.terms[t].coeff == 0) {
          row.terms.erase(row.terms.begin() + t);
        } else {
          ++t;
        }
        sup_full = row_sup(out, row);
      } else {
        ++t;
      }
    }
    if (changed) out.replace_row(id, std::move(row));
  }
  return out;
}

System remove_individual_rows(const System& s, SimplifyLog* log) {
  if (!s.open()) return s;
  System out = s;
  for (const RowId id : row_ids(out)) {
    const Row& row = *out.find_row(id);
    if (inf_activity(out, id).value > row.rhs) {
      out.mark_inconsistent();
      log_action(log, Technique::RemoveIndividualRows,
                 SimplifyLog::ActionKind::MarkedInconsistent, id);
      return out;
    }
    if (sup_activity(out, id).value <= row.rhs) {
      out.remove_row(id);
      log_action(log, Technique::RemoveIndividualRows,
                 SimplifyLog::ActionKind::RowRemoved, id);
    }
  }
  return out;
}

namespace {

// Relaxation of every live row except `exclude`, over the full box.
LpProblem relaxation_without(const System& s, RowId exclude) {
  LpProblem p;
  p.box.reserve(s.num_vars());
  for (const VarBounds& vb : s.bounds()) {
    p.box.push_back(
        LpProblem::Box{vb.var, BigRational(vb.lower), BigRational(vb.upper)});
  }
  for (const auto& entry : s.rows()) {
    if (entry.id == exclude) continue;
    LpProblem::LpRow lr;
    lr.terms.reserve(entry.row.terms.size());
    for (const Term& t : entry.row.terms) {
      lr.terms.emplace_back(t.var, BigRational(t.coeff));
    }
    lr.rhs = BigRational(entry.row.rhs);
    p.rows.push_back(std::move(lr));
  }
  return p;
}

}  // namespace

System remove_individual_rows_lp(const System& s, const LpSolver& lp,
                                 SimplifyLog* log) {
  if (!s.open()) return s;
  System out = s;
  for (const RowId id : row_ids(out)) {
    const Row& row = *out.find_row(id);
    LpProblem p = relaxation_without(out, id);
    for (const Term& t : row.terms) {
      p.objective.emplace_back(t.var, BigRational(t.coeff));
    }
    const BigRational rhs(row.rhs);
    const LpOutcome up = lp.maximize(p);
    if (!up.optimal()) {
      out.mark_inconsistent();
      log_action(log, Technique::RemoveIndividualRowsLp,
                 SimplifyLog::ActionKind::MarkedInconsistent, id);
      return out;
    }
    if (up.value <= rhs) {
      out.remove_row(id);
      log_action(log, Technique::RemoveIndividualRowsLp,
                 SimplifyLog::ActionKind::RowRemoved, id);
      continue;
    }
    const LpOutcome lo = lp.minimize(p);
    assert(lo.optimal());
    if (lo.value > rhs) {
      out.mark_inconsistent();
      log_action(log, Technique::RemoveIndividualRowsLp,
                 SimplifyLog::ActionKind::MarkedInconsistent, id);
      return out;
    }
  }
  return out;
}

NormalizedRowKey NormalizedRowKey::of(const Row& row) {
  assert(!row.terms.empty());
  NormalizedRowKey key;
  key.gcd = 0;
  for (const Term& t : row.terms) key.gcd = positive_gcd(key.gcd, t.coeff);
  key.coeffs.reserve(row.terms.size());
  for (const Term& t : row.terms) {
    key.coeffs.push_back(Term{t.var, t.coeff / key.gcd});
  }
  return key;
}

std::string NormalizedRowKey::bytes() const {
  std::string out;
  encode_u32(out, static_cast<std::uint32_t>(coeffs.size()));
  for (const Term& t : coeffs) {
    encode_u32(out, static_cast<std::uint32_t>(t.var));
    encode_int(out, t.coeff);
  }
  return out;
}

std::string NormalizedRowKey::negated_bytes() const {
  std::string out;
  encode_u32(out, static_cast<std::uint32_t>(coeffs.size()));
  for (const Term& t : coeffs) {
    encode_u32(out, static_cast<std::uint32_t>(t.var));
    encode_int(out, BigInt(-t.coeff));
  }
  return out;
}

System remove_parallel_rows(const System& s, SimplifyLog* log) {
  if (!s.open()) return s;
  System out = s;
  struct Survivor {
    RowId id;
    BigInt gcd;
  };
  std::unordered_map<std::string, Survivor> by_key;
  for (const RowId id : row_ids(out)) {
    const Row& row = *out.find_row(id);
    if (row.terms.empty()) continue;  // no direction to be parallel to
    const NormalizedRowKey key = NormalizedRowKey::of(row);

    // Negative-parallel: norm(A_i) == -norm(A_k). The pair is contradictory
    // when the rhs band is empty over the reals: b_i / g_i < -b_k / g_k.
    if (auto it = by_key.find(key.negated_bytes()); it != by_key.end()) {
      const Row& other = *out.find_row(it->second.id);
      if (row.rhs * it->second.gcd < -other.rhs * key.gcd) {
        out.mark_inconsistent();
        log_action(log, Technique::RemoveParallelRows,
                   SimplifyLog::ActionKind::MarkedInconsistent, id);
        return out;
      }
    }

    // Positive-parallel: keep the smaller normalized rhs, compared by
    // cross-multiplication; ties keep the incumbent (smaller id).
    auto it = by_key.find(key.bytes());
    if (it == by_key.end()) {
      by_key.emplace(key.bytes(), Survivor{id, key.gcd});
      continue;
    }
    const Row& other = *out.find_row(it->second.id);
    if (row.rhs * it->second.gcd < other.rhs * key.gcd) {
      const RowId removed = it->second.id;
      out.remove_row(removed);
      it->second = Survivor{id, key.gcd};
      log_action(log, Technique::RemoveParallelRows,
                 SimplifyLog::ActionKind::RowRemoved, removed);
    } else {
      out.remove_row(id);
      log_action(log, Technique::RemoveParallelRows,
                 SimplifyLog::ActionKind::RowRemoved, id);
    }
  }
  return out;
}

namespace {

// A_i restricted to its support equals A_k on the same variables, and k has
// at least one extra support variable.
bool is_subset_row(const Row& sub, const Row& super) {
  if (sub.terms.size() >= super.terms.size()) return false;
  std::size_t j = 0;
  for (const Term& t : sub.terms) {
    while (j < super.terms.size() && super.terms[j].var < t.var) ++j;
    if (j >= super.terms.size() || super.terms[j].var != t.var ||
        super.terms[j].coeff != t.coeff) {
      return false;
    }
    ++j;
  }
  return true;
}

}  // namespace

System remove_subset_rows(const System& s, SimplifyLog* log) {
  if (!s.open()) return s;
  System out = s;
  const std::vector<RowId> ids = row_ids(out);
  std::vector<bool> alive(ids.size(), true);
  for (std::size_t ki = 0; ki < ids.size(); ++ki) {
    if (!alive[ki]) continue;
    for (std::size_t ii = 0; ii < ids.size(); ++ii) {
      if (ii == ki || !alive[ii] || !alive[ki]) continue;
      const Row& row_k = *out.find_row(ids[ki]);
      const Row& row_i = *out.find_row(ids[ii]);
      if (!is_subset_row(row_i, row_k)) continue;
      // Activities of A_k over the extra variables N'.
      BigInt inf_extra = 0;
      BigInt sup_extra = 0;
      {
        std::size_t j = 0;
        for (const Term& t : row_k.terms) {
          if (j < row_i.terms.size() && row_i.terms[j].var == t.var) {
            ++j;
            continue;
          }
          const VarBounds* vb = out.find_var(t.var);
          inf_extra += t.coeff * (t.coeff > 0 ? vb->lower : vb->upper);
          sup_extra += t.coeff * (t.coeff > 0 ? vb->upper : vb->lower);
        }
      }
      const BigInt slack = row_k.rhs - row_i.rhs;
      if (inf_extra >= slack) {
        out.remove_row(ids[ii]);
        alive[ii] = false;
        log_action(log, Technique::RemoveSubsetRows,
                   SimplifyLog::ActionKind::RowRemoved, ids[ii]);
      } else if (sup_extra <= slack) {
        out.remove_row(ids[ki]);
        alive[ki] = false;
        log_action(log, Technique::RemoveSubsetRows,
                   SimplifyLog::ActionKind::RowRemoved, ids[ki]);
        break;
      }
    }
  }
  return out;
}

SimplifyResult simplify(const System& s, const SimplifyConfig& cfg,
                        const LpSolver& lp) {
  SimplifyResult result{s, SimplifyLog{}};
  System& cur = result.system;
  SimplifyLog* log = &result.log;
  if (!cur.open()) return result;

  for (int iter = 0; iter < cfg.fixpoint_iteration_cap; ++iter) {
    const System before = cur;
    if (cfg.remove_variables) cur = remove_variables(cur, log);
    if (cfg.strengthen_bounds) {
      cur = strengthen_bounds(cur, log);
      if (cur.inconsistent()) return result;
    }
    if (cfg.remove_individual_rows) {
      cur = remove_individual_rows(cur, log);
      if (cur.inconsistent()) return result;
      if (cur.status() == SystemStatus::Valid) return result;
    }
    if (cur == before) break;
  }
  if (cfg.strengthen_coefficients) cur = strengthen_coefficients(cur, log);
  if (cfg.remove_individual_rows_lp) {
    cur = remove_individual_rows_lp(cur, lp, log);
    if (cur.inconsistent()) return result;
    if (cur.status() == SystemStatus::Valid) return result;
  }
  if (cfg.remove_parallel_rows) {
    cur = remove_parallel_rows(cur, log);
    if (cur.inconsistent()) return result;
  }
  if (cfg.remove_subset_rows) cur = remove_subset_rows(cur, log);
  return result;
}

}  // namespace ilc
