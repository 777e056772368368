#include "ilcount/graph.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

namespace ilc {

PrimalGraph build_primal_graph(const System& s) {
  PrimalGraph g;
  g.vertices.reserve(s.num_vars());
  std::map<VarId, std::set<VarId>> adj;
  for (const VarBounds& vb : s.bounds()) {
    g.vertices.push_back(vb.var);
    adj[vb.var];
  }
  for (const auto& entry : s.rows()) {
    const auto& terms = entry.row.terms;
    for (std::size_t a = 0; a < terms.size(); ++a) {
      for (std::size_t b = a + 1; b < terms.size(); ++b) {
        adj[terms[a].var].insert(terms[b].var);
        adj[terms[b].var].insert(terms[a].var);
      }
    }
  }
  for (auto& [var, neighbors] : adj) {
    g.adjacency.emplace(var,
                        std::vector<VarId>(neighbors.begin(), neighbors.end()));
  }
  return g;
}

Partition decompose(const System& s) {
  assert(s.open() && "decompose requires an OPEN system");
  const PrimalGraph g = build_primal_graph(s);
  std::map<VarId, int> component_of;
  Partition partition;
  for (VarId root : g.vertices) {
    if (component_of.count(root)) continue;
    const int index = static_cast<int>(partition.components.size());
    partition.components.emplace_back();
    std::deque<VarId> queue{root};
    component_of[root] = index;
    while (!queue.empty()) {
      const VarId v = queue.front();
      queue.pop_front();
      partition.components[index].vars.push_back(v);
      for (VarId w : g.adjacency.at(v)) {
        if (!component_of.count(w)) {
          component_of[w] = index;
          queue.push_back(w);
        }
      }
    }
    std::sort(partition.components[index].vars.begin(),
              partition.components[index].vars.end());
  }
  for (const auto& entry : s.rows()) {
    assert(!entry.row.terms.empty() &&
           "decompose requires rows with nonempty support");
    partition.components[component_of.at(entry.row.terms.front().var)]
        .rows.push_back(entry.id);
  }
  return partition;
}

System restrict_to_component(const System& s, const Component& component) {
  System out;
  for (VarId var : component.vars) {
    const VarBounds* vb = s.find_var(var);
    assert(vb != nullptr);
    out.add_variable(var, vb->lower, vb->upper);
  }
  for (RowId id : component.rows) {
    const Row* row = s.find_row(id);
    assert(row != nullptr);
    out.add_row_with_id(id, *row);
  }
  return out;
}

std::map<VarId, BigRational> betweenness_scores(const PrimalGraph& g) {
  std::map<VarId, BigRational> bc;
  for (VarId v : g.vertices) bc[v] = 0;

  // Brandes over every source; dependencies are exact rationals and path
  // counts exact integers. Halved at the end for the unordered convention.
  for (VarId source : g.vertices) {
    std::map<VarId, BigInt> sigma;
    std::map<VarId, long> dist;
    std::map<VarId, std::vector<VarId>> preds;
    for (VarId v : g.vertices) {
      sigma[v] = 0;
      dist[v] = -1;
    }
    sigma[source] = 1;
    dist[source] = 0;
    std::vector<VarId> order;
    std::deque<VarId> queue{source};
    while (!queue.empty()) {
      const VarId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (VarId w : g.adjacency.at(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    std::map<VarId, BigRational> delta;
    for (VarId v : order) delta[v] = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const VarId w = *it;
      for (VarId v : preds[w]) {
        delta[v] += BigRational(sigma[v]) / BigRational(sigma[w]) *
                    (BigRational(1) + delta[w]);
      }
      if (w != source) bc[w] += delta[w];
    }
  }
  for (auto& [var, score] : bc) score /= 2;
  return bc;
}

VarId select_variable(const System& s) {
  assert(s.open() && "select_variable requires an OPEN system");
  assert(!s.bounds().empty());
  const PrimalGraph g = build_primal_graph(s);
  const auto scores = betweenness_scores(g);

  VarId best = g.vertices.front();
  bool all_zero = true;
  for (VarId v : g.vertices) {
    const BigRational& score = scores.at(v);
    if (score != 0) all_zero = false;
    if (score > scores.at(best)) best = v;
  }
  if (!all_zero) return best;

  VarId best_degree_var = g.vertices.front();
  std::size_t best_degree = g.adjacency.at(best_degree_var).size();
  for (VarId v : g.vertices) {
    const std::size_t degree = g.adjacency.at(v).size();
    if (degree > best_degree) {
      best_degree_var = v;
      best_degree = degree;
    }
  }
  return best_degree_var;
}

}  // namespace ilc
