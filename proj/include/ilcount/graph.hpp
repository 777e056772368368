#pragma once

#include <map>
#include <vector>

#include "ilcount/system.hpp"

namespace ilc {

// Primal graph of a system: vertices are the live variables, an edge joins
// two variables whenever some live row contains both.
struct PrimalGraph {
  std::vector<VarId> vertices;                    // ascending
  std::map<VarId, std::vector<VarId>> adjacency;  // sorted neighbor lists
};

struct Component {
  std::vector<VarId> vars;  // ascending
  std::vector<RowId> rows;  // ascending
};

// Components ordered by smallest contained variable id. Vars in no row form
// singleton components with an empty row set.
struct Partition {
  std::vector<Component> components;
};

PrimalGraph build_primal_graph(const System& s);

// Connected-component split of an OPEN system. Requires every live row to
// have nonempty support (a row then lands in exactly one component). The
// system is decomposable iff the partition has at least two components, and
// the count factors into the product over components.
Partition decompose(const System& s);

// The subsystem induced by one component: its variables' bounds and its
// rows, ids preserved.
System restrict_to_component(const System& s, const Component& component);

// Exact shortest-path betweenness centrality (Brandes), counted over
// unordered vertex pairs: on the path graph 1-2-3 the scores are {0, 1, 0}.
std::map<VarId, BigRational> betweenness_scores(const PrimalGraph& g);

// Branching heuristic for a connected OPEN system: maximal betweenness,
// ties to the smallest id; if every score is zero, largest degree, then
// smallest id.
VarId select_variable(const System& s);

}  // namespace ilc
