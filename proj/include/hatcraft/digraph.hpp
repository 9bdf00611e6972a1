#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hatcraft {

// Loop-free directed graph. Undirected edges are modelled as two arcs.
// Vertices are 0..n-1; in-neighbourhoods are kept in ascending order.
class Digraph {
public:
    Digraph() = default;
    Digraph(int n, std::vector<std::pair<int, int>> arcs, std::string name = {});

    int n() const { return n_; }
    const std::string& name() const { return name_; }
    const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
    const std::vector<int>& in_neighbours(int v) const { return in_[v]; }
    int in_degree(int v) const { return static_cast<int>(in_[v].size()); }
    bool has_arc(int u, int v) const;

    // every arc has its reverse
    bool is_undirected() const;
    // no bidirectional pair at all
    bool is_oriented() const;

    bool operator==(const Digraph& o) const { return n_ == o.n_ && arcs_ == o.arcs_; }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> arcs_;  // sorted, unique
    std::vector<std::vector<int>> in_;
    std::string name_;
};

// Named constructions. Complete bipartite graphs number the left part first.
Digraph clique(int n);
Digraph complete_bipartite(int m, int s);
Digraph directed_cycle(int n);   // arcs (i, i+1 mod n)
Digraph undirected_cycle(int n);
Digraph path(int n);             // undirected path
Digraph six_vertex_gadget_graph();

// Lexicographic product with K_r: vertex (v,a) is numbered v*r + a.
Digraph lex_product(const Digraph& d, int r);

// Removes arcs (u,v) and (v,u).
Digraph without_edge(const Digraph& d, int u, int v);

struct AcyclicWitness {
    int size = 0;
    std::vector<int> witness;  // ascending
};

struct SemibipartitePartition {
    std::vector<int> left;   // independent set, ascending
    std::vector<int> right;  // induces an acyclic subgraph, ascending
    std::vector<int> topo;   // right in topological order
};

// Subset-exponential analyses. These refuse graphs above the cap instead of
// truncating; a wrong structural number would silently invalidate certificates.
// Ties are broken towards the lexicographically smallest witness.
AcyclicWitness max_acyclic_induced(const Digraph& d, int cap = 20);
SemibipartitePartition best_semibipartite(const Digraph& d, int cap = 20);

// Smallest-|L| semibipartite partition with |L| <= max_left, if one exists.
std::optional<SemibipartitePartition> semibipartite_with_small_left(
    const Digraph& d, int max_left, int cap = 20);

// Largest set of mutually bidirectional vertices. Vertices without any
// bidirectional neighbour never enter the subset search, so oriented regions
// of large graphs are cheap.
int clique_number(const Digraph& d, int cap = 20);

// True iff the subgraph induced by `vertices` has no directed cycle
// (a bidirectional pair counts as a 2-cycle).
bool induces_acyclic(const Digraph& d, const std::vector<int>& vertices);
bool induces_independent(const Digraph& d, const std::vector<int>& vertices);

// Undirected acyclicity: all arcs paired and no cycle in the underlying graph.
bool is_forest(const Digraph& d);

// Line-oriented text format:
//   # comment
//   n <count>
//   arc <u> <v>
//   edge <u> <v>     (both arcs)
// The serializer sorts by endpoint pair and collapses bidirectional pairs
// into "edge" lines.
Digraph parse_digraph(std::string_view text);
std::string serialize_digraph(const Digraph& d);

}  // namespace hatcraft
