#pragma once

#include <optional>
#include <string>

#include "hatcraft/digraph.hpp"
#include "hatcraft/strategy.hpp"

namespace hatcraft {

struct GraphStrategy {
    Digraph graph;
    Strategy strategy;
};

// Splits a colour in [p*r] into a p-part and an r-part: c = x + p*y.
struct ColorPairCodec {
    int p;
    int r;
    int q() const { return p * r; }
    int low(int c) const { return c % p; }
    int high(int c) const { return c / p; }
    int encode(int x, int y) const { return x + p * y; }
};

// Non-solvable digraph plus a strategy whose losing set is the graph of a
// function of the pivot colour in terms of the others. phi is a dense table
// over the non-pivot colours, in ascending vertex order, big-endian indexed.
struct Gadget {
    Digraph graph;
    int q;
    Strategy strategy;
    int pivot;
    std::vector<uint8_t> phi;
    std::string name;
};

enum class GadgetKind { Unit, Cycle3, SixVertex };

// Sum strategy on K_q: vertex v guesses v minus the sum of the visible hats.
GraphStrategy clique_strategy(int q);

// K_n split into consecutive K_q blocks; guarantees floor(n/q) correct guesses.
GraphStrategy clique_partition_strategy(int n, int q);

// K_{q-1,(q-1)^(q-1)}, q-solvable. Right vertex w_z guesses 0 when the left
// colours avoid z everywhere, else the (1-based) first position of agreement.
// Left vertices compute the set of left colourings consistent with every right
// vertex being wrong and guess the lexicographically smallest word within
// Hamming distance q-2 of all of them.
GraphStrategy bipartite_strategy(int q);

// K_{2,2} over q=3 via the matrix pair A, A^{-1}.
GraphStrategy k22_strategy();

// Lexicographic blow-up: lifts a p-solver on D to a (p*r)-solver on (D,r).
GraphStrategy blowup_strategy(const Digraph& d, const Strategy& f, int r);

Gadget make_gadget(GadgetKind kind);

// Transitive p-tournament with one gadget copy wedged into each back pair.
GraphStrategy gadget_compose(int p, const Gadget& g);

// Directed cycle over q=2: vertex 0 copies its predecessor, others negate it.
GraphStrategy cycle2_strategy(int n);

// C_{2n} over q=3 with the L-shaped rules; solves iff n = 0 mod 3, otherwise
// exactly 3 configurations lose. Vertices interleave: v_i -> 2(i-1),
// w_i -> 2(i-1)+1 for the paper's 1-based i.
GraphStrategy even_cycle_strategy(int n);

struct ConstructionReport {
    int vertices = 0;
    int clique = 0;
    int q_effective = 0;
    int p = 0;
    int r = 0;
    bool clique_bound_ok = false;
    std::string base;
};

struct EpsilonResult {
    Digraph graph;
    Strategy strategy;
    ConstructionReport report;
};

// q-solvable graph with clique number at most eps*q' for q' = smallest
// multiple of p no smaller than q. eps = eps_num/eps_den.
EpsilonResult construct_epsilon(int q, int eps_num, int eps_den);

struct KfreeResult {
    Digraph graph;
    std::optional<Strategy> strategy;  // attached only at desk scale
    ConstructionReport report;
};

// K_omega-free q-solvable graph; m is the exponent parameter of the
// polynomial vertex bound q^(2m+1) echoed in the report.
KfreeResult construct_kfree(int q, int omega, int m);

}  // namespace hatcraft
