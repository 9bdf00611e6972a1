#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "hatcraft/digraph.hpp"
#include "hatcraft/search.hpp"
#include "hatcraft/strategy.hpp"

namespace hatcraft {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// (n-I)(q/(q-1))^I < q, evaluated exactly as (n-I) q^I < q (q-1)^I.
// True certifies that any graph on n vertices with an acyclic induced
// subgraph of size I is not q-solvable.
bool counting_bound_check(int n, int I, int q);

// I + q((q-1)/q)^I: minimum vertex count for q-solvability given I.
BigRat min_vertex_bound(int I, int q);

// Root of a + ln a = 0, by bisection on [0.1, 1].
double alpha_constant(double tolerance);

// n < 2*alpha*(q-1); true certifies non-q-solvability for graphs whose
// acyclic induced subgraph covers at least half the vertices.
bool half_acyclic_check(int n, int q);

// Constructive adversary for a semibipartite partition with |L| <= q-2:
// returns a configuration on which every vertex of D guesses wrong under f.
Config semibipartite_refute(const Digraph& d, const SemibipartitePartition& part,
                            const Strategy& f, int q);

struct Certificate {
    enum class Kind { CountingBound, Semibipartite, TreeAxiom, ExhaustedSearch };
    Kind kind;
    int n = 0, I = 0, q = 0;
    std::vector<int> left;
    std::pair<int, int> edge{-1, -1};
    std::string line() const;  // one-line machine-parsable form
};

struct EdgeCriticalResult {
    enum class Kind { EdgeCritical, NotEdgeCritical, Inconclusive };
    Kind kind;
    std::string reason;
    std::vector<std::pair<std::pair<int, int>, Certificate>> certificates;
    std::vector<std::pair<int, int>> missing;  // edges without a certificate
};

struct EdgeCriticalOptions {
    bool axiom_trees_not_3solvable = false;  // external fact, user-enabled
    SearchBudget solve_budget{1'000'000, 10.0};
    uint64_t solve_size_limit = 2'000'000;  // skip exact search when n*q^n above
};

// f must solve the undirected D; every single-edge deletion then needs a
// non-solvability certificate (counting bound, semibipartite partition,
// the declared tree axiom, or exhaustive search).
EdgeCriticalResult edge_critical_check(const Digraph& d, int q, const Strategy& f,
                                       const EdgeCriticalOptions& opts = {});

}  // namespace hatcraft
