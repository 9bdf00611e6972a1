#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hatcraft/strategies.hpp"
#include "hatcraft/strategy.hpp"

namespace hatcraft {

struct SearchBudget {
    uint64_t max_nodes = 1'000'000;
    double max_seconds = 60.0;
};

struct SolveResult {
    enum class Kind { Solvable, Unsolvable, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<Strategy> strategy;  // verified witness when Solvable
    uint64_t nodes = 0;
};

// Complete backtracking over per-vertex guess tables, organized as an exact
// cover: branch on the uncovered configuration with fewest covering options,
// in canonical order. Unsolvable only after exhausting the space; budget
// exhaustion yields Unknown, never a wrong verdict.
SolveResult exact_solve(const Digraph& d, int q, SearchBudget budget = {});

// All affine strategies f(x) = Mx + c (mod q) with support(M) inside the
// in-adjacency and zero diagonal that solve D, in enumeration (canonical)
// order. Throws if the coefficient space exceeds max_candidates.
std::vector<Strategy> affine_strategy_search(const Digraph& d, int q,
                                             uint64_t max_candidates = 20'000'000);

// Affine strategies with a nonempty losing set on which the pivot colour is a
// function of the others, certified via the verifier. Candidates are dropped
// when exact_solve proves D q-solvable (a gadget's graph must not be); if the
// decision is out of reach, they are kept only with include_weak.
std::vector<Gadget> gadget_search(const Digraph& d, int q, int pivot,
                                  uint64_t max_candidates = 20'000'000,
                                  bool include_weak = false,
                                  SearchBudget solve_budget = {});

}  // namespace hatcraft
