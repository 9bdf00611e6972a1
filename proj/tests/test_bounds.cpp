#include "doctest.h"

#include <cmath>

#include "hatcraft/bounds.hpp"
#include "hatcraft/strategies.hpp"
#include "hatcraft/verifier.hpp"

using namespace hatcraft;

namespace {

Digraph random_digraph(int n, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && rng.next() % 3 == 0) arcs.emplace_back(u, v);
    return Digraph(n, std::move(arcs));
}

Strategy random_strategy(const Digraph& d, int q, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Strategy::Rule> rules(d.n());
    for (int v = 0; v < d.n(); ++v) {
        rules[v].sees = d.in_neighbours(v);
        rules[v].table.resize(ipow(q, static_cast<unsigned>(rules[v].sees.size())));
        for (auto& t : rules[v].table) t = static_cast<uint8_t>(rng.next() % q);
    }
    return Strategy(q, std::move(rules));
}

}  // namespace

TEST_CASE("counting bound") {
    CHECK(counting_bound_check(4, 3, 4));        // 64 < 108
    CHECK_FALSE(counting_bound_check(4, 3, 3));  // 27 not< 24
    CHECK(counting_bound_check(5, 5, 2));        // 0 < positive
    CHECK_FALSE(counting_bound_check(40, 3, 3));
    CHECK_THROWS(counting_bound_check(3, 4, 3));
    CHECK_THROWS(counting_bound_check(3, 1, 1));

    // the exact comparison agrees with the floating-point reading of the
    // inequality whenever the float margin is unambiguous
    for (int n = 1; n <= 25; ++n)
        for (int q = 2; q <= 6; ++q)
            for (int I = 0; I <= n; ++I) {
                double lhs = (n - I) * std::pow(double(q) / (q - 1), I);
                if (std::abs(lhs - q) < 1e-6 * q) continue;
                CHECK(counting_bound_check(n, I, q) == (lhs < q));
            }
}

TEST_CASE("minimum vertex bound") {
    CHECK(min_vertex_bound(3, 3) == BigRat(35, 9));
    CHECK(min_vertex_bound(3, 4) == BigRat(75, 16));
    CHECK(min_vertex_bound(0, 5) == BigRat(5));
    // monotone in I once past the dip: consistency against the counting bound
    for (int q = 2; q <= 5; ++q)
        for (int I = 0; I <= 12; ++I) {
            BigRat bound = min_vertex_bound(I, q);
            // n below the bound fails the solvability precondition
            int n_floor = static_cast<int>(boost::multiprecision::numerator(bound) /
                                           boost::multiprecision::denominator(bound));
            CHECK(counting_bound_check(n_floor, I, q) ==
                  (BigRat(n_floor) < bound));
        }
    CHECK_THROWS(min_vertex_bound(-1, 3));
}

TEST_CASE("alpha constant") {
    double a = alpha_constant(1e-10);
    CHECK(std::abs(a + std::log(a)) <= 1e-10);
    CHECK(a == doctest::Approx(0.567143).epsilon(1e-5));
    CHECK_THROWS(alpha_constant(0.0));
}

TEST_CASE("half acyclic check") {
    // threshold 2*alpha*(q-1), alpha ~ 0.5671
    CHECK(half_acyclic_check(10, 10));        // 10 < 10.208
    CHECK_FALSE(half_acyclic_check(11, 10));
    CHECK(half_acyclic_check(1, 2));
    CHECK_FALSE(half_acyclic_check(2, 2));
}

TEST_CASE("semibipartite adversary") {
    // undirected star, centre alone on the left
    auto star = complete_bipartite(1, 3);
    SemibipartitePartition part{{0}, {1, 2, 3}, {1, 2, 3}};
    for (uint64_t s = 0; s < 10; ++s) {
        auto f = random_strategy(star, 3, 500 + s);
        Config c = semibipartite_refute(star, part, f, 3);
        CHECK_FALSE(f.some_correct(c));
    }

    // directed 3-cycle against its repeat-your-neighbour strategy
    auto c3 = make_gadget(GadgetKind::Cycle3);
    SemibipartitePartition cpart{{0}, {1, 2}, {1, 2}};
    Config lc = semibipartite_refute(c3.graph, cpart, c3.strategy, 3);
    CHECK_FALSE(c3.strategy.some_correct(lc));

    // K_{2,2} over q=4 has room for a 2-vertex left side
    auto k22 = complete_bipartite(2, 2);
    SemibipartitePartition kpart{{0, 1}, {2, 3}, {2, 3}};
    for (uint64_t s = 0; s < 10; ++s) {
        auto f = random_strategy(k22, 4, 700 + s);
        Config c = semibipartite_refute(k22, kpart, f, 4);
        CHECK_FALSE(f.some_correct(c));
    }

    // randomized: whenever the best partition is small enough, the adversary
    // always produces a losing configuration
    int exercised = 0;
    for (uint64_t s = 0; s < 40; ++s) {
        int q = 3 + int(s % 3);
        auto d = random_digraph(3 + int(s % 4), 900 + s);
        SemibipartitePartition bp;
        try {
            bp = best_semibipartite(d);
        } catch (const std::runtime_error&) {
            continue;  // graph has no semibipartite partition
        }
        if (int(bp.left.size()) > q - 2) continue;
        auto f = random_strategy(d, q, 950 + s);
        Config c = semibipartite_refute(d, bp, f, q);
        CHECK_FALSE(f.some_correct(c));
        ++exercised;
    }
    CHECK(exercised > 5);

    // |L| too large for the alphabet
    CHECK_THROWS_AS(semibipartite_refute(k22, kpart, random_strategy(k22, 3, 1), 3),
                    std::invalid_argument);
}

TEST_CASE("certificate lines") {
    Certificate c1{Certificate::Kind::CountingBound, 6, 3, 3};
    CHECK(c1.line() == "certificate counting-bound n=6 I=3 q=3");
    Certificate c2{Certificate::Kind::Semibipartite};
    c2.q = 4;
    c2.left = {0, 2};
    CHECK(c2.line() == "certificate semibipartite L=0,2 q=4");
    Certificate c3{Certificate::Kind::TreeAxiom};
    c3.edge = {1, 2};
    CHECK(c3.line() == "certificate axiom trees-not-3solvable edge=1-2");
    Certificate c4{Certificate::Kind::ExhaustedSearch};
    c4.q = 3;
    CHECK(c4.line() == "certificate exhausted-search q=3");
}

TEST_CASE("edge criticality") {
    // K3 at q=3: every deletion leaves a path, already killed by counting
    // (1 * 3^2 = 9 < 3 * 2^2 = 12)
    auto [k3, kf] = clique_strategy(3);
    auto rk = edge_critical_check(k3, 3, kf);
    CHECK(rk.kind == EdgeCriticalResult::Kind::EdgeCritical);
    CHECK(rk.certificates.size() == 3);
    for (const auto& [e, cert] : rk.certificates)
        CHECK(cert.kind == Certificate::Kind::CountingBound);

    // K_{2,2} at q=3: every deletion leaves a 4-vertex path where counting
    // fails (2 * 9 >= 12) and no 1-vertex left side works, so only the
    // exhaustive search settles it
    auto [bd, bf] = k22_strategy();
    auto rx = edge_critical_check(bd, 3, bf);
    CHECK(rx.kind == EdgeCriticalResult::Kind::EdgeCritical);
    CHECK(rx.certificates.size() == 4);
    for (const auto& [e, cert] : rx.certificates)
        CHECK(cert.kind == Certificate::Kind::ExhaustedSearch);

    // those paths are trees, so the axiom short-circuits the search
    EdgeCriticalOptions tree_opts;
    tree_opts.axiom_trees_not_3solvable = true;
    auto rt = edge_critical_check(bd, 3, bf, tree_opts);
    CHECK(rt.kind == EdgeCriticalResult::Kind::EdgeCritical);
    for (const auto& [e, cert] : rt.certificates)
        CHECK(cert.kind == Certificate::Kind::TreeAxiom);

    // C6 deletions need ~1.3M-6M search nodes each; under a starved budget
    // the checker is honestly inconclusive rather than wrong
    auto ec6 = even_cycle_strategy(3);
    EdgeCriticalOptions small;
    small.solve_budget = SearchBudget{1000, 120.0};
    auto rdef = edge_critical_check(ec6.graph, 3, ec6.strategy, small);
    CHECK(rdef.kind == EdgeCriticalResult::Kind::Inconclusive);
    CHECK(rdef.missing.size() == 6);

    // with the declared external fact the paths are settled as trees instead
    EdgeCriticalOptions opts;
    opts.axiom_trees_not_3solvable = true;
    auto ra = edge_critical_check(ec6.graph, 3, ec6.strategy, opts);
    CHECK(ra.kind == EdgeCriticalResult::Kind::EdgeCritical);
    for (const auto& [e, cert] : ra.certificates)
        CHECK(cert.kind == Certificate::Kind::TreeAxiom);

    // a strategy that does not solve the graph cannot witness criticality
    auto ec8 = even_cycle_strategy(4);
    auto rb = edge_critical_check(ec8.graph, 3, ec8.strategy);
    CHECK(rb.kind == EdgeCriticalResult::Kind::NotEdgeCritical);
    CHECK(rb.reason == "strategy does not solve the graph");

    // K4 at q=3 is solvable but not edge-critical: deletions keep a triangle
    auto [k4, pf] = clique_partition_strategy(4, 3);
    auto rn = edge_critical_check(k4, 3, pf);
    CHECK(rn.kind == EdgeCriticalResult::Kind::NotEdgeCritical);
    CHECK(rn.reason.find("still solvable") != std::string::npos);

    CHECK_THROWS_AS(edge_critical_check(directed_cycle(3), 3, make_gadget(GadgetKind::Cycle3).strategy),
                    std::invalid_argument);
}
