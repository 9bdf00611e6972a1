#include "doctest.h"

#include "hatcraft/digraph.hpp"
#include "hatcraft/verifier.hpp"

using namespace hatcraft;

namespace {

// small random digraph, arc probability ~1/3
Digraph random_digraph(int n, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && rng.next() % 3 == 0) arcs.emplace_back(u, v);
    return Digraph(n, std::move(arcs));
}

}  // namespace

TEST_CASE("named constructions") {
    CHECK(clique(3).arcs().size() == 6);
    CHECK(complete_bipartite(2, 4).arcs().size() == 16);
    CHECK(path(4).arcs().size() == 6);
    CHECK(directed_cycle(5).arcs().size() == 5);
    CHECK(undirected_cycle(5).arcs().size() == 10);

    auto g6 = six_vertex_gadget_graph();
    CHECK(g6.arcs().size() == 15);
    for (int v = 0; v < 6; ++v) CHECK(g6.in_degree(v) == (v < 3 ? 2 : 3));
    CHECK(g6.is_oriented());

    CHECK_THROWS(clique(0));
    CHECK_THROWS(directed_cycle(2));
    CHECK_THROWS(Digraph(2, {{0, 0}}));
    CHECK_THROWS(Digraph(2, {{0, 1}, {0, 1}}));
}

TEST_CASE("lex product counts and clique numbers") {
    // closed formulas r^2*|E| + n*r*(r-1) over assorted graphs
    std::vector<Digraph> graphs = {clique(2), clique(4), directed_cycle(3),
                                   undirected_cycle(4), path(5), complete_bipartite(2, 2),
                                   six_vertex_gadget_graph()};
    for (uint64_t s = 0; s < 6; ++s) graphs.push_back(random_digraph(4 + s % 3, s));
    for (const auto& d : graphs) {
        for (int r = 1; r <= 3; ++r) {
            auto p = lex_product(d, r);
            CHECK(p.n() == d.n() * r);
            CHECK(p.arcs().size() ==
                  size_t(r) * r * d.arcs().size() + size_t(d.n()) * r * (r - 1));
            if (d.n() * r <= 12)
                CHECK(clique_number(p) == r * clique_number(d));
        }
    }

    CHECK(lex_product(directed_cycle(3), 2).arcs().size() == 18);
    // (K2,2) blown by 2 is K4
    auto k4ish = lex_product(clique(2), 2);
    CHECK(k4ish.n() == 4);
    CHECK(k4ish.arcs().size() == 12);
    CHECK(clique_number(k4ish) == 4);
    CHECK(clique_number(lex_product(complete_bipartite(2, 2), 2)) == 4);
    CHECK(clique_number(lex_product(complete_bipartite(2, 2), 3)) == 6);
}

TEST_CASE("clique number") {
    CHECK(clique_number(clique(4)) == 4);
    CHECK(clique_number(directed_cycle(5)) == 1);
    CHECK(clique_number(complete_bipartite(3, 3)) == 2);
}

TEST_CASE("max acyclic induced") {
    auto p5 = directed_cycle(5);
    auto w = max_acyclic_induced(p5);
    CHECK(w.size == 4);
    CHECK(w.witness == std::vector<int>{0, 1, 2, 3});  // lexicographically smallest

    // any genuinely acyclic digraph keeps everything
    Digraph dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK(max_acyclic_induced(dag).size == 4);

    CHECK(max_acyclic_induced(undirected_cycle(3)).size == 1);
    CHECK(max_acyclic_induced(directed_cycle(3)).size == 2);

    CHECK_THROWS(max_acyclic_induced(clique(21)));

    for (uint64_t s = 100; s < 120; ++s) {
        auto d = random_digraph(3 + s % 6, s);
        auto aw = max_acyclic_induced(d);
        CHECK(induces_acyclic(d, aw.witness));
    }
}

TEST_CASE("best semibipartite") {
    CHECK(best_semibipartite(complete_bipartite(1, 3)).left.size() == 3);
    CHECK(best_semibipartite(directed_cycle(3)).left.size() == 1);
    CHECK(best_semibipartite(complete_bipartite(2, 2)).left.size() == 2);

    // some graphs admit no partition at all: any independent set in K4 has
    // one vertex and the remaining triangle keeps its 2-cycles
    CHECK_THROWS_AS(best_semibipartite(clique(4)), std::runtime_error);
    CHECK_FALSE(semibipartite_with_small_left(clique(4), 4).has_value());

    int found = 0;
    for (uint64_t s = 200; s < 230; ++s) {
        auto d = random_digraph(3 + s % 6, s);
        SemibipartitePartition part;
        try {
            part = best_semibipartite(d);
        } catch (const std::runtime_error&) {
            CHECK_FALSE(semibipartite_with_small_left(d, d.n()).has_value());
            continue;
        }
        ++found;
        CHECK(induces_independent(d, part.left));
        CHECK(induces_acyclic(d, part.right));
        CHECK(part.left.size() + part.right.size() == size_t(d.n()));
        // topo order respects arcs inside R
        std::vector<int> pos(d.n(), -1);
        for (size_t i = 0; i < part.topo.size(); ++i) pos[part.topo[i]] = int(i);
        for (auto [u, v] : d.arcs())
            if (pos[u] >= 0 && pos[v] >= 0) CHECK(pos[u] < pos[v]);
    }
    CHECK(found > 10);
}

TEST_CASE("semibipartite with small left") {
    auto p = semibipartite_with_small_left(complete_bipartite(1, 3), 1);
    REQUIRE(p.has_value());
    CHECK(p->left.size() == 1);
    CHECK(p->left[0] == 0);
    CHECK_FALSE(semibipartite_with_small_left(clique(4), 1).has_value());
}

TEST_CASE("forest detection") {
    CHECK(is_forest(path(6)));
    CHECK_FALSE(is_forest(undirected_cycle(4)));
    CHECK_FALSE(is_forest(directed_cycle(4)));  // not undirected
}

TEST_CASE("digraph text format") {
    auto d = parse_digraph("n 2\narc 0 1\n");
    CHECK(d.n() == 2);
    CHECK(d.arcs() == std::vector<std::pair<int, int>>{{0, 1}});

    auto e = parse_digraph("n 2\nedge 0 1\n");
    CHECK(e.arcs() == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});

    CHECK_THROWS_WITH_AS(parse_digraph("n 1\narc 0 0\n"),
                         doctest::Contains("self-loop"), std::runtime_error);
    CHECK_THROWS(parse_digraph("n 2\narc 0 1\narc 0 1\n"));
    CHECK_THROWS(parse_digraph("n 2\narc 0 2\n"));
    CHECK_THROWS(parse_digraph("arc 0 1\n"));
    CHECK_THROWS(parse_digraph("n 2\nfoo 0 1\n"));

    // round trip across assorted graphs, comments ignored
    for (uint64_t s = 300; s < 330; ++s) {
        auto g = random_digraph(2 + s % 7, s);
        CHECK(parse_digraph(serialize_digraph(g)) == g);
    }
    CHECK(parse_digraph("# hats\nn 3\nedge 0 2\n") ==
          Digraph(3, {{0, 2}, {2, 0}}));
    CHECK(serialize_digraph(undirected_cycle(3)) ==
          "n 3\nedge 0 1\nedge 0 2\nedge 1 2\n");
}
