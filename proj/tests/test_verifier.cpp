#include "doctest.h"

#include <algorithm>

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

TEST_CASE("exhaustive verify") {
    auto [kd, kf] = clique_strategy(2);
    auto v = verify(kd, 2, kf);
    CHECK(v.kind == Verdict::Kind::Solved);
    CHECK(v.losing_count == 0);
    CHECK(v.total_correct == 4);

    auto c3 = make_gadget(GadgetKind::Cycle3);
    auto nv = verify(c3.graph, 3, c3.strategy);
    CHECK(nv.kind == Verdict::Kind::NotSolvedBy);
    CHECK(nv.losing_count == 6);
    CHECK(std::is_sorted(nv.losing.begin(), nv.losing.end()));
    CHECK(nv.losing.front() == Config{0, 1, 2});
    CHECK_FALSE(nv.truncated);

    auto capped = verify(c3.graph, 3, c3.strategy, 2);
    CHECK(capped.losing.size() == 2);
    CHECK(capped.losing_count == 6);
    CHECK(capped.truncated);
    CHECK(capped.losing.front() == Config{0, 1, 2});

    // beyond the enumeration cap
    auto [big_d, big_f] = cycle2_strategy(30);
    CHECK_THROWS_AS(verify(big_d, 2, big_f), std::runtime_error);
}

TEST_CASE("every vertex is right on exactly q^(n-1) configurations") {
    for (uint64_t s = 0; s < 30; ++s) {
        int n = 2 + int(s % 4);
        int q = 2 + int(s % 3);
        auto d = random_digraph(n, 1000 + s);
        auto f = random_strategy(d, q, 2000 + s);
        auto v = verify(d, q, f);
        CHECK(v.total_correct == uint64_t(n) * ipow(q, unsigned(n - 1)));
        CHECK(v.losing_count <= ipow(q, unsigned(n)));
        for (const auto& l : v.losing) CHECK_FALSE(f.some_correct(l));
    }
}

TEST_CASE("sampled verify") {
    auto [d, f] = cycle2_strategy(10);
    auto v = sample_verify(d, 2, f, 1000, 42);
    CHECK(v.kind == Verdict::Kind::SampledClean);
    CHECK(v.samples == 1000);
    CHECK(v.seed == 42);

    auto ec = even_cycle_strategy(2);  // C4 over q=3: exactly 3 losing configs
    auto bad = sample_verify(ec.graph, 3, ec.strategy, 100000, 7);
    CHECK(bad.kind == Verdict::Kind::SampledCounterexample);
    REQUIRE(bad.counterexample.has_value());
    CHECK_FALSE(ec.strategy.some_correct(*bad.counterexample));

    // deterministic stream
    auto again = sample_verify(ec.graph, 3, ec.strategy, 100000, 7);
    CHECK(again.counterexample == bad.counterexample);

    CHECK_THROWS(sample_verify(d, 2, f, 0, 1));
}

TEST_CASE("gadget certification") {
    auto c3 = make_gadget(GadgetKind::Cycle3);
    auto induced = certify_gadget(c3);
    CHECK(induced.size() == 9);
    CHECK(induced[1 * 3 + 2] == 0);  // losing key (1,2) forces pivot 0

    auto g6 = make_gadget(GadgetKind::SixVertex);
    CHECK(certify_gadget(g6).size() == 1024);

    // tampered table
    auto broken = c3;
    broken.phi[1 * 3 + 2] = 1;
    CHECK_THROWS_AS(certify_gadget(broken), GadgetCertifyError);
    try {
        certify_gadget(broken);
    } catch (const GadgetCertifyError& e) {
        CHECK(e.kind == GadgetCertifyError::Kind::NotAFunction);
    }

    // a solving strategy has no losing set to certify
    auto solved = cycle2_strategy(3);
    Gadget fake{solved.graph, 2, solved.strategy, 0, std::vector<uint8_t>(4, 0), "fake"};
    try {
        certify_gadget(fake);
        CHECK(false);
    } catch (const GadgetCertifyError& e) {
        CHECK(e.kind == GadgetCertifyError::Kind::EmptyLosingSet);
    }

    // pivot not a function of the rest: lone vertex always guessing 0
    Digraph lone(1, {});
    Strategy always0(3, {Strategy::Rule{{}, {0}, nullptr}});
    Gadget twofold{lone, 3, always0, 0, std::vector<uint8_t>(1, 1), "twofold"};
    try {
        certify_gadget(twofold);
        CHECK(false);
    } catch (const GadgetCertifyError& e) {
        CHECK(e.kind == GadgetCertifyError::Kind::NotAFunction);
    }
}

TEST_CASE("remoteness") {
    CHECK(remoteness({{1, 2, 0}}, 3) == 0);
    CHECK(remoteness({{0}, {1}, {2}}, 3) == 1);
    CHECK(remoteness({{0, 0}, {1, 1}}, 3) == 1);

    // the q-1 uniform words over m = q-1 letters sit within distance m-1 of
    // a common centre
    for (int q : {3, 4, 5}) {
        int m = q - 1;
        std::vector<Config> words;
        for (int a = 1; a < q; ++a) words.emplace_back(m, uint8_t(a));
        CHECK(remoteness(words, q) == m - 1);
        CHECK(is_distinguishable(words, q));
    }

    // the full cube is never distinguishable
    std::vector<Config> all;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) all.push_back({uint8_t(a), uint8_t(b)});
    CHECK(remoteness(all, 3) == 2);
    CHECK_FALSE(is_distinguishable(all, 3));

    CHECK_THROWS(remoteness({}, 3));
    CHECK_THROWS(remoteness({{0, 1}, {0}}, 3));
}

TEST_CASE("verdict serialization") {
    Verdict solved;
    solved.kind = Verdict::Kind::Solved;
    CHECK(serialize_verdict(solved) == "verdict solved\nlosing-count 0\n");

    Verdict lost;
    lost.kind = Verdict::Kind::NotSolvedBy;
    lost.losing_count = 2;
    lost.losing = {{0, 1, 2}, {0, 2, 1}};
    CHECK(serialize_verdict(lost) ==
          "verdict not-solved\nlosing-count 2\n0 1 2\n0 2 1\n");

    Verdict clean;
    clean.kind = Verdict::Kind::SampledClean;
    clean.samples = 10;
    clean.seed = 3;
    CHECK(serialize_verdict(clean) == "verdict sampled-clean\nsamples 10\nseed 3\n");
}
