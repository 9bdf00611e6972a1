#include "hatcraft/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hatcraft/verifier.hpp"

namespace hatcraft {

namespace {

BigInt bpow(int base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

bool counting_bound_check(int n, int I, int q) {
    if (I < 0 || I > n || q < 2) throw std::invalid_argument("counting_bound_check: bad parameters");
    return BigInt(n - I) * bpow(q, I) < BigInt(q) * bpow(q - 1, I);
}

BigRat min_vertex_bound(int I, int q) {
    if (I < 0 || q < 2) throw std::invalid_argument("min_vertex_bound: bad parameters");
    return BigRat(I) + BigRat(BigInt(q) * bpow(q - 1, I), bpow(q, I));
}

double alpha_constant(double tolerance) {
    if (tolerance <= 0) throw std::invalid_argument("alpha_constant: tolerance > 0 required");
    double lo = 0.1, hi = 1.0;
    double mid = 0.5;
    for (int it = 0; it < 200; ++it) {
        mid = (lo + hi) / 2;
        double r = mid + std::log(mid);
        if (std::abs(r) <= tolerance) break;
        if (r < 0) lo = mid;
        else hi = mid;
    }
    return mid;
}

bool half_acyclic_check(int n, int q) {
    double alpha = alpha_constant(1e-12);
    return n < 2 * alpha * (q - 1);
}

Config semibipartite_refute(const Digraph& d, const SemibipartitePartition& part,
                            const Strategy& f, int q) {
    check_shape(d, q, f);
    int m = static_cast<int>(part.left.size());
    if (m > q - 2)
        throw std::invalid_argument("semibipartite_refute: |L| <= q-2 required");
    if (static_cast<int>(part.left.size() + part.right.size()) != d.n() ||
        part.topo.size() != part.right.size())
        throw std::invalid_argument("semibipartite_refute: malformed partition");
    if (!induces_independent(d, part.left) || !induces_acyclic(d, part.right))
        throw std::invalid_argument("semibipartite_refute: partition invalid for graph");

    std::vector<bool> in_left(d.n(), false);
    for (int v : part.left) in_left[v] = true;

    // y over R in topological order: at each step, dodge the guesses evaluated
    // on every candidate uniform word w_a (a nonzero) over L
    Config conf(d.n(), 0);
    std::vector<bool> y_set(d.n(), false);
    for (int rt : part.topo) {
        for (int u : d.in_neighbours(rt))
            if (!in_left[u] && !y_set[u])
                throw std::logic_error("semibipartite_refute: topo order violated");
        uint64_t taken = 0;
        for (int a = 1; a < q; ++a) {
            for (int v : part.left) conf[v] = static_cast<uint8_t>(a);
            taken |= uint64_t(1) << f.guess(rt, conf);
        }
        int y = 0;
        while (y < q && (taken >> y & 1)) ++y;
        if (y == q) throw std::logic_error("semibipartite_refute: no colour available");
        conf[rt] = static_cast<uint8_t>(y);
        y_set[rt] = true;
    }
    // b: smallest nonzero colour dodging every left guess (nonzero so the
    // uniform word stays inside the adversary's candidate set)
    uint64_t taken = 0;
    for (int l : part.left) taken |= uint64_t(1) << f.guess(l, conf);
    int b = 1;
    while (b < q && (taken >> b & 1)) ++b;
    if (b == q) throw std::logic_error("semibipartite_refute: no colour for L");
    for (int v : part.left) conf[v] = static_cast<uint8_t>(b);
    if (f.some_correct(conf))
        throw std::logic_error("semibipartite_refute: produced config is not losing");
    return conf;
}

std::string Certificate::line() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::CountingBound:
            out << "certificate counting-bound n=" << n << " I=" << I << " q=" << q;
            break;
        case Kind::Semibipartite: {
            out << "certificate semibipartite L=";
            for (size_t i = 0; i < left.size(); ++i) out << (i ? "," : "") << left[i];
            if (left.empty()) out << "-";
            out << " q=" << q;
            break;
        }
        case Kind::TreeAxiom:
            out << "certificate axiom trees-not-3solvable edge=" << edge.first << "-"
                << edge.second;
            break;
        case Kind::ExhaustedSearch:
            out << "certificate exhausted-search q=" << q;
            break;
    }
    return out.str();
}

EdgeCriticalResult edge_critical_check(const Digraph& d, int q, const Strategy& f,
                                       const EdgeCriticalOptions& opts) {
    if (!d.is_undirected())
        throw std::invalid_argument("edge_critical_check: graph must be undirected");
    EdgeCriticalResult out;
    auto verdict = verify(d, q, f, 1);
    if (verdict.kind != Verdict::Kind::Solved) {
        out.kind = EdgeCriticalResult::Kind::NotEdgeCritical;
        out.reason = "strategy does not solve the graph";
        return out;
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : d.arcs())
        if (u < v) edges.emplace_back(u, v);

    for (auto e : edges) {
        Digraph de = without_edge(d, e.first, e.second);
        bool certified = false;
        Certificate cert;

        auto acyclic = max_acyclic_induced(de);
        if (counting_bound_check(de.n(), acyclic.size, q)) {
            cert = Certificate{Certificate::Kind::CountingBound, de.n(), acyclic.size, q};
            certified = true;
        }
        if (!certified) {
            if (auto part = semibipartite_with_small_left(de, q - 2)) {
                cert = Certificate{Certificate::Kind::Semibipartite};
                cert.q = q;
                cert.left = part->left;
                certified = true;
            }
        }
        if (!certified && opts.axiom_trees_not_3solvable && q == 3 && is_forest(de)) {
            cert = Certificate{Certificate::Kind::TreeAxiom};
            cert.edge = e;
            certified = true;
        }
        if (!certified) {
            uint64_t size = ipow(q, de.n());
            if (size * de.n() <= opts.solve_size_limit) {
                auto solve = exact_solve(de, q, opts.solve_budget);
                if (solve.kind == SolveResult::Kind::Unsolvable) {
                    cert = Certificate{Certificate::Kind::ExhaustedSearch};
                    cert.q = q;
                    certified = true;
                } else if (solve.kind == SolveResult::Kind::Solvable) {
                    out.kind = EdgeCriticalResult::Kind::NotEdgeCritical;
                    out.reason = "graph minus edge " + std::to_string(e.first) + "-" +
                                 std::to_string(e.second) + " is still solvable";
                    return out;
                }
            }
        }
        if (certified) out.certificates.emplace_back(e, cert);
        else out.missing.push_back(e);
    }
    if (out.missing.empty()) {
        out.kind = EdgeCriticalResult::Kind::EdgeCritical;
    } else {
        out.kind = EdgeCriticalResult::Kind::Inconclusive;
        out.reason = "no non-solvability certificate for " +
                     std::to_string(out.missing.size()) + " edge(s)";
    }
    return out;
}

}  // namespace hatcraft
