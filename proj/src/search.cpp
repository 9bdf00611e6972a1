#include "hatcraft/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <stdexcept>

#include "hatcraft/verifier.hpp"

namespace hatcraft {

namespace {

constexpr uint64_t kPrecomputeCap = 20'000'000;  // n * q^n pairs

struct CoverSearch {
    const Digraph& d;
    int q;
    int n;
    uint64_t total;
    std::vector<uint64_t> pow_rev;            // q^(n-1-v)
    std::vector<uint32_t> entry_off;          // per vertex
    uint32_t entry_count = 0;
    std::vector<uint32_t> eid;                // [cfg * n + v] -> entry id
    std::vector<uint32_t> entry_cfg_off;      // CSR of configs per entry
    std::vector<uint32_t> entry_cfgs;
    std::vector<uint8_t> entry_vertex;        // owning vertex of each entry

    std::vector<int8_t> assigned;
    std::vector<uint64_t> forbid;
    std::vector<int32_t> cover;
    uint64_t uncovered = 0;

    uint64_t nodes = 0;
    uint64_t max_nodes;
    std::chrono::steady_clock::time_point deadline;
    bool out_of_budget = false;

    std::vector<uint32_t> trail;  // configs whose cover count we bumped

    CoverSearch(const Digraph& dg, int q_, const SearchBudget& budget)
        : d(dg), q(q_), n(dg.n()), max_nodes(budget.max_nodes) {
        total = ipow(q, n);
        if (total * n > kPrecomputeCap)
            throw std::runtime_error("exact_solve: instance too large for table search");
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(budget.max_seconds));
        pow_rev.resize(n);
        for (int v = 0; v < n; ++v) pow_rev[v] = ipow(q, n - 1 - v);
        entry_off.resize(n);
        for (int v = 0; v < n; ++v) {
            entry_off[v] = entry_count;
            entry_count += static_cast<uint32_t>(ipow(q, d.in_degree(v)));
        }
        entry_vertex.resize(entry_count);
        for (int v = 0; v < n; ++v) {
            uint32_t end = v + 1 < n ? entry_off[v + 1] : entry_count;
            for (uint32_t e = entry_off[v]; e < end; ++e)
                entry_vertex[e] = static_cast<uint8_t>(v);
        }
        eid.resize(total * n);
        Config x(n, 0);
        for (uint64_t cfg = 0; cfg < total; ++cfg) {
            for (int v = 0; v < n; ++v) {
                uint64_t idx = 0;
                for (int u : d.in_neighbours(v)) idx = idx * q + x[u];
                eid[cfg * n + v] = entry_off[v] + static_cast<uint32_t>(idx);
            }
            for (int i = n - 1; i >= 0; --i) {
                if (++x[i] < q) break;
                x[i] = 0;
            }
        }
        // invert: configs touching each entry
        std::vector<uint32_t> counts(entry_count + 1, 0);
        for (uint64_t cfg = 0; cfg < total; ++cfg)
            for (int v = 0; v < n; ++v) ++counts[eid[cfg * n + v] + 1];
        entry_cfg_off.assign(counts.begin(), counts.end());
        for (uint32_t e = 0; e < entry_count; ++e) entry_cfg_off[e + 1] += entry_cfg_off[e];
        entry_cfgs.resize(total * n);
        std::vector<uint32_t> cursor(entry_cfg_off.begin(), entry_cfg_off.end() - 1);
        for (uint64_t cfg = 0; cfg < total; ++cfg)
            for (int v = 0; v < n; ++v)
                entry_cfgs[cursor[eid[cfg * n + v]]++] = static_cast<uint32_t>(cfg);

        assigned.assign(entry_count, -1);
        forbid.assign(entry_count, 0);
        cover.assign(total, 0);
        uncovered = total;
    }

    int digit(uint64_t cfg, int v) const {
        return static_cast<int>(cfg / pow_rev[v] % q);
    }

    bool budget_ok() {
        if (out_of_budget) return false;
        if (nodes > max_nodes ||
            ((nodes & 1023) == 0 && std::chrono::steady_clock::now() > deadline)) {
            out_of_budget = true;
            return false;
        }
        return true;
    }

    size_t assign(uint32_t e, int val) {
        assigned[e] = static_cast<int8_t>(val);
        int v = entry_vertex[e];
        size_t mark = trail.size();
        for (uint32_t i = entry_cfg_off[e]; i < entry_cfg_off[e + 1]; ++i) {
            uint32_t cfg = entry_cfgs[i];
            if (digit(cfg, v) == val) {
                if (cover[cfg]++ == 0) --uncovered;
                trail.push_back(cfg);
            }
        }
        return mark;
    }

    void unassign(uint32_t e, size_t mark) {
        assigned[e] = -1;
        while (trail.size() > mark) {
            uint32_t cfg = trail.back();
            trail.pop_back();
            if (--cover[cfg] == 0) ++uncovered;
        }
    }

    enum class Node { Sat, Unsat, Budget };

    Node run() {
        if (uncovered == 0) return Node::Sat;
        // uncovered config with fewest options
        uint64_t best_cfg = 0;
        int best_opts = -1;
        for (uint64_t cfg = 0; cfg < total; ++cfg) {
            if (cover[cfg] > 0) continue;
            int opts = 0;
            bool dead = false;
            for (int v = 0; v < n; ++v) {
                uint32_t e = eid[cfg * n + v];
                if (assigned[e] >= 0) continue;
                if (forbid[e] >> digit(cfg, v) & 1) continue;
                ++opts;
            }
            if (opts == 0) return Node::Unsat;
            if (best_opts < 0 || opts < best_opts) {
                best_opts = opts;
                best_cfg = cfg;
                if (opts == 1) break;
            }
            (void)dead;
        }
        std::vector<std::pair<uint32_t, int>> local_forbids;
        Node result = Node::Unsat;
        for (int v = 0; v < n; ++v) {
            uint32_t e = eid[best_cfg * n + v];
            int val = digit(best_cfg, v);
            if (assigned[e] >= 0) continue;
            if (forbid[e] >> val & 1) continue;
            ++nodes;
            if (!budget_ok()) { result = Node::Budget; break; }
            size_t mark = assign(e, val);
            Node sub = run();
            if (sub == Node::Sat) { result = sub; break; }  // keep assignments for extraction
            unassign(e, mark);
            if (sub == Node::Budget) { result = sub; break; }
            // siblings explore the complement: this entry avoids val
            forbid[e] |= uint64_t(1) << val;
            local_forbids.emplace_back(e, val);
            if (std::popcount(forbid[e]) == q && assigned[e] < 0) break;  // entry has no value left
        }
        for (auto [e, val] : local_forbids) forbid[e] &= ~(uint64_t(1) << val);
        return result;
    }

    Strategy extract() {
        std::vector<Strategy::Rule> rules(n);
        for (int v = 0; v < n; ++v) {
            rules[v].sees = d.in_neighbours(v);
            uint32_t end = v + 1 < n ? entry_off[v + 1] : entry_count;
            rules[v].table.resize(end - entry_off[v]);
            for (uint32_t e = entry_off[v]; e < end; ++e) {
                int val = assigned[e];
                if (val < 0) {
                    val = 0;
                    while (val < q && (forbid[e] >> val & 1)) ++val;
                    if (val == q) throw std::logic_error("exact_solve: no free value at extraction");
                }
                rules[v].table[e - entry_off[v]] = static_cast<uint8_t>(val);
            }
        }
        return Strategy(q, std::move(rules));
    }
};

}  // namespace

SolveResult exact_solve(const Digraph& d, int q, SearchBudget budget) {
    if (q < 2 || q > kMaxAlphabet) throw std::invalid_argument("exact_solve: bad alphabet");
    CoverSearch search(d, q, budget);
    auto node = search.run();
    SolveResult out;
    out.nodes = search.nodes;
    switch (node) {
        case CoverSearch::Node::Sat: {
            out.kind = SolveResult::Kind::Solvable;
            Strategy f = search.extract();
            if (verify(d, q, f, 1).kind != Verdict::Kind::Solved)
                throw std::logic_error("exact_solve: extracted witness fails verification");
            out.strategy = std::move(f);
            break;
        }
        case CoverSearch::Node::Unsat:
            out.kind = SolveResult::Kind::Unsolvable;
            break;
        case CoverSearch::Node::Budget:
            out.kind = SolveResult::Kind::Unknown;
            break;
    }
    return out;
}

namespace {

struct AffineSpace {
    int n, q;
    // coefficient layout: per vertex v: [c_v, M[v][u] for u in in(v) ascending]
    std::vector<int> owner;     // vertex of each coefficient
    std::vector<int> column;    // -1 for the constant, else u
    size_t k() const { return owner.size(); }
};

AffineSpace affine_space(const Digraph& d) {
    AffineSpace s{d.n(), 0, {}, {}};
    for (int v = 0; v < d.n(); ++v) {
        s.owner.push_back(v);
        s.column.push_back(-1);
        for (int u : d.in_neighbours(v)) {
            s.owner.push_back(v);
            s.column.push_back(u);
        }
    }
    return s;
}

Strategy affine_to_strategy(const Digraph& d, int q, const AffineSpace& s,
                            const std::vector<int>& coeff) {
    std::vector<Strategy::Rule> rules(d.n());
    size_t pos = 0;
    for (int v = 0; v < d.n(); ++v) {
        rules[v].sees = d.in_neighbours(v);
        int c = coeff[pos++];
        std::vector<int> row(rules[v].sees.size());
        for (size_t i = 0; i < row.size(); ++i) row[i] = coeff[pos++];
        uint64_t entries = ipow(q, rules[v].sees.size());
        rules[v].table.resize(entries);
        std::vector<int> tuple(rules[v].sees.size(), 0);
        for (uint64_t idx = 0; idx < entries; ++idx) {
            int g = c;
            for (size_t i = 0; i < row.size(); ++i) g += row[i] * tuple[i];
            rules[v].table[idx] = static_cast<uint8_t>((g % q + q) % q);
            for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
                if (++tuple[i] < q) break;
                tuple[i] = 0;
            }
        }
    }
    return Strategy(q, std::move(rules));
}

// Evaluates one vertex of an affine candidate directly from coefficients.
struct AffineEval {
    const Digraph& d;
    int q;
    const AffineSpace& s;
    std::vector<size_t> vstart;  // coefficient offset per vertex

    AffineEval(const Digraph& dg, int q_, const AffineSpace& sp) : d(dg), q(q_), s(sp) {
        vstart.resize(d.n());
        size_t pos = 0;
        for (int v = 0; v < d.n(); ++v) {
            vstart[v] = pos;
            pos += 1 + d.in_degree(v);
        }
    }

    int guess(const std::vector<int>& coeff, int v, const Config& x) const {
        size_t pos = vstart[v];
        int g = coeff[pos++];
        for (int u : d.in_neighbours(v)) g += coeff[pos++] * x[u];
        return (g % q + q) % q;
    }
};

template <typename Fn>
void enumerate_affine(const Digraph& d, int q, uint64_t max_candidates, Fn&& visit) {
    AffineSpace space = affine_space(d);
    uint64_t total;
    try {
        total = ipow(q, static_cast<unsigned>(space.k()));
    } catch (const std::overflow_error&) {
        throw std::runtime_error("affine search: coefficient space overflows");
    }
    if (total > max_candidates)
        throw std::runtime_error("affine search: " + std::to_string(total) +
                                 " candidates exceed budget " + std::to_string(max_candidates));
    AffineEval eval(d, q, space);
    std::vector<int> coeff(space.k(), 0);
    for (uint64_t step = 0; step < total; ++step) {
        visit(space, eval, coeff);
        for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i) {
            if (++coeff[i] < q) break;
            coeff[i] = 0;
        }
    }
}

}  // namespace

std::vector<Strategy> affine_strategy_search(const Digraph& d, int q,
                                             uint64_t max_candidates) {
    int n = d.n();
    uint64_t configs = ipow(q, n);
    if (configs > config_cap())
        throw std::runtime_error("affine_strategy_search: config space exceeds cap");
    std::vector<Strategy> solvers;
    enumerate_affine(d, q, max_candidates,
                     [&](const AffineSpace& space, const AffineEval& eval,
                         const std::vector<int>& coeff) {
        Config x(n, 0);
        for (uint64_t cfg = 0; cfg < configs; ++cfg) {
            bool some = false;
            for (int v = 0; v < n; ++v)
                if (eval.guess(coeff, v, x) == x[v]) { some = true; break; }
            if (!some) return;  // losing config: not a solver
            for (int i = n - 1; i >= 0; --i) {
                if (++x[i] < q) break;
                x[i] = 0;
            }
        }
        solvers.push_back(affine_to_strategy(d, q, space, coeff));
    });
    return solvers;
}

std::vector<Gadget> gadget_search(const Digraph& d, int q, int pivot,
                                  uint64_t max_candidates, bool include_weak,
                                  SearchBudget solve_budget) {
    int n = d.n();
    if (pivot < 0 || pivot >= n) throw std::invalid_argument("gadget_search: bad pivot");
    uint64_t configs = ipow(q, n);
    if (configs > config_cap())
        throw std::runtime_error("gadget_search: config space exceeds cap");

    bool known_unsolvable = false;
    try {
        auto solve = exact_solve(d, q, solve_budget);
        if (solve.kind == SolveResult::Kind::Solvable) return {};  // not a gadget graph
        known_unsolvable = solve.kind == SolveResult::Kind::Unsolvable;
    } catch (const std::runtime_error&) {
        // instance too large to decide; candidates are weak at best
    }
    if (!known_unsolvable && !include_weak) return {};

    uint64_t dom = ipow(q, n - 1);
    std::vector<int16_t> seen(dom, -1);
    std::vector<uint32_t> epoch(dom, 0);
    uint32_t cur_epoch = 0;

    std::vector<Gadget> found;
    enumerate_affine(d, q, max_candidates,
                     [&](const AffineSpace& space, const AffineEval& eval,
                         const std::vector<int>& coeff) {
        ++cur_epoch;
        bool any_losing = false;
        Config x(n, 0);
        std::vector<uint8_t> phi(dom, 0);
        for (uint64_t cfg = 0; cfg < configs; ++cfg) {
            bool some = false;
            for (int v = 0; v < n; ++v)
                if (eval.guess(coeff, v, x) == x[v]) { some = true; break; }
            if (!some) {
                any_losing = true;
                uint64_t key = 0;
                for (int v = 0; v < n; ++v)
                    if (v != pivot) key = key * q + x[v];
                if (epoch[key] == cur_epoch && seen[key] != x[pivot]) return;  // phi not a function
                epoch[key] = cur_epoch;
                seen[key] = x[pivot];
                phi[key] = x[pivot];
            }
            for (int i = n - 1; i >= 0; --i) {
                if (++x[i] < q) break;
                x[i] = 0;
            }
        }
        if (!any_losing) return;
        Gadget g{d, q, affine_to_strategy(d, q, space, coeff), pivot, std::move(phi),
                 d.name()};
        certify_gadget(g);  // hard re-check through the verifier
        found.push_back(std::move(g));
    });
    return found;
}

}  // namespace hatcraft
