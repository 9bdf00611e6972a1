#include "hatcraft/strategies.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace hatcraft {

namespace {

int md(int v, int m) {
    v %= m;
    return v < 0 ? v + m : v;
}

// Builds per-vertex rules from a shared callback, then materializes the
// small tables.
Strategy build_strategy(const Digraph& d, int q,
                        std::function<int(int, const SeesView&)> rule,
                        uint64_t dense_cap = uint64_t(1) << 20) {
    std::vector<Strategy::Rule> rules(d.n());
    auto shared = std::make_shared<std::function<int(int, const SeesView&)>>(std::move(rule));
    for (int v = 0; v < d.n(); ++v) {
        rules[v].sees = d.in_neighbours(v);
        rules[v].fn = [shared, v](const SeesView& view) { return (*shared)(v, view); };
    }
    Strategy f(q, std::move(rules));
    f.materialize(dense_cap);
    return f;
}

}  // namespace

GraphStrategy clique_strategy(int q) {
    if (q < 2) throw std::invalid_argument("clique_strategy: q >= 2 required");
    Digraph d = clique(q);
    auto f = build_strategy(d, q, [q](int v, const SeesView& view) {
        int s = 0;
        for (int u = 0; u < q; ++u)
            if (u != v) s += view[u];
        return md(v - s, q);
    });
    return {std::move(d), std::move(f)};
}

GraphStrategy clique_partition_strategy(int n, int q) {
    if (n < 1 || q < 2) throw std::invalid_argument("clique_partition_strategy: bad parameters");
    Digraph d = clique(n);
    int blocks = n / q;
    auto f = build_strategy(d, q, [q, blocks](int v, const SeesView& view) {
        int b = v / q;
        if (b >= blocks) return 0;  // leftover vertices
        int s = 0;
        for (int u = b * q; u < (b + 1) * q; ++u)
            if (u != v) s += view[u];
        return md(v - b * q - s, q);
    });
    return {std::move(d), std::move(f)};
}

namespace {

// Lexicographic enumeration of {1..q-1}^m.
std::vector<std::vector<int>> plus_words(int q, int m) {
    std::vector<std::vector<int>> zs;
    std::vector<int> z(m, 1);
    while (true) {
        zs.push_back(z);
        int i = m - 1;
        while (i >= 0 && z[i] == q - 1) z[i--] = 1;
        if (i < 0) break;
        ++z[i];
    }
    return zs;
}

int right_guess(const std::vector<int>& z, const std::vector<int>& x) {
    int m = static_cast<int>(z.size());
    for (int i = 0; i < m; ++i)
        if (x[i] == z[i]) return i + 1;  // 1-based agreement position
    return 0;  // Hamming distance m
}

}  // namespace

GraphStrategy bipartite_strategy(int q) {
    if (q < 2) throw std::invalid_argument("bipartite_strategy: q >= 2 required");
    int m = q - 1;
    auto zs = std::make_shared<std::vector<std::vector<int>>>(plus_words(q, m));
    int nright = static_cast<int>(zs->size());
    Digraph d = complete_bipartite(m, nright);
    auto f = build_strategy(d, q, [q, m, nright, zs](int v, const SeesView& view) {
        if (v >= m) {
            std::vector<int> x(m);
            for (int i = 0; i < m; ++i) x[i] = view[i];
            return right_guess((*zs)[v - m], x);
        }
        // Left rule: collect the left colourings on which every right vertex
        // is wrong, then take the lexicographically smallest word covering
        // them all within Hamming distance m-1. The strategy certifies itself:
        // a covering word always exists when the set is reachable.
        std::vector<std::vector<int>> consistent;
        std::vector<int> x(m, 0);
        while (true) {
            bool all_wrong = true;
            for (int k = 0; k < nright; ++k)
                if (right_guess((*zs)[k], x) == view[m + k]) { all_wrong = false; break; }
            if (all_wrong) consistent.push_back(x);
            int i = m - 1;
            while (i >= 0 && x[i] == q - 1) x[i--] = 0;
            if (i < 0) break;
            ++x[i];
        }
        if (!consistent.empty()) {
            std::vector<int> a(m, 0);
            while (true) {
                bool covers = true;
                for (const auto& s : consistent) {
                    int d_h = 0;
                    for (int i = 0; i < m; ++i) d_h += a[i] != s[i];
                    if (d_h > m - 1) { covers = false; break; }
                }
                if (covers) return a[v];
                int i = m - 1;
                while (i >= 0 && a[i] == q - 1) a[i--] = 0;
                if (i < 0) break;
                ++a[i];
            }
        }
        return 0;
    });
    return {std::move(d), std::move(f)};
}

GraphStrategy k22_strategy() {
    // A = [[1,1],[1,-1]] and its inverse over Z_3.
    Digraph d = complete_bipartite(2, 2);
    auto f = build_strategy(d, 3, [](int v, const SeesView& view) {
        switch (v) {
            case 0: return md(view[2] + view[3], 3);
            case 1: return md(view[2] + 2 * view[3], 3);
            case 2: return md(2 * view[0] + 2 * view[1], 3);
            default: return md(2 * view[0] + view[1], 3);
        }
    });
    return {std::move(d), std::move(f)};
}

GraphStrategy blowup_strategy(const Digraph& d, const Strategy& f, int r) {
    if (r < 1) throw std::invalid_argument("blowup_strategy: r >= 1 required");
    int p = f.q();
    if (p * r > kMaxAlphabet)
        throw std::invalid_argument("blowup_strategy: q = p*r exceeds alphabet cap");
    check_shape(d, p, f);
    Digraph prod = lex_product(d, r);
    int q = p * r;
    auto base = std::make_shared<Strategy>(f);
    auto base_graph = std::make_shared<Digraph>(d);
    auto g = build_strategy(prod, q, [base, base_graph, p, r](int w, const SeesView& view) {
        int v = w / r, a = w % r;
        // mod-p sums over the visible copies of each base in-neighbour
        Config base_conf(base_graph->n(), 0);
        for (int u : base_graph->in_neighbours(v)) {
            int xu = 0;
            for (int b = 0; b < r; ++b) xu += view[u * r + b] % p;
            base_conf[u] = static_cast<uint8_t>(xu % p);
        }
        int sx = 0, sy = 0;  // sums over the sibling copies of v
        for (int b = 0; b < r; ++b) {
            if (b == a) continue;
            int c = view[v * r + b];
            sx += c % p;
            sy += c / p;
        }
        int g1 = md(base->guess(v, base_conf) - sx, p);
        int g2 = md(a - sy, r);
        return g1 + p * g2;
    });
    return {std::move(prod), std::move(g)};
}

Gadget make_gadget(GadgetKind kind) {
    switch (kind) {
        case GadgetKind::Unit: {
            Digraph d(1, {}, "unit");
            Strategy f(2, {Strategy::Rule{{}, {0}, nullptr}});
            return {std::move(d), 2, std::move(f), 0, {1}, "unit"};
        }
        case GadgetKind::Cycle3: {
            Digraph d = directed_cycle(3);
            // each vertex repeats the colour it sees
            auto f = build_strategy(d, 3, [](int, const SeesView& view) {
                return view.vals[0];
            });
            std::vector<uint8_t> phi(9);
            for (int x1 = 0; x1 < 3; ++x1)
                for (int x2 = 0; x2 < 3; ++x2)
                    phi[x1 * 3 + x2] = static_cast<uint8_t>(md(-x1 - x2, 3));
            return {std::move(d), 3, std::move(f), 0, std::move(phi), "cycle3"};
        }
        case GadgetKind::SixVertex: {
            static const int M[6][6] = {
                {0, -1, 0, 0, 0, 1},
                {0, 0, -1, 1, 0, 0},
                {-1, 0, 0, 0, 1, 0},
                {-1, 0, 1, 0, 0, 1},
                {1, -1, 0, 1, 0, 0},
                {0, 1, -1, 0, 1, 0},
            };
            Digraph d = six_vertex_gadget_graph();
            auto f = build_strategy(d, 4, [](int v, const SeesView& view) {
                int s = 0;
                for (int j = 0; j < 6; ++j)
                    if (M[v][j]) s += M[v][j] * view[j];
                return md(s, 4);
            });
            // losing configurations satisfy 2x0+2x1+2x2+x3+x4+x5 = 2 (mod 4);
            // solved for the pivot x4
            std::vector<uint8_t> phi(1024);
            int idx = 0;
            for (int x0 = 0; x0 < 4; ++x0)
                for (int x1 = 0; x1 < 4; ++x1)
                    for (int x2 = 0; x2 < 4; ++x2)
                        for (int x3 = 0; x3 < 4; ++x3)
                            for (int x5 = 0; x5 < 4; ++x5)
                                phi[idx++] = static_cast<uint8_t>(
                                    md(2 - 2 * x0 - 2 * x1 - 2 * x2 - x3 - x5, 4));
            return {std::move(d), 4, std::move(f), 4, std::move(phi), "six_vertex"};
        }
    }
    throw std::logic_error("make_gadget: bad kind");
}

GraphStrategy gadget_compose(int p, const Gadget& g) {
    if (g.q != p) throw std::invalid_argument("gadget_compose: gadget alphabet mismatch");
    int gn = g.graph.n();
    std::vector<std::pair<int, int>> pairs;  // (i,j) with i > j
    for (int i = 1; i < p; ++i)
        for (int j = 0; j < i; ++j) pairs.emplace_back(i, j);
    int n = p + gn * static_cast<int>(pairs.size());

    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) arcs.emplace_back(i, j);
    for (size_t k = 0; k < pairs.size(); ++k) {
        auto [i, j] = pairs[k];
        int base = p + static_cast<int>(k) * gn;
        for (auto [u, v] : g.graph.arcs()) arcs.emplace_back(base + u, base + v);
        for (int v = 0; v < gn; ++v) {
            arcs.emplace_back(i, base + v);
            arcs.emplace_back(base + v, j);
        }
    }
    Digraph d(n, std::move(arcs), "compose(" + g.name + "," + std::to_string(p) + ")");

    std::vector<int> nonpivot;
    for (int v = 0; v < gn; ++v)
        if (v != g.pivot) nonpivot.push_back(v);
    auto gd = std::make_shared<Gadget>(g);
    auto np = std::make_shared<std::vector<int>>(std::move(nonpivot));
    auto pr = std::make_shared<std::vector<std::pair<int, int>>>(std::move(pairs));

    auto f = build_strategy(d, p, [gd, np, pr, p, gn](int w, const SeesView& view) {
        if (w < p) {
            int j = w;
            int s = 0;
            for (int k = 0; k < j; ++k) s += view[k];
            for (size_t k = 0; k < pr->size(); ++k) {
                if ((*pr)[k].second != j) continue;
                int base = p + static_cast<int>(k) * gn;
                size_t idx = 0;
                for (int v : *np) idx = idx * gd->q + view[base + v];
                s += gd->phi[idx] - view[base + gd->pivot];
            }
            return md(j - s, p);
        }
        size_t k = (w - p) / gn;
        int v = (w - p) % gn;
        int base = p + static_cast<int>(k) * gn;
        int i = (*pr)[k].first;
        Config copy_conf(gn, 0);
        for (int u : gd->graph.in_neighbours(v)) copy_conf[u] = view[base + u];
        if (v == gd->pivot)
            return md(gd->strategy.guess(v, copy_conf) - view[i], p);
        if (gd->graph.has_arc(gd->pivot, v))
            copy_conf[gd->pivot] = static_cast<uint8_t>(md(copy_conf[gd->pivot] + view[i], p));
        return md(gd->strategy.guess(v, copy_conf), p);
    });
    return {std::move(d), std::move(f)};
}

GraphStrategy cycle2_strategy(int n) {
    Digraph d = directed_cycle(n);
    auto f = build_strategy(d, 2, [n](int v, const SeesView& view) {
        int prev = view[(v + n - 1) % n];
        return v == 0 ? prev : 1 - prev;
    });
    return {std::move(d), std::move(f)};
}

GraphStrategy even_cycle_strategy(int n) {
    if (n < 2) throw std::invalid_argument("even_cycle_strategy: n >= 2 required");
    Digraph d = undirected_cycle(2 * n);
    // v_i at 2(i-1), w_i at 2(i-1)+1 for the paper's i = 1..n
    auto f = build_strategy(d, 3, [n](int id, const SeesView& view) {
        if (id % 2 == 0) {
            int i = id / 2 + 1;
            int yi = view[id + 1];
            int yprev = view[md(id - 1, 2 * n)];
            if (i != 1) return yi != md(yprev + 1, 3) ? md(yi - 1, 3) : md(yi + 1, 3);
            return yi != md(yprev - 1, 3) ? md(yi - 1, 3) : md(yi + 1, 3);
        }
        int i = (id - 1) / 2 + 1;
        int xi = view[id - 1];
        int xnext = view[(id + 1) % (2 * n)];
        if (i != n) return xi != md(xnext + 1, 3) ? xi : md(xi - 1, 3);
        return xi != xnext ? xi : md(xi - 1, 3);
    });
    return {std::move(d), std::move(f)};
}

EpsilonResult construct_epsilon(int q, int eps_num, int eps_den) {
    if (eps_num <= 0 || eps_den <= 0 || eps_num > eps_den)
        throw std::invalid_argument("construct_epsilon: need 0 < eps <= 1");
    if (q < 2) throw std::invalid_argument("construct_epsilon: q >= 2 required");
    // smallest p with 2/p <= eps, so the achieved clique number 2q'/p meets
    // the stated eps*q' bound
    int p = std::max(2, (2 * eps_den + eps_num - 1) / eps_num);
    int r = (q + p - 1) / p;
    int q_eff = p * r;
    if (q_eff > kMaxAlphabet)
        throw std::invalid_argument("construct_epsilon: effective alphabet exceeds cap");
    GraphStrategy base = p == 3 ? k22_strategy() : bipartite_strategy(p);
    std::string base_name = base.graph.name();
    GraphStrategy blown = blowup_strategy(base.graph, base.strategy, r);
    ConstructionReport rep;
    rep.vertices = blown.graph.n();
    rep.clique = 2 * r;
    rep.q_effective = q_eff;
    rep.p = p;
    rep.r = r;
    rep.clique_bound_ok = 2 * r * eps_den <= eps_num * q_eff;
    rep.base = base_name;
    if (!rep.clique_bound_ok)
        throw std::runtime_error("construct_epsilon: clique bound violated for chosen p");
    return {std::move(blown.graph), std::move(blown.strategy), rep};
}

KfreeResult construct_kfree(int q, int omega, int m) {
    if (omega < 2) throw std::invalid_argument("construct_kfree: omega >= 2 required");
    if (q < 2) throw std::invalid_argument("construct_kfree: q >= 2 required");
    int p = 2 * q / omega + 1;
    if (p < 2) throw std::invalid_argument("construct_kfree: resulting p < 2");
    int r = (q + p - 1) / p;
    int q_eff = p * r;
    GraphStrategy base = bipartite_strategy(p);
    Digraph graph = lex_product(base.graph, r);
    ConstructionReport rep;
    rep.vertices = graph.n();
    rep.clique = 2 * r;
    rep.q_effective = q_eff;
    rep.p = p;
    rep.r = r;
    rep.clique_bound_ok = 2 * r < omega;
    rep.base = base.graph.name();
    (void)m;
    std::optional<Strategy> strat;
    bool desk_scale = q_eff <= kMaxAlphabet;
    if (desk_scale) {
        try {
            desk_scale = ipow(q_eff, graph.n()) <= config_cap();
        } catch (const std::overflow_error&) {
            desk_scale = false;
        }
    }
    if (desk_scale)
        strat = blowup_strategy(base.graph, base.strategy, r).strategy;
    return {std::move(graph), std::move(strat), rep};
}

}  // namespace hatcraft
