#include "hatcraft/digraph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hatcraft {

Digraph::Digraph(int n, std::vector<std::pair<int, int>> arcs, std::string name)
    : n_(n), arcs_(std::move(arcs)), name_(std::move(name)) {
    if (n_ < 0) throw std::invalid_argument("digraph: negative vertex count");
    std::sort(arcs_.begin(), arcs_.end());
    for (size_t i = 0; i < arcs_.size(); ++i) {
        auto [u, v] = arcs_[i];
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw std::invalid_argument("digraph: arc endpoint out of range");
        if (u == v) throw std::invalid_argument("digraph: self-loop");
        if (i > 0 && arcs_[i] == arcs_[i - 1])
            throw std::invalid_argument("digraph: duplicate arc");
    }
    in_.assign(n_, {});
    for (auto [u, v] : arcs_) in_[v].push_back(u);
    // arcs_ sorted by (u,v), so each in-list comes out ascending already
    for (auto& nb : in_) std::sort(nb.begin(), nb.end());
}

bool Digraph::has_arc(int u, int v) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), std::make_pair(u, v));
}

bool Digraph::is_undirected() const {
    for (auto [u, v] : arcs_)
        if (!has_arc(v, u)) return false;
    return true;
}

bool Digraph::is_oriented() const {
    for (auto [u, v] : arcs_)
        if (u < v && has_arc(v, u)) return false;
    return true;
}

Digraph clique(int n) {
    if (n < 1) throw std::invalid_argument("clique: n >= 1 required");
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) arcs.emplace_back(u, v);
    return Digraph(n, std::move(arcs), "K" + std::to_string(n));
}

Digraph complete_bipartite(int m, int s) {
    if (m < 1 || s < 1) throw std::invalid_argument("complete_bipartite: parts >= 1 required");
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < m; ++u)
        for (int v = m; v < m + s; ++v) {
            arcs.emplace_back(u, v);
            arcs.emplace_back(v, u);
        }
    return Digraph(m + s, std::move(arcs),
                   "K" + std::to_string(m) + "," + std::to_string(s));
}

Digraph directed_cycle(int n) {
    if (n < 3) throw std::invalid_argument("directed_cycle: n >= 3 required");
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < n; ++i) arcs.emplace_back(i, (i + 1) % n);
    return Digraph(n, std::move(arcs), "DC" + std::to_string(n));
}

Digraph undirected_cycle(int n) {
    if (n < 3) throw std::invalid_argument("undirected_cycle: n >= 3 required");
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        arcs.emplace_back(i, j);
        arcs.emplace_back(j, i);
    }
    return Digraph(n, std::move(arcs), "C" + std::to_string(n));
}

Digraph path(int n) {
    if (n < 1) throw std::invalid_argument("path: n >= 1 required");
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i + 1 < n; ++i) {
        arcs.emplace_back(i, i + 1);
        arcs.emplace_back(i + 1, i);
    }
    return Digraph(n, std::move(arcs), "P" + std::to_string(n));
}

Digraph six_vertex_gadget_graph() {
    // A[i][j] = 1 iff (j,i) is an arc, i.e. row i lists what vertex i sees.
    static const int A[6][6] = {
        {0, 1, 0, 0, 0, 1},
        {0, 0, 1, 1, 0, 0},
        {1, 0, 0, 0, 1, 0},
        {1, 0, 1, 0, 0, 1},
        {1, 1, 0, 1, 0, 0},
        {0, 1, 1, 0, 1, 0},
    };
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (A[i][j]) arcs.emplace_back(j, i);
    return Digraph(6, std::move(arcs), "G6");
}

Digraph lex_product(const Digraph& d, int r) {
    if (r < 1) throw std::invalid_argument("lex_product: r >= 1 required");
    int n = d.n();
    std::vector<std::pair<int, int>> arcs;
    for (auto [u, v] : d.arcs())
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                arcs.emplace_back(u * r + a, v * r + b);
    for (int v = 0; v < n; ++v)
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                if (a != b) arcs.emplace_back(v * r + a, v * r + b);
    return Digraph(n * r, std::move(arcs),
                   "(" + d.name() + "," + std::to_string(r) + ")");
}

Digraph without_edge(const Digraph& d, int u, int v) {
    std::vector<std::pair<int, int>> arcs;
    for (auto a : d.arcs())
        if (a != std::make_pair(u, v) && a != std::make_pair(v, u)) arcs.push_back(a);
    return Digraph(d.n(), std::move(arcs), d.name() + "-e");
}

namespace {

void check_cap(const Digraph& d, int cap, const char* op) {
    if (d.n() > cap)
        throw std::runtime_error(std::string(op) + ": vertex count " +
                                 std::to_string(d.n()) + " exceeds subset-search cap " +
                                 std::to_string(cap));
}

std::vector<int> mask_vertices(uint32_t mask, int n) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (mask >> v & 1) out.push_back(v);
    return out;
}

bool mask_acyclic(const std::vector<uint32_t>& in_mask, uint32_t mask) {
    // peel vertices with no in-arc from the remaining set
    while (mask) {
        uint32_t m = mask;
        uint32_t removable = 0;
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            if ((in_mask[v] & mask) == 0) removable |= 1u << v;
        }
        if (!removable) return false;
        mask &= ~removable;
    }
    return true;
}

std::vector<uint32_t> in_masks(const Digraph& d) {
    std::vector<uint32_t> in_mask(d.n(), 0);
    for (auto [u, v] : d.arcs()) in_mask[v] |= 1u << u;
    return in_mask;
}

// true if a's vertex list is lexicographically smaller than b's (same size)
bool lex_less(uint32_t a, uint32_t b, int n) {
    for (int v = 0; v < n; ++v) {
        bool ia = a >> v & 1, ib = b >> v & 1;
        if (ia != ib) return ia;  // the one containing the smaller vertex wins
    }
    return false;
}

}  // namespace

bool induces_acyclic(const Digraph& d, const std::vector<int>& vertices) {
    uint32_t mask = 0;
    for (int v : vertices) mask |= 1u << v;
    return mask_acyclic(in_masks(d), mask);
}

bool induces_independent(const Digraph& d, const std::vector<int>& vertices) {
    for (int u : vertices)
        for (int v : vertices)
            if (u != v && d.has_arc(u, v)) return false;
    return true;
}

AcyclicWitness max_acyclic_induced(const Digraph& d, int cap) {
    check_cap(d, cap, "max_acyclic_induced");
    int n = d.n();
    auto in_mask = in_masks(d);
    uint32_t best = 0;
    int best_size = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = std::popcount(mask);
        if (size < best_size) continue;
        if (!mask_acyclic(in_mask, mask)) continue;
        if (size > best_size || lex_less(mask, best, n)) {
            best = mask;
            best_size = size;
        }
    }
    return {best_size, mask_vertices(best, n)};
}

namespace {

std::vector<uint32_t> adj_any(const Digraph& d) {
    std::vector<uint32_t> adj(d.n(), 0);
    for (auto [u, v] : d.arcs()) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    return adj;
}

std::vector<int> topo_order(const Digraph& d, uint32_t mask) {
    auto in_mask = in_masks(d);
    std::vector<int> order;
    while (mask) {
        int pick = -1;
        for (int v = 0; v < d.n(); ++v)
            if ((mask >> v & 1) && (in_mask[v] & mask) == 0) { pick = v; break; }
        if (pick < 0) throw std::logic_error("topo_order: set is not acyclic");
        order.push_back(pick);
        mask &= ~(1u << pick);
    }
    return order;
}

SemibipartitePartition partition_from_left(const Digraph& d, uint32_t left) {
    int n = d.n();
    uint32_t right = ((1u << n) - 1u) & ~left;
    SemibipartitePartition p;
    p.left = mask_vertices(left, n);
    p.right = mask_vertices(right, n);
    p.topo = topo_order(d, right);
    return p;
}

}  // namespace

SemibipartitePartition best_semibipartite(const Digraph& d, int cap) {
    check_cap(d, cap, "best_semibipartite");
    int n = d.n();
    auto in_mask = in_masks(d);
    auto adj = adj_any(d);
    uint32_t best = 0;
    int best_size = -1;
    uint32_t full = (1u << n) - 1;
    for (uint32_t left = 0; left < (1u << n); ++left) {
        int size = std::popcount(left);
        if (size < best_size) continue;
        bool indep = true;
        for (uint32_t m = left; m; m &= m - 1) {
            int v = std::countr_zero(m);
            if (adj[v] & left) { indep = false; break; }
        }
        if (!indep) continue;
        if (!mask_acyclic(in_mask, full & ~left)) continue;
        if (size > best_size || lex_less(left, best, n)) {
            best = left;
            best_size = size;
        }
    }
    // e.g. two disjoint bidirectional pairs: every independent L leaves a
    // 2-cycle in R
    if (best_size < 0)
        throw std::runtime_error("best_semibipartite: graph admits no semibipartite partition");
    return partition_from_left(d, best);
}

std::optional<SemibipartitePartition> semibipartite_with_small_left(
    const Digraph& d, int max_left, int cap) {
    check_cap(d, cap, "semibipartite_with_small_left");
    int n = d.n();
    auto in_mask = in_masks(d);
    auto adj = adj_any(d);
    uint32_t full = (1u << n) - 1;
    for (int size = 0; size <= std::min(max_left, n); ++size) {
        uint32_t found = 0;
        bool have = false;
        for (uint32_t left = 0; left < (1u << n); ++left) {
            if (std::popcount(left) != size) continue;
            bool indep = true;
            for (uint32_t m = left; m; m &= m - 1) {
                int v = std::countr_zero(m);
                if (adj[v] & left) { indep = false; break; }
            }
            if (!indep) continue;
            if (!mask_acyclic(in_mask, full & ~left)) continue;
            if (!have || lex_less(left, found, n)) { found = left; have = true; }
        }
        if (have) return partition_from_left(d, found);
    }
    return std::nullopt;
}

namespace {

int max_clique_masks(const std::vector<uint64_t>& adj, uint64_t cand, int depth) {
    int best = depth;
    while (cand) {
        int v = std::countr_zero(cand);
        cand &= cand - 1;
        if (depth + 1 + std::popcount(cand) + 1 <= best) break;
        best = std::max(best, max_clique_masks(adj, cand & adj[v], depth + 1));
    }
    return best;
}

}  // namespace

int clique_number(const Digraph& d, int cap) {
    if (d.n() == 0) return 0;
    // restrict to the mutual (bidirectional) subgraph
    std::vector<uint64_t> mutual(d.n(), 0);
    std::vector<int> active;
    for (auto [u, v] : d.arcs())
        if (u < v && d.has_arc(v, u)) {
            mutual[u] |= uint64_t(1) << v;
            mutual[v] |= uint64_t(1) << u;
        }
    for (int v = 0; v < d.n(); ++v)
        if (mutual[v]) active.push_back(v);
    if (active.empty()) return 1;
    if (static_cast<int>(active.size()) > cap)
        throw std::runtime_error("clique_number: mutual subgraph size " +
                                 std::to_string(active.size()) + " exceeds cap " +
                                 std::to_string(cap));
    // compress to the active vertices
    std::vector<int> index(d.n(), -1);
    for (size_t i = 0; i < active.size(); ++i) index[active[i]] = static_cast<int>(i);
    std::vector<uint64_t> adj(active.size(), 0);
    for (size_t i = 0; i < active.size(); ++i) {
        uint64_t m = mutual[active[i]];
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            adj[i] |= uint64_t(1) << index[v];
        }
    }
    uint64_t all = active.size() == 64 ? ~uint64_t(0)
                                       : (uint64_t(1) << active.size()) - 1;
    return max_clique_masks(adj, all, 0);
}

bool is_forest(const Digraph& d) {
    if (!d.is_undirected()) return false;
    std::vector<int> parent(d.n());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (auto [u, v] : d.arcs()) {
        if (u > v) continue;
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;
        parent[ru] = rv;
    }
    return true;
}

Digraph parse_digraph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0, n = -1;
    std::vector<std::pair<int, int>> arcs;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("digraph parse error at line " +
                                 std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "n") {
            if (n >= 0) fail("duplicate header");
            if (!(ls >> n) || n < 0) fail("bad vertex count");
        } else if (kw == "arc" || kw == "edge") {
            if (n < 0) fail("arc before header");
            int u, v;
            if (!(ls >> u >> v)) fail("bad endpoints");
            if (u < 0 || v < 0 || u >= n || v >= n) fail("endpoint out of range");
            if (u == v) fail("self-loop");
            arcs.emplace_back(u, v);
            if (kw == "edge") arcs.emplace_back(v, u);
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    if (n < 0) throw std::runtime_error("digraph parse error: missing header");
    auto sorted = arcs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::runtime_error("digraph parse error: duplicate arc");
    return Digraph(n, std::move(arcs));
}

std::string serialize_digraph(const Digraph& d) {
    std::ostringstream out;
    out << "n " << d.n() << "\n";
    for (auto [u, v] : d.arcs()) {
        if (d.has_arc(v, u)) {
            if (u < v) out << "edge " << u << " " << v << "\n";
        } else {
            out << "arc " << u << " " << v << "\n";
        }
    }
    return out.str();
}

}  // namespace hatcraft
