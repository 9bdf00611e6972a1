#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hatcraft/bounds.hpp"
#include "hatcraft/search.hpp"
#include "hatcraft/strategies.hpp"
#include "hatcraft/verifier.hpp"

using namespace hatcraft;

namespace {

// exit codes: 0 solved/holds/certified, 1 refuted/counterexample,
// 2 inconclusive/unknown, 64 usage, 65 runtime, 66 IO
constexpr int kExitUsage = 64;
constexpr int kExitRuntime = 65;
constexpr int kExitIo = 66;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void print_hash(const char* label, const std::string& data) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    std::cout << "input-hash " << label << " " << buf << "\n";
}

Digraph load_graph(const std::string& path, const char* label = "graph") {
    std::string text = read_file(path);
    print_hash(label, text);
    return parse_digraph(text);
}

Strategy load_strategy(const std::string& path, const char* label = "strategy") {
    std::string text = read_file(path);
    print_hash(label, text);
    return parse_strategy(text);
}

void print_config(const Config& c) {
    for (size_t i = 0; i < c.size(); ++i) std::cout << (i ? " " : "") << int(c[i]);
    std::cout << "\n";
}

GadgetKind parse_kind(const std::string& name) {
    if (name == "unit") return GadgetKind::Unit;
    if (name == "cycle3") return GadgetKind::Cycle3;
    if (name == "six-vertex") return GadgetKind::SixVertex;
    throw CLI::ValidationError("--kind", "unknown gadget kind '" + name + "'");
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    ~Timer() {
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        // trailer, excluded from golden comparisons
        std::cout << "# elapsed-ms " << ms << "\n";
    }
};

void emit_construction(const std::string& name, const Digraph& d,
                       const Strategy* f, const std::string& out_graph,
                       const std::string& out_strategy) {
    std::cout << "construction " << name << "\n";
    std::cout << "vertices " << d.n() << "\n";
    if (!out_graph.empty()) write_file(out_graph, serialize_digraph(d));
    if (!out_strategy.empty()) {
        if (!f) throw std::runtime_error("construction has no strategy to write");
        write_file(out_strategy, serialize_strategy(*f));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hat guessing strategies on directed graphs"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads (driver is sequential)");

    int rc = 0;
    Timer timer;

    // construct
    auto* construct = app.add_subcommand("construct", "build a named graph/strategy pair");
    std::string c_name, c_out_graph, c_out_strategy;
    std::vector<int> c_params;
    construct->add_option("name", c_name,
                          "k22|clique|clique-partition|bipartite|cycle2|even-cycle|epsilon|kfree")
        ->required();
    construct->add_option("params", c_params, "numeric parameters");
    construct->add_option("-o,--out-graph", c_out_graph, "graph output path");
    construct->add_option("-s,--out-strategy", c_out_strategy, "strategy output path");
    construct->callback([&] {
        auto need = [&](size_t k) {
            if (c_params.size() != k)
                throw CLI::ValidationError(
                    "params", c_name + " takes " + std::to_string(k) + " parameter(s)");
        };
        if (c_name == "k22") {
            need(0);
            auto [d, f] = k22_strategy();
            emit_construction(c_name, d, &f, c_out_graph, c_out_strategy);
        } else if (c_name == "clique") {
            need(1);
            auto [d, f] = clique_strategy(c_params[0]);
            emit_construction(c_name, d, &f, c_out_graph, c_out_strategy);
        } else if (c_name == "clique-partition") {
            need(2);
            auto [d, f] = clique_partition_strategy(c_params[0], c_params[1]);
            emit_construction(c_name, d, &f, c_out_graph, c_out_strategy);
        } else if (c_name == "bipartite") {
            need(1);
            auto g = bipartite_strategy(c_params[0]);
            emit_construction(c_name, g.graph, &g.strategy, c_out_graph, c_out_strategy);
        } else if (c_name == "cycle2") {
            need(1);
            auto [d, f] = cycle2_strategy(c_params[0]);
            emit_construction(c_name, d, &f, c_out_graph, c_out_strategy);
        } else if (c_name == "even-cycle") {
            need(1);
            auto [d, f] = even_cycle_strategy(c_params[0]);
            emit_construction(c_name, d, &f, c_out_graph, c_out_strategy);
        } else if (c_name == "epsilon") {
            need(3);
            auto r = construct_epsilon(c_params[0], c_params[1], c_params[2]);
            emit_construction(c_name, r.graph, &r.strategy, c_out_graph, c_out_strategy);
            std::cout << "q-effective " << r.report.q_effective << "\n";
            std::cout << "clique-number " << r.report.clique << "\n";
            std::cout << "base " << r.report.base << " r " << r.report.r << "\n";
        } else if (c_name == "kfree") {
            need(2);
            auto r = construct_kfree(c_params[0], c_params[1], 1);
            emit_construction(c_name, r.graph,
                              r.strategy ? &*r.strategy : nullptr, c_out_graph,
                              r.strategy ? c_out_strategy : std::string());
            std::cout << "q-effective " << r.report.q_effective << "\n";
            std::cout << "clique-number " << r.report.clique << "\n";
            if (!r.strategy && !c_out_strategy.empty())
                std::cout << "strategy omitted (instance beyond exhaustive scale)\n";
        } else {
            throw CLI::ValidationError("name", "unknown construction '" + c_name + "'");
        }
    });

    // verify / losing (same engine, losing prints the set)
    auto add_verify_like = [&](const char* cmd, const char* help, bool print_losing) {
        auto* sub = app.add_subcommand(cmd, help);
        auto graph = std::make_shared<std::string>();
        auto strat = std::make_shared<std::string>();
        auto q = std::make_shared<int>(0);
        auto cap = std::make_shared<uint64_t>(print_losing ? 1000 : 1);
        sub->add_option("-g,--graph", *graph, "graph file")->required();
        sub->add_option("-s,--strategy", *strat, "strategy file")->required();
        sub->add_option("-q,--colours", *q, "alphabet size")->required();
        if (print_losing) sub->add_option("--cap", *cap, "max losing configs to print");
        sub->callback([&, graph, strat, q, cap, print_losing] {
            std::cout << "command " << (print_losing ? "losing" : "verify") << "\n";
            Digraph d = load_graph(*graph);
            Strategy f = load_strategy(*strat);
            std::cout << "q " << *q << "\n";
            auto v = verify(d, *q, f, *cap);
            std::cout << serialize_verdict(v);
            rc = v.kind == Verdict::Kind::Solved ? 0 : 1;
        });
    };
    add_verify_like("verify", "exhaustively check a strategy", false);
    add_verify_like("losing", "list losing configurations", true);

    // sample
    auto* sample = app.add_subcommand("sample", "seeded sampling check");
    std::string sm_graph, sm_strat;
    int sm_q = 0;
    uint64_t sm_samples = 100000, sm_seed = 0;
    sample->add_option("-g,--graph", sm_graph)->required();
    sample->add_option("-s,--strategy", sm_strat)->required();
    sample->add_option("-q,--colours", sm_q)->required();
    sample->add_option("--samples", sm_samples, "number of samples");
    sample->add_option("--seed", sm_seed, "generator seed");
    sample->callback([&] {
        std::cout << "command sample\n";
        Digraph d = load_graph(sm_graph);
        Strategy f = load_strategy(sm_strat);
        std::cout << "q " << sm_q << "\n";
        auto v = sample_verify(d, sm_q, f, sm_samples, sm_seed);
        std::cout << serialize_verdict(v);
        rc = v.kind == Verdict::Kind::SampledClean ? 0 : 1;
    });

    // solve
    auto* solve = app.add_subcommand("solve", "decide solvability by exact search");
    std::string sv_graph, sv_out;
    int sv_q = 0;
    uint64_t sv_nodes = 1'000'000;
    double sv_seconds = 60.0;
    solve->add_option("-g,--graph", sv_graph)->required();
    solve->add_option("-q,--colours", sv_q)->required();
    solve->add_option("--max-nodes", sv_nodes, "node budget");
    solve->add_option("--max-seconds", sv_seconds, "time budget");
    solve->add_option("-o,--out-strategy", sv_out, "write the witness strategy here");
    solve->callback([&] {
        std::cout << "command solve\n";
        Digraph d = load_graph(sv_graph);
        std::cout << "q " << sv_q << "\n";
        auto r = exact_solve(d, sv_q, SearchBudget{sv_nodes, sv_seconds});
        std::cout << "nodes " << r.nodes << "\n";
        switch (r.kind) {
            case SolveResult::Kind::Solvable:
                std::cout << "result solvable\n";
                if (!sv_out.empty()) write_file(sv_out, serialize_strategy(*r.strategy));
                rc = 0;
                break;
            case SolveResult::Kind::Unsolvable:
                std::cout << "result unsolvable\n";
                rc = 1;
                break;
            case SolveResult::Kind::Unknown:
                std::cout << "result unknown (budget exhausted)\n";
                rc = 2;
                break;
        }
    });

    // bound
    auto* bound = app.add_subcommand("bound", "numeric and adversary bounds");
    bound->require_subcommand(1);

    auto* counting = bound->add_subcommand("counting", "acyclic-set counting bound");
    int cb_n = 0, cb_i = 0, cb_q = 0;
    counting->add_option("--n", cb_n, "vertex count")->required();
    counting->add_option("--I", cb_i, "acyclic induced size")->required();
    counting->add_option("--q", cb_q, "alphabet size")->required();
    counting->callback([&] {
        std::cout << "command bound counting\n";
        bool holds = counting_bound_check(cb_n, cb_i, cb_q);
        std::cout << "lhs " << BigInt(cb_n - cb_i) * boost::multiprecision::pow(BigInt(cb_q), cb_i)
                  << "\n";
        std::cout << "rhs " << BigInt(cb_q) * boost::multiprecision::pow(BigInt(cb_q - 1), cb_i)
                  << "\n";
        std::cout << (holds ? "bound holds: not solvable\n" : "bound inconclusive\n");
        rc = holds ? 0 : 2;
    });

    auto* minv = bound->add_subcommand("min-vertices", "vertex-count lower bound");
    int mv_i = 0, mv_q = 0;
    minv->add_option("--I", mv_i)->required();
    minv->add_option("--q", mv_q)->required();
    minv->callback([&] {
        std::cout << "command bound min-vertices\n";
        std::cout << "bound " << min_vertex_bound(mv_i, mv_q) << "\n";
        rc = 0;
    });

    auto* alpha = bound->add_subcommand("alpha", "root of a + ln a = 0");
    double al_tol = 1e-12;
    alpha->add_option("--tolerance", al_tol);
    alpha->callback([&] {
        std::cout << "command bound alpha\n";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12f", alpha_constant(al_tol));
        std::cout << "alpha " << buf << "\n";
        rc = 0;
    });

    auto* semib = bound->add_subcommand("semibipartite", "adversary refutation");
    std::string sb_graph, sb_strat;
    int sb_q = 0;
    semib->add_option("-g,--graph", sb_graph)->required();
    semib->add_option("-s,--strategy", sb_strat)->required();
    semib->add_option("-q,--colours", sb_q)->required();
    semib->callback([&] {
        std::cout << "command bound semibipartite\n";
        Digraph d = load_graph(sb_graph);
        Strategy f = load_strategy(sb_strat);
        std::cout << "q " << sb_q << "\n";
        auto part = semibipartite_with_small_left(d, sb_q - 2);
        if (!part) {
            std::cout << "no semibipartite partition with |L| <= q-2\n";
            rc = 2;
            return;
        }
        std::cout << "left";
        for (int v : part->left) std::cout << " " << v;
        std::cout << "\n";
        Config c = semibipartite_refute(d, *part, f, sb_q);
        std::cout << "losing ";
        print_config(c);
        rc = 1;
    });

    // gadget
    auto* gadget = app.add_subcommand("gadget", "gadget certification and discovery");
    gadget->require_subcommand(1);

    auto* gcheck = gadget->add_subcommand("check", "certify a built-in gadget");
    std::string gc_kind;
    gcheck->add_option("--kind", gc_kind, "unit|cycle3|six-vertex")->required();
    gcheck->callback([&] {
        std::cout << "command gadget check\n";
        auto g = make_gadget(parse_kind(gc_kind));
        try {
            certify_gadget(g);
            std::cout << "gadget " << g.name << " certified, pivot " << g.pivot << "\n";
            rc = 0;
        } catch (const GadgetCertifyError& e) {
            std::cout << "gadget " << g.name << " rejected: " << e.what() << "\n";
            rc = 1;
        }
    });

    auto* gsearch = gadget->add_subcommand("search", "enumerate affine gadget strategies");
    std::string gs_graph;
    int gs_q = 0, gs_pivot = 0;
    uint64_t gs_cand = 20'000'000;
    bool gs_weak = false;
    gsearch->add_option("-g,--graph", gs_graph)->required();
    gsearch->add_option("-q,--colours", gs_q)->required();
    gsearch->add_option("--pivot", gs_pivot)->required();
    gsearch->add_option("--max-candidates", gs_cand);
    gsearch->add_flag("--weak", gs_weak, "keep candidates when solvability is undecided");
    gsearch->callback([&] {
        std::cout << "command gadget search\n";
        Digraph d = load_graph(gs_graph);
        std::cout << "q " << gs_q << " pivot " << gs_pivot << "\n";
        auto found = gadget_search(d, gs_q, gs_pivot, gs_cand, gs_weak);
        std::cout << "found " << found.size() << "\n";
        for (const auto& g : found) std::cout << serialize_strategy(g.strategy);
        rc = found.empty() ? 2 : 0;
    });

    // compose
    auto* compose = app.add_subcommand("compose", "blow-ups and gadget compositions");
    compose->require_subcommand(1);

    auto* blowup = compose->add_subcommand("blowup", "lexicographic blow-up of a solver");
    std::string bl_graph, bl_strat, bl_out_graph, bl_out_strat;
    int bl_r = 0;
    blowup->add_option("-g,--graph", bl_graph)->required();
    blowup->add_option("--in-strategy", bl_strat)->required();
    blowup->add_option("-r,--factor", bl_r, "clique size per vertex")->required();
    blowup->add_option("-o,--out-graph", bl_out_graph);
    blowup->add_option("-s,--out-strategy", bl_out_strat);
    blowup->callback([&] {
        std::cout << "command compose blowup\n";
        Digraph d = load_graph(bl_graph);
        Strategy f = load_strategy(bl_strat);
        auto blown = blowup_strategy(d, f, bl_r);
        emit_construction("blowup", blown.graph, &blown.strategy, bl_out_graph, bl_out_strat);
        std::cout << "q-effective " << blown.strategy.q() << "\n";
        rc = 0;
    });

    auto* gcomp = compose->add_subcommand("gadgets", "gadget-filled transitive tournament");
    std::string gp_kind, gp_out_graph, gp_out_strat;
    int gp_p = 0;
    gcomp->add_option("--p", gp_p, "alphabet and tournament size")->required();
    gcomp->add_option("--kind", gp_kind, "unit|cycle3|six-vertex")->required();
    gcomp->add_option("-o,--out-graph", gp_out_graph);
    gcomp->add_option("-s,--out-strategy", gp_out_strat);
    gcomp->callback([&] {
        std::cout << "command compose gadgets\n";
        auto g = make_gadget(parse_kind(gp_kind));
        auto comp = gadget_compose(gp_p, g);
        emit_construction("compose-" + g.name, comp.graph, &comp.strategy, gp_out_graph,
                          gp_out_strat);
        rc = 0;
    });

    // critical
    auto* critical = app.add_subcommand("critical", "edge-criticality certificates");
    std::string cr_graph, cr_strat;
    int cr_q = 0;
    bool cr_axiom = false;
    critical->add_option("-g,--graph", cr_graph)->required();
    critical->add_option("-s,--strategy", cr_strat)->required();
    critical->add_option("-q,--colours", cr_q)->required();
    critical->add_flag("--axiom-trees", cr_axiom,
                       "assume trees are not 3-solvable (external fact)");
    critical->callback([&] {
        std::cout << "command critical\n";
        Digraph d = load_graph(cr_graph);
        Strategy f = load_strategy(cr_strat);
        std::cout << "q " << cr_q << "\n";
        EdgeCriticalOptions opts;
        opts.axiom_trees_not_3solvable = cr_axiom;
        auto r = edge_critical_check(d, cr_q, f, opts);
        for (const auto& [e, cert] : r.certificates)
            std::cout << "edge " << e.first << "-" << e.second << " " << cert.line() << "\n";
        for (const auto& e : r.missing)
            std::cout << "edge " << e.first << "-" << e.second << " no certificate\n";
        switch (r.kind) {
            case EdgeCriticalResult::Kind::EdgeCritical:
                std::cout << "result edge-critical\n";
                rc = 0;
                break;
            case EdgeCriticalResult::Kind::NotEdgeCritical:
                std::cout << "result not-edge-critical: " << r.reason << "\n";
                rc = 1;
                break;
            case EdgeCriticalResult::Kind::Inconclusive:
                std::cout << "result inconclusive: " << r.reason << "\n";
                rc = 2;
                break;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return rc;
}
