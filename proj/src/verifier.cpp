#include "hatcraft/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace hatcraft {

Verdict verify(const Digraph& d, int q, const Strategy& f, size_t losing_cap) {
    check_shape(d, q, f);
    int n = d.n();
    uint64_t total = ipow(q, n);
    if (total > config_cap())
        throw std::runtime_error("verify: q^n = " + std::to_string(total) +
                                 " exceeds config cap " + std::to_string(config_cap()) +
                                 "; use sample_verify");
    Verdict out;
    Config x(n, 0);
    for (uint64_t step = 0; step < total; ++step) {
        int correct = f.correct_count(x);
        out.total_correct += correct;
        if (correct == 0) {
            ++out.losing_count;
            if (out.losing.size() < losing_cap) out.losing.push_back(x);
            else out.truncated = true;
        }
        // lexicographic successor: last vertex increments fastest
        for (int i = n - 1; i >= 0; --i) {
            if (++x[i] < q) break;
            x[i] = 0;
        }
    }
    out.kind = out.losing_count == 0 ? Verdict::Kind::Solved : Verdict::Kind::NotSolvedBy;
    return out;
}

Verdict sample_verify(const Digraph& d, int q, const Strategy& f,
                      uint64_t samples, uint64_t seed) {
    check_shape(d, q, f);
    if (samples < 1) throw std::invalid_argument("sample_verify: samples >= 1 required");
    int n = d.n();
    SplitMix64 rng(seed);
    Verdict out;
    out.samples = samples;
    out.seed = seed;
    Config x(n);
    for (uint64_t s = 0; s < samples; ++s) {
        for (int v = 0; v < n; ++v) x[v] = static_cast<uint8_t>(rng.next() % q);
        if (!f.some_correct(x)) {
            out.kind = Verdict::Kind::SampledCounterexample;
            out.counterexample = x;
            return out;
        }
    }
    out.kind = Verdict::Kind::SampledClean;
    return out;
}

std::vector<uint8_t> certify_gadget(const Gadget& g) {
    check_shape(g.graph, g.q, g.strategy);
    int n = g.graph.n();
    int q = g.q;
    uint64_t total = ipow(q, n);
    if (total > config_cap())
        throw std::runtime_error("certify_gadget: config space exceeds cap");
    uint64_t dom = ipow(q, n - 1);
    if (g.phi.size() != dom)
        throw std::invalid_argument("certify_gadget: phi table size mismatch");
    std::vector<int16_t> seen(dom, -1);
    std::vector<uint8_t> induced(dom, 0);
    uint64_t losing = 0;
    Config x(n, 0);
    for (uint64_t step = 0; step < total; ++step) {
        if (!g.strategy.some_correct(x)) {
            ++losing;
            uint64_t key = 0;
            for (int v = 0; v < n; ++v)
                if (v != g.pivot) key = key * q + x[v];
            if (seen[key] >= 0 && seen[key] != x[g.pivot]) {
                std::ostringstream msg;
                msg << "certify_gadget: losing configs share non-pivot colours but differ "
                       "at pivot (key "
                    << key << ")";
                throw GadgetCertifyError(GadgetCertifyError::Kind::NotAFunction, msg.str());
            }
            seen[key] = x[g.pivot];
            induced[key] = x[g.pivot];
            if (g.phi[key] != x[g.pivot])
                throw GadgetCertifyError(
                    GadgetCertifyError::Kind::NotAFunction,
                    "certify_gadget: declared phi disagrees with losing set");
        }
        for (int i = n - 1; i >= 0; --i) {
            if (++x[i] < q) break;
            x[i] = 0;
        }
    }
    if (losing == 0)
        throw GadgetCertifyError(GadgetCertifyError::Kind::EmptyLosingSet,
                                 "certify_gadget: strategy solves the graph, losing set empty");
    return induced;
}

int remoteness(const std::vector<Config>& words, int q) {
    if (words.empty()) throw std::invalid_argument("remoteness: empty set");
    size_t m = words[0].size();
    for (const auto& w : words)
        if (w.size() != m) throw std::invalid_argument("remoteness: mixed word lengths");
    uint64_t total = ipow(q, static_cast<unsigned>(m));
    if (total > config_cap()) throw std::runtime_error("remoteness: q^m exceeds config cap");
    int best = static_cast<int>(m) + 1;
    Config x(m, 0);
    for (uint64_t step = 0; step < total; ++step) {
        int worst = 0;
        for (const auto& w : words) {
            int dist = 0;
            for (size_t i = 0; i < m; ++i) dist += x[i] != w[i];
            worst = std::max(worst, dist);
            if (worst >= best) break;
        }
        best = std::min(best, worst);
        if (best == 0) break;
        for (int i = static_cast<int>(m) - 1; i >= 0; --i) {
            if (++x[i] < q) break;
            x[i] = 0;
        }
    }
    return best;
}

bool is_distinguishable(const std::vector<Config>& words, int q) {
    return remoteness(words, q) <= static_cast<int>(words[0].size()) - 1;
}

std::string serialize_verdict(const Verdict& v) {
    std::ostringstream out;
    switch (v.kind) {
        case Verdict::Kind::Solved:
            out << "verdict solved\n";
            out << "losing-count 0\n";
            break;
        case Verdict::Kind::NotSolvedBy:
            out << "verdict not-solved\n";
            out << "losing-count " << v.losing_count << "\n";
            if (v.truncated) out << "truncated\n";
            for (const auto& c : v.losing) {
                for (size_t i = 0; i < c.size(); ++i)
                    out << (i ? " " : "") << int(c[i]);
                out << "\n";
            }
            break;
        case Verdict::Kind::SampledClean:
            out << "verdict sampled-clean\n";
            out << "samples " << v.samples << "\n";
            out << "seed " << v.seed << "\n";
            break;
        case Verdict::Kind::SampledCounterexample:
            out << "verdict sampled-counterexample\n";
            out << "samples " << v.samples << "\n";
            out << "seed " << v.seed << "\n";
            for (size_t i = 0; i < v.counterexample->size(); ++i)
                out << (i ? " " : "") << int((*v.counterexample)[i]);
            out << "\n";
            break;
    }
    return out.str();
}

}  // namespace hatcraft
