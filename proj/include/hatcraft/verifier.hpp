#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hatcraft/strategies.hpp"
#include "hatcraft/strategy.hpp"

namespace hatcraft {

struct Verdict {
    enum class Kind { Solved, NotSolvedBy, SampledClean, SampledCounterexample };
    Kind kind = Kind::Solved;
    std::vector<Config> losing;   // lexicographically first, up to the cap
    uint64_t losing_count = 0;    // exact
    bool truncated = false;
    uint64_t total_correct = 0;   // sum of correct guesses over all configs
    uint64_t samples = 0;
    uint64_t seed = 0;
    std::optional<Config> counterexample;
};

// Exhaustive check over [q]^n in lexicographic order. Throws if q^n exceeds
// the config cap; large instances go through sample_verify instead.
Verdict verify(const Digraph& d, int q, const Strategy& f, size_t losing_cap = 1000);

// Seeded uniform sampling; deterministic stream, never claims solvability.
Verdict sample_verify(const Digraph& d, int q, const Strategy& f,
                      uint64_t samples, uint64_t seed);

struct GadgetCertifyError : std::runtime_error {
    enum class Kind { EmptyLosingSet, NotAFunction };
    Kind kind;
    GadgetCertifyError(Kind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
};

// Recomputes the losing set, checks the pivot colour is a function of the
// rest on it, and that the induced table matches g.phi on those points.
// Returns the induced table (0 off the losing domain).
std::vector<uint8_t> certify_gadget(const Gadget& g);

// min over x in [q]^m of the max Hamming distance from x to S.
int remoteness(const std::vector<Config>& words, int q);
bool is_distinguishable(const std::vector<Config>& words, int q);

std::string serialize_verdict(const Verdict& v);

// Deterministic generator for sampling and test-suite randomness.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

}  // namespace hatcraft
