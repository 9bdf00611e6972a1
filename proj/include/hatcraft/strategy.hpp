#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hatcraft/digraph.hpp"

namespace hatcraft {

// One hat colouring: values[v] in [q].
using Config = std::vector<uint8_t>;

constexpr int kMaxAlphabet = 64;

uint64_t ipow(uint64_t base, unsigned exp);

// Exhaustive-enumeration ceiling on q^n, overridable via HATCRAFT_MAX_CONFIGS.
uint64_t config_cap();

// Colour lookup by vertex id over an ascending `sees` list.
struct SeesView {
    const std::vector<int>* sees;
    std::span<const uint8_t> vals;
    uint8_t operator[](int vertex) const;
};

// Per-vertex guess tables keyed by in-neighbour colourings. A rule is either a
// dense table (index is the big-endian base-q rank of the seen tuple, so table
// order equals lexicographic tuple order) or a callback for domains too large
// to materialize. A vertex structurally cannot read its own colour.
class Strategy {
public:
    struct Rule {
        std::vector<int> sees;                       // ascending in-neighbour ids
        std::vector<uint8_t> table;                  // size q^sees.size() when dense
        std::function<int(const SeesView&)> fn;      // used when table is empty
    };

    Strategy() = default;
    Strategy(int q, std::vector<Rule> rules);

    int q() const { return q_; }
    int n() const { return static_cast<int>(rules_.size()); }
    const std::vector<Rule>& rules() const { return rules_; }
    bool dense() const;

    int guess(int v, const Config& x) const;
    // true iff at least one vertex guesses its own colour
    bool some_correct(const Config& x) const;
    int correct_count(const Config& x) const;

    // Replace callbacks by dense tables where q^indeg <= max_entries.
    void materialize(uint64_t max_entries = uint64_t(1) << 20);

private:
    int q_ = 2;
    std::vector<Rule> rules_;
};

// Throws on any shape mismatch between graph, alphabet and strategy.
void check_shape(const Digraph& d, int q, const Strategy& f);

// Text format:
//   strategy q <q> n <n>
//   vertex <v> sees <u1> ... <uk>
//   <t1> ... <tk> -> <guess>      (q^k lines, lexicographic tuple order)
Strategy parse_strategy(std::string_view text);
std::string serialize_strategy(const Strategy& f);  // dense strategies only

}  // namespace hatcraft
