#include "hatcraft/strategy.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace hatcraft {

uint64_t config_cap() {
    if (const char* env = std::getenv("HATCRAFT_MAX_CONFIGS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 20'000'000;
}

uint64_t ipow(uint64_t base, unsigned exp) {
    uint64_t r = 1;
    while (exp--) {
        if (base != 0 && r > ~uint64_t(0) / base)
            throw std::overflow_error("ipow: overflow");
        r *= base;
    }
    return r;
}

uint8_t SeesView::operator[](int vertex) const {
    auto it = std::lower_bound(sees->begin(), sees->end(), vertex);
    if (it == sees->end() || *it != vertex)
        throw std::logic_error("strategy rule reads a vertex outside its in-neighbourhood");
    return vals[it - sees->begin()];
}

Strategy::Strategy(int q, std::vector<Rule> rules) : q_(q), rules_(std::move(rules)) {
    if (q_ < 2 || q_ > kMaxAlphabet)
        throw std::invalid_argument("strategy: alphabet out of range");
    for (const auto& r : rules_) {
        if (!std::is_sorted(r.sees.begin(), r.sees.end()))
            throw std::invalid_argument("strategy: sees list not ascending");
        if (!r.table.empty()) {
            if (r.table.size() != ipow(q_, r.sees.size()))
                throw std::invalid_argument("strategy: table size mismatch");
            for (uint8_t g : r.table)
                if (g >= q_) throw std::invalid_argument("strategy: guess out of range");
        } else if (!r.fn) {
            throw std::invalid_argument("strategy: rule has neither table nor fn");
        }
    }
}

bool Strategy::dense() const {
    return std::all_of(rules_.begin(), rules_.end(),
                       [](const Rule& r) { return !r.table.empty() || r.sees.empty(); });
}

int Strategy::guess(int v, const Config& x) const {
    const Rule& r = rules_[v];
    if (!r.table.empty() || r.sees.empty()) {
        size_t idx = 0;
        for (int u : r.sees) idx = idx * q_ + x[u];
        if (!r.table.empty()) return r.table[idx];
    }
    uint8_t buf[256];
    size_t k = r.sees.size();
    for (size_t i = 0; i < k; ++i) buf[i] = x[r.sees[i]];
    return r.fn(SeesView{&r.sees, std::span<const uint8_t>(buf, k)});
}

bool Strategy::some_correct(const Config& x) const {
    for (int v = 0; v < n(); ++v)
        if (guess(v, x) == x[v]) return true;
    return false;
}

int Strategy::correct_count(const Config& x) const {
    int c = 0;
    for (int v = 0; v < n(); ++v)
        if (guess(v, x) == x[v]) ++c;
    return c;
}

void Strategy::materialize(uint64_t max_entries) {
    for (auto& r : rules_) {
        if (!r.table.empty()) continue;
        uint64_t entries;
        try {
            entries = ipow(q_, r.sees.size());
        } catch (const std::overflow_error&) {
            continue;
        }
        if (entries > max_entries) continue;
        std::vector<uint8_t> table(entries);
        std::vector<uint8_t> tuple(r.sees.size(), 0);
        for (uint64_t idx = 0; idx < entries; ++idx) {
            int g = r.fn(SeesView{&r.sees, tuple});
            if (g < 0 || g >= q_) throw std::logic_error("strategy fn guess out of range");
            table[idx] = static_cast<uint8_t>(g);
            for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
                if (++tuple[i] < q_) break;
                tuple[i] = 0;
            }
        }
        r.table = std::move(table);
        r.fn = nullptr;
    }
}

void check_shape(const Digraph& d, int q, const Strategy& f) {
    if (f.n() != d.n()) throw std::invalid_argument("strategy/graph vertex count mismatch");
    if (f.q() != q) throw std::invalid_argument("strategy alphabet mismatch");
    for (int v = 0; v < d.n(); ++v)
        if (f.rules()[v].sees != d.in_neighbours(v))
            throw std::invalid_argument("strategy sees list differs from in-neighbourhood of vertex " +
                                        std::to_string(v));
}

Strategy parse_strategy(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("strategy parse error at line " +
                                 std::to_string(lineno) + ": " + msg);
    };
    auto next = [&]() -> std::istringstream {
        while (std::getline(in, line)) {
            ++lineno;
            size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos || line[start] == '#') continue;
            return std::istringstream(line);
        }
        fail("unexpected end of input");
        return std::istringstream();
    };

    auto header = next();
    std::string kw;
    int q = 0, n = 0;
    header >> kw;
    if (kw != "strategy") fail("expected 'strategy' header");
    header >> kw >> q;
    if (kw != "q" || q < 2) fail("bad alphabet");
    header >> kw >> n;
    if (kw != "n" || n < 0) fail("bad vertex count");

    std::vector<Strategy::Rule> rules;
    for (int v = 0; v < n; ++v) {
        auto vh = next();
        int id;
        vh >> kw >> id;
        if (kw != "vertex" || id != v) fail("expected 'vertex " + std::to_string(v) + "'");
        vh >> kw;
        if (kw != "sees") fail("expected 'sees'");
        Strategy::Rule rule;
        int u;
        while (vh >> u) rule.sees.push_back(u);
        uint64_t entries = ipow(q, rule.sees.size());
        rule.table.resize(entries);
        for (uint64_t idx = 0; idx < entries; ++idx) {
            auto row = next();
            std::vector<int> tuple;
            std::string tok;
            int guess = -1;
            bool arrow = false;
            while (row >> tok) {
                if (tok == "->") { arrow = true; row >> guess; break; }
                tuple.push_back(std::stoi(tok));
            }
            if (!arrow || guess < 0 || guess >= q) fail("bad table row");
            uint64_t want = 0;
            for (int t : tuple) want = want * q + t;
            if (tuple.size() != rule.sees.size() || want != idx)
                fail("table row out of order");
            rule.table[idx] = static_cast<uint8_t>(guess);
        }
        rules.push_back(std::move(rule));
    }
    return Strategy(q, std::move(rules));
}

std::string serialize_strategy(const Strategy& f) {
    if (!f.dense())
        throw std::runtime_error("serialize_strategy: strategy has non-materialized rules");
    std::ostringstream out;
    out << "strategy q " << f.q() << " n " << f.n() << "\n";
    for (int v = 0; v < f.n(); ++v) {
        const auto& r = f.rules()[v];
        out << "vertex " << v << " sees";
        for (int u : r.sees) out << " " << u;
        out << "\n";
        uint64_t entries = ipow(f.q(), r.sees.size());
        std::vector<int> tuple(r.sees.size(), 0);
        Config probe(f.n(), 0);
        for (uint64_t idx = 0; idx < entries; ++idx) {
            for (size_t i = 0; i < tuple.size(); ++i) {
                out << tuple[i] << " ";
                probe[r.sees[i]] = static_cast<uint8_t>(tuple[i]);
            }
            out << "-> " << f.guess(v, probe) << "\n";
            for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
                if (++tuple[i] < f.q()) break;
                tuple[i] = 0;
            }
        }
    }
    return out.str();
}

}  // namespace hatcraft
