#include "orbitropy/counting.hpp"

#include <algorithm>
#include <map>

namespace orbitropy {

namespace {

struct StateKey {
    int cell;
    Region region;
};

struct StateLess {
    bool operator()(const StateKey& a, const StateKey& b) const {
        if (a.cell != b.cell) return a.cell < b.cell;
        return a.region < b.region;
    }
};

using StateMap = std::map<StateKey, BigInt, StateLess>;

bool has_kind(const Formula& f, Formula::Kind k) {
    if (f.kind == k) return true;
    return std::any_of(f.parts.begin(), f.parts.end(), [&](const FormulaPtr& p) { return has_kind(*p, k); });
}

bool seq_grid_bound(const MapSequence& seq) { return !seq.space()->is_grid() || seq.grid_bound(); }

Region start_region(const CellPartition& part, int c, bool gb) {
    return gb ? grid_points_region(part, c) : cell_interior(part, c);
}

BigInt total(const StateMap& m) {
    BigInt s = 0;
    for (auto& [k, v] : m) s += v;
    return s;
}

void check_partition(const MapSequence& seq, const CellPartition& part) {
    if (!part.space().same_as(*seq.space()))
        throw InputError("partition space " + part.space().describe() + " does not match sequence space " +
                         seq.space()->describe());
}

// One propagation step; false when the state cap is exceeded.
bool advance(const StateMap& cur, StateMap& next, const Formula& f, const CellPartition& part, bool forward,
             std::size_t cap) {
    for (auto& [key, mult] : cur) {
        Region img = forward ? image(f, key.region) : preimage(f, key.region);
        for (int c : cells_met(img, part)) {
            Region r = clip(img, part, c);
            if (r.empty()) continue;
            next[StateKey{c, std::move(r)}] += mult;
            if (next.size() > cap) return false;
        }
    }
    return true;
}

}  // namespace

bool backward_capable(const MapSequence& seq) {
    if (seq_grid_bound(seq)) return false;
    auto bad = [](const MultiMap& m) { return has_kind(*m.formula(), Formula::Kind::Constant); };
    return std::none_of(seq.prefix().begin(), seq.prefix().end(), bad) &&
           std::none_of(seq.period().begin(), seq.period().end(), bad);
}

TransitionMatrix transition_matrix(const MultiMap& map, const CellPartition& part, std::size_t step) {
    if (!part.space().same_as(map.domain()) || !part.space().same_as(map.codomain()))
        throw InputError("transition_matrix: map must be a self-map of the partitioned space");
    bool gb = !map.domain().is_grid() || grid_bound(*map.formula());
    TransitionMatrix t;
    t.cells = part.cell_count();
    t.step = step;
    t.a.assign(static_cast<std::size_t>(t.cells) * t.cells, 0);
    for (int c = 0; c < t.cells; ++c) {
        Region img = image(*map.formula(), start_region(part, c, gb));
        for (int c2 : cells_met(img, part)) t.a[static_cast<std::size_t>(c2) * t.cells + c] = 1;
    }
    return t;
}

BigInt relaxed_cover_count(const MapSequence& seq, const CellPartition& part, int n) {
    check_partition(seq, part);
    if (n < 1) throw InputError("cover count needs n >= 1");
    int k = part.cell_count();
    std::vector<BigInt> v(k, 1);
    for (int j = 0; j + 1 < n; ++j) {
        auto t = transition_matrix(seq.at(j), part, j);
        std::vector<BigInt> w(k, 0);
        for (int to = 0; to < k; ++to)
            for (int from = 0; from < k; ++from)
                if (t.at(to, from)) w[to] += v[from];
        v = std::move(w);
    }
    BigInt s = 0;
    for (auto& x : v) s += x;
    return s;
}

SymbolicSeries realized_counts_forward(const MapSequence& seq, const CellPartition& part, int nmax,
                                       const SymbolicOptions& opt) {
    check_partition(seq, part);
    if (nmax < 1) throw InputError("cover count needs n >= 1");
    bool gb = seq_grid_bound(seq);
    SymbolicSeries out;
    StateMap cur;
    for (int c = 0; c < part.cell_count(); ++c) {
        Region r = start_region(part, c, gb);
        if (!r.empty()) cur[StateKey{c, std::move(r)}] += 1;
    }
    out.counts.push_back(total(cur));
    out.peak_states = cur.size();
    for (int j = 0; j + 2 <= nmax; ++j) {
        StateMap next;
        if (!advance(cur, next, *seq.at(j).formula(), part, true, opt.state_cap)) break;
        cur = std::move(next);
        out.counts.push_back(total(cur));
        out.peak_states = std::max(out.peak_states, cur.size());
    }
    out.forward_reach = static_cast<int>(out.counts.size());
    return out;
}

std::optional<BigInt> realized_count_backward(const MapSequence& seq, const CellPartition& part, int n,
                                              const SymbolicOptions& opt) {
    check_partition(seq, part);
    if (!backward_capable(seq)) throw InputError("backward propagation needs a sequence without point-valued maps");
    StateMap cur;
    for (int c = 0; c < part.cell_count(); ++c) cur[StateKey{c, cell_interior(part, c)}] += 1;
    for (int j = n - 2; j >= 0; --j) {
        StateMap next;
        if (!advance(cur, next, *seq.at(j).formula(), part, false, opt.state_cap)) return std::nullopt;
        cur = std::move(next);
    }
    return total(cur);
}

SymbolicSeries realized_counts(const MapSequence& seq, const CellPartition& part, int nmax,
                               const SymbolicOptions& opt) {
    SymbolicSeries out = realized_counts_forward(seq, part, nmax, opt);
    if (static_cast<int>(out.counts.size()) < nmax && opt.allow_backward && backward_capable(seq)) {
        for (int n = static_cast<int>(out.counts.size()) + 1; n <= nmax; ++n) {
            auto c = realized_count_backward(seq, part, n, opt);
            if (!c) break;
            out.counts.push_back(*c);
        }
    }
    return out;
}

BigInt cover_count(const MapSequence& seq, const CellPartition& part, int n, const SymbolicOptions& opt) {
    auto s = realized_counts(seq, part, n, opt);
    if (static_cast<int>(s.counts.size()) < n)
        throw CapError("symbolic state cap exceeded", "h_AKEK", static_cast<int>(s.counts.size()) + 1);
    return s.counts[n - 1];
}

SymbolicSeries pointwise_counts(const MapSequence& seq, const CellPartition& part, int nmax, int x,
                                const SymbolicOptions& opt) {
    check_partition(seq, part);
    const Space& s = *seq.space();
    if (x < 0 || x >= s.size()) throw InputError("unknown point index " + std::to_string(x));
    SymbolicSeries out;
    StateMap cur;
    Region start;
    start.points.push_back(s.coordinate(x));
    cur[StateKey{part.cell_of_point(x), start}] = 1;
    out.counts.push_back(1);
    out.peak_states = 1;
    for (int j = 0; j + 2 <= nmax; ++j) {
        StateMap next;
        if (!advance(cur, next, *seq.at(j).formula(), part, true, opt.state_cap)) break;
        cur = std::move(next);
        out.counts.push_back(total(cur));
        out.peak_states = std::max(out.peak_states, cur.size());
    }
    out.forward_reach = static_cast<int>(out.counts.size());
    return out;
}

BigInt pointwise_cover_count(const MapSequence& seq, const CellPartition& part, int n, int x,
                             const SymbolicOptions& opt) {
    auto s = pointwise_counts(seq, part, n, x, opt);
    if (static_cast<int>(s.counts.size()) < n)
        throw CapError("symbolic state cap exceeded", "h_p", static_cast<int>(s.counts.size()) + 1);
    return s.counts[n - 1];
}

std::vector<BigInt> enumerate_realized_word_counts(const MapSequence& seq, const CellPartition& part, int nmax,
                                                   std::size_t word_limit) {
    check_partition(seq, part);
    bool gb = seq_grid_bound(seq);
    int k = part.cell_count();
    std::vector<TransitionMatrix> rel;
    for (int j = 0; j + 1 < nmax; ++j) rel.push_back(transition_matrix(seq.at(j), part, j));
    std::vector<int> word;
    std::size_t visited = 0;
    std::vector<BigInt> counts(nmax, 0);
    // a word is kept only if pulling its cells back to step 0 leaves something
    auto realizable = [&]() {
        int last = static_cast<int>(word.size()) - 1;
        Region s = start_region(part, word[last], gb);
        for (int j = last - 1; j >= 0 && !s.empty(); --j) s = clip(preimage(*seq.at(j).formula(), s), part, word[j]);
        return !s.empty();
    };
    auto dfs = [&](auto&& self) -> void {
        int d = static_cast<int>(word.size());
        if (d > 0) counts[d - 1] += 1;
        if (d == nmax) return;
        for (int c = 0; c < k; ++c) {
            if (d > 0 && !rel[d - 1].at(c, word[d - 1])) continue;
            if (++visited > word_limit) throw CapError("oracle word enumeration exceeds its limit", "AKEK", d + 1);
            word.push_back(c);
            if (realizable()) self(self);
            word.pop_back();
        }
    };
    dfs(dfs);
    return counts;
}

BigInt enumerate_realized_words(const MapSequence& seq, const CellPartition& part, int n, std::size_t word_limit) {
    if (n < 1) throw InputError("word length must be >= 1");
    return enumerate_realized_word_counts(seq, part, n, word_limit).back();
}

BigInt grid_orbit_words(const MapSequence& seq, const CellPartition& part, int n, std::size_t cap) {
    check_partition(seq, part);
    OrbitSet orb = enumerate_orbits(seq, n, cap);
    if (orb.truncated) throw CapError("grid orbit enumeration exceeds the cap", "AKEK", n);
    std::vector<std::vector<int>> words;
    words.reserve(orb.size());
    for (std::size_t i = 0; i < orb.size(); ++i) {
        auto t = orb.tuple(i);
        std::vector<int> w(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) w[j] = part.cell_of_point(t[j]);
        words.push_back(std::move(w));
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return BigInt(words.size());
}

}  // namespace orbitropy
