#include "orbitropy/orbits.hpp"

#include <algorithm>

namespace orbitropy {

std::optional<std::size_t> OrbitSet::find(std::span<const int> t) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto row = tuple(mid);
        if (std::lexicographical_compare(row.begin(), row.end(), t.begin(), t.end())) lo = mid + 1;
        else hi = mid;
    }
    if (lo < size()) {
        auto row = tuple(lo);
        if (std::equal(row.begin(), row.end(), t.begin(), t.end())) return lo;
    }
    return std::nullopt;
}

namespace {

// Depth-first expansion of x_{i+1} ∈ next(i, x_i); steps[i] lists successors.
OrbitSet expand(const std::vector<const Table*>& steps, int n, const std::vector<int>& starts, std::size_t cap,
                std::string source) {
    if (cap == 0) throw InputError("enumeration cap must be positive");
    if (n < 1) throw InputError("orbit length n must be >= 1");
    OrbitSet out;
    out.arity = n;
    out.source = std::move(source);
    std::vector<int> cur(n);
    std::vector<std::size_t> pos(n, 0);
    for (int s : starts) {
        cur[0] = s;
        int depth = 0;
        if (n == 1) {
            if (out.size() >= cap) {
                out.truncated = true;
                return out;
            }
            out.data.push_back(s);
            continue;
        }
        pos[1] = 0;
        depth = 1;
        while (depth >= 1) {
            const auto& succ = (*steps[depth - 1])[cur[depth - 1]];
            if (pos[depth] >= succ.size()) {
                --depth;
                if (depth >= 1) ++pos[depth];
                continue;
            }
            cur[depth] = succ[pos[depth]];
            if (depth == n - 1) {
                if (out.size() >= cap) {
                    out.truncated = true;
                    return out;
                }
                out.data.insert(out.data.end(), cur.begin(), cur.end());
                ++pos[depth];
            } else {
                ++depth;
                pos[depth] = 0;
            }
        }
    }
    return out;
}

std::vector<int> all_points(const Space& s) {
    std::vector<int> v(s.size());
    for (int i = 0; i < s.size(); ++i) v[i] = i;
    return v;
}

std::vector<const Table*> orbit_steps(const MapSequence& seq, int n) {
    std::vector<const Table*> steps;
    for (int j = 0; j + 1 < n; ++j) steps.push_back(&seq.at(j).table());
    return steps;
}

struct CoinSteps {
    std::vector<Table> tables;
    std::vector<const Table*> ptrs;
};

CoinSteps coin_steps(const SelectedPairSequence& pairs, int n) {
    CoinSteps cs;
    const Space& z = *pairs.z_space();
    const Space& x = *pairs.x_space();
    if (n >= 1) (void)pairs.at(n - 1);
    for (int j = 0; j + 1 < n; ++j) {
        const auto& p = pairs.at(j);
        const auto& r1 = pairs.at(j + 1).r;
        Table fibers(x.size());
        for (int w = 0; w < z.size(); ++w) fibers[r1.apply(w)].push_back(w);
        Table t(z.size());
        for (int w = 0; w < z.size(); ++w) t[w] = fibers[p.q.apply(w)];
        cs.tables.push_back(std::move(t));
    }
    for (auto& t : cs.tables) cs.ptrs.push_back(&t);
    return cs;
}

void check_point(const Space& s, int x) {
    if (x < 0 || x >= s.size()) throw InputError("unknown point index " + std::to_string(x));
}

}  // namespace

OrbitSet enumerate_orbits(const MapSequence& seq, int n, std::size_t cap) {
    return expand(orbit_steps(seq, n), n, all_points(*seq.space()), cap, "Orb_" + std::to_string(n));
}

OrbitSet enumerate_orbits_from(const MapSequence& seq, int n, int x, std::size_t cap) {
    check_point(*seq.space(), x);
    return expand(orbit_steps(seq, n), n, {x}, cap, "Orb_" + std::to_string(n) + "(x=" + std::to_string(x) + ")");
}

OrbitSet enumerate_coincidences(const SelectedPairSequence& pairs, int n, std::size_t cap) {
    auto cs = coin_steps(pairs, n);
    return expand(cs.ptrs, n, all_points(*pairs.z_space()), cap, "Coin_" + std::to_string(n));
}

OrbitSet enumerate_coincidences_from(const SelectedPairSequence& pairs, int n, int z, std::size_t cap) {
    check_point(*pairs.z_space(), z);
    auto cs = coin_steps(pairs, n);
    return expand(cs.ptrs, n, {z}, cap, "Coin_" + std::to_string(n) + "(z=" + std::to_string(z) + ")");
}

ProjectionWitness orbit_to_coincidence_projection(const SelectedPairSequence& pairs, int n, std::size_t cap) {
    ProjectionWitness w;
    w.coincidences = enumerate_coincidences(pairs, n, cap);
    w.orbits = enumerate_orbits(pairs.phi(), n + 1, cap);
    if (w.coincidences.truncated || w.orbits.truncated)
        throw CapError("projection witness exceeds the enumeration cap", "h_pair", n);
    std::vector<char> hit(w.orbits.size(), 0);
    std::vector<int> img(n + 1);
    for (std::size_t i = 0; i < w.coincidences.size(); ++i) {
        auto z = w.coincidences.tuple(i);
        for (int j = 0; j < n; ++j) img[j] = pairs.at(j).r.apply(z[j]);
        img[n] = pairs.at(n - 1).q.apply(z[n - 1]);
        auto idx = w.orbits.find(img);
        if (!idx) throw ConsistencyError("projection image of a coincidence orbit is not an orbit");
        w.image.push_back(*idx);
        hit[*idx] = 1;
    }
    for (std::size_t k = 0; k < hit.size(); ++k)
        if (!hit[k]) throw ConsistencyError("projection onto Orb_{n+1} is not surjective");
    return w;
}

std::vector<int> pair_images(const SelectedPairSequence& pairs, const OrbitSet& coin) {
    int n = coin.arity;
    std::vector<int> out;
    out.reserve(coin.size() * 2 * n);
    for (std::size_t i = 0; i < coin.size(); ++i) {
        auto z = coin.tuple(i);
        for (int j = 0; j < n; ++j) {
            const auto& p = pairs.at(j);
            out.push_back(p.r.apply(z[j]));
            out.push_back(p.q.apply(z[j]));
        }
    }
    return out;
}

double pair_tuple_distance(const SelectedPairSequence& pairs, int n, std::span<const int> zs,
                           std::span<const int> zs2) {
    if (static_cast<int>(zs.size()) != n || static_cast<int>(zs2.size()) != n)
        throw InputError("pair_tuple_distance: tuple arity mismatch");
    const Space& x = *pairs.x_space();
    double d = 0;
    for (int i = 0; i < n; ++i) {
        const auto& p = pairs.at(i);
        d = std::max(d, x.distance(p.r.apply(zs[i]), p.r.apply(zs2[i])));
        d = std::max(d, x.distance(p.q.apply(zs[i]), p.q.apply(zs2[i])));
    }
    return d;
}

}  // namespace orbitropy
