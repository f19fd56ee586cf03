#include "orbitropy/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace orbitropy {

ItemMetric ItemMetric::rows(SpacePtr base, int width, std::vector<int> coords) {
    ItemMetric m;
    if (width < 1) throw InputError("row metric needs width >= 1");
    if (coords.size() % width != 0) throw InputError("row data is not a multiple of the width");
    m.base_ = std::move(base);
    m.width_ = width;
    m.n_ = coords.size() / width;
    m.coords_ = std::move(coords);
    return m;
}

ItemMetric ItemMetric::matrix(std::size_t n, std::vector<double> dist) {
    if (dist.size() != n * n) throw InputError("distance matrix has wrong size");
    ItemMetric m;
    m.n_ = n;
    m.dist_ = std::move(dist);
    return m;
}

double ItemMetric::distance(std::size_t a, std::size_t b) const {
    if (!base_) return dist_[a * n_ + b];
    const int* ra = row(a);
    const int* rb = row(b);
    if (base_->is_grid()) {
        int m = base_->grid_size();
        bool circ = base_->kind() == SpaceKind::Circle;
        int d = 0;
        for (int i = 0; i < width_; ++i) {
            int k = std::abs(ra[i] - rb[i]);
            if (circ) k = std::min(k, m - k);
            d = std::max(d, k);
        }
        return d / static_cast<double>(m);
    }
    double d = 0;
    for (int i = 0; i < width_; ++i) d = std::max(d, base_->distance(ra[i], rb[i]));
    return d;
}

bool ItemMetric::close(std::size_t a, std::size_t b, double eps) const {
    if (!base_ || !base_->is_grid()) return !farther(distance(a, b), eps);
    const int* ra = row(a);
    const int* rb = row(b);
    int m = base_->grid_size();
    bool circ = base_->kind() == SpaceKind::Circle;
    for (int i = 0; i < width_; ++i) {
        int k = std::abs(ra[i] - rb[i]);
        if (circ) k = std::min(k, m - k);
        if (farther(k / static_cast<double>(m), eps)) return false;
    }
    return true;
}

ItemMetric orbit_metric(const OrbitSet& orbits, SpacePtr base) {
    if (orbits.truncated)
        throw InputError("orbit set " + orbits.source + " is truncated; use the symbolic engine");
    return ItemMetric::rows(std::move(base), orbits.arity, orbits.data);
}

ItemMetric pair_metric(const SelectedPairSequence& pairs, const OrbitSet& coin) {
    if (coin.truncated) throw InputError("coincidence set " + coin.source + " is truncated; use the symbolic engine");
    return ItemMetric::rows(pairs.x_space(), 2 * coin.arity, pair_images(pairs, coin));
}

namespace {

// Trie over rows with pruned "within eps" search under the max metric.
class RowTrie {
public:
    RowTrie(const Space& base, int width, double eps) : base_(base), width_(width), eps_(eps) {
        nodes_.emplace_back();
        if (base.kind() == SpaceKind::Interval)
            reach_ = static_cast<int>(std::floor((eps + kTol) * base.grid_size()));
    }

    void insert(const int* row, std::size_t id) {
        int cur = 0;
        for (int d = 0; d < width_; ++d) {
            auto& kids = nodes_[cur].kids;
            auto it = std::lower_bound(kids.begin(), kids.end(), row[d],
                                       [](const std::pair<int, int>& k, int v) { return k.first < v; });
            if (it != kids.end() && it->first == row[d]) {
                cur = it->second;
            } else {
                int idx = static_cast<int>(nodes_.size());
                kids.insert(it, {row[d], idx});
                nodes_.emplace_back();
                cur = idx;
            }
        }
        nodes_[cur].ids.push_back(id);
    }

    bool any_within(const int* row) const { return search(0, 0, row, nullptr); }

    void collect(const int* row, std::vector<std::size_t>& out) const { search(0, 0, row, &out); }

private:
    struct Node {
        std::vector<std::pair<int, int>> kids;
        std::vector<std::size_t> ids;
    };

    bool search(int node, int depth, const int* row, std::vector<std::size_t>* out) const {
        if (depth == width_) {
            if (out) out->insert(out->end(), nodes_[node].ids.begin(), nodes_[node].ids.end());
            return true;
        }
        const auto& kids = nodes_[node].kids;
        auto visit = [&](const std::pair<int, int>& k) {
            return search(k.second, depth + 1, row, out) && !out;
        };
        if (reach_ >= 0) {
            int v = row[depth];
            auto it = std::lower_bound(kids.begin(), kids.end(), v - reach_,
                                       [](const std::pair<int, int>& k, int x) { return k.first < x; });
            for (; it != kids.end() && it->first <= v + reach_; ++it)
                if (visit(*it)) return true;
            return false;
        }
        for (auto& k : kids)
            if (within(base_.distance(k.first, row[depth]), eps_) && visit(k)) return true;
        return false;
    }

    const Space& base_;
    int width_;
    double eps_;
    int reach_ = -1;
    std::vector<Node> nodes_;
};

std::vector<std::vector<std::size_t>> neighborhoods(const ItemMetric& m, double eps) {
    std::size_t n = m.size();
    std::vector<std::vector<std::size_t>> nb(n);
    if (m.has_rows()) {
        RowTrie trie(m.base(), m.width(), eps);
        for (std::size_t i = 0; i < n; ++i) trie.insert(m.row(i), i);
        for (std::size_t i = 0; i < n; ++i) {
            trie.collect(m.row(i), nb[i]);
            std::sort(nb[i].begin(), nb[i].end());
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (within(m.distance(i, j), eps)) nb[i].push_back(j);
    }
    return nb;
}

}  // namespace

std::vector<std::size_t> greedy_separated(const ItemMetric& m, double eps) {
    std::vector<std::size_t> kept;
    if (m.has_rows()) {
        RowTrie trie(m.base(), m.width(), eps);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (trie.any_within(m.row(i))) continue;
            trie.insert(m.row(i), i);
            kept.push_back(i);
        }
        return kept;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        bool ok = true;
        for (std::size_t k : kept)
            if (!farther(m.distance(i, k), eps)) {
                ok = false;
                break;
            }
        if (ok) kept.push_back(i);
    }
    return kept;
}

std::vector<std::size_t> greedy_separated(const OrbitSet& tuples, const TupleMetric& metric, double eps) {
    if (tuples.arity != metric.arity) throw InputError("tuple arity mismatch");
    return greedy_separated(orbit_metric(tuples, metric.base), eps);
}

std::vector<std::size_t> greedy_spanning(const ItemMetric& m, double eps) {
    std::size_t n = m.size();
    auto nb = neighborhoods(m, eps);
    std::vector<char> covered(n, 0);
    std::vector<std::size_t> cnt(n);
    for (std::size_t i = 0; i < n; ++i) cnt[i] = nb[i].size();
    using Entry = std::pair<std::size_t, std::size_t>;  // (count, index)
    auto cmp = [](const Entry& a, const Entry& b) {
        return a.first != b.first ? a.first < b.first : a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    for (std::size_t i = 0; i < n; ++i) heap.push({cnt[i], i});
    std::vector<std::size_t> centers;
    while (!heap.empty()) {
        auto [c, v] = heap.top();
        heap.pop();
        if (covered[v]) continue;
        if (c != cnt[v]) {
            heap.push({cnt[v], v});
            continue;
        }
        centers.push_back(v);
        for (std::size_t u : nb[v]) {
            if (covered[u]) continue;
            covered[u] = 1;
            for (std::size_t w : nb[u]) --cnt[w];
        }
    }
    std::sort(centers.begin(), centers.end());
    return centers;
}

std::vector<std::size_t> greedy_spanning(const OrbitSet& tuples, const TupleMetric& metric, double eps) {
    if (tuples.arity != metric.arity) throw InputError("tuple arity mismatch");
    return greedy_spanning(orbit_metric(tuples, metric.base), eps);
}

bool is_separated(const ItemMetric& m, const std::vector<std::size_t>& set, double eps) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!farther(m.distance(set[i], set[j]), eps)) return false;
    return true;
}

bool is_spanning(const ItemMetric& m, const std::vector<std::size_t>& set, double eps) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        bool hit = false;
        for (std::size_t c : set)
            if (within(m.distance(i, c), eps)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

std::string engine_name(Engine e) { return e == Engine::Exact ? "exact" : "symbolic"; }

std::vector<double> branch_distance_matrix(const MapSequence& seq, int n, std::size_t cap) {
    const Space& s = *seq.space();
    int N = s.size();
    if (n < 1) throw InputError("branch metric needs n >= 1");
    std::vector<const Table*> steps;
    for (int j = 0; j + 1 < n; ++j) steps.push_back(&seq.at(j).table());
    std::vector<double> dist(static_cast<std::size_t>(N) * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) dist[static_cast<std::size_t>(a) * N + b] = s.distance(a, b);
    std::size_t visited = 0;
    // For each orbit u from x, a backward pass gives for every y the best
    // orbit v from y: g_i(w) = max(d(u_i, w), min over w' in phi_i(w) of g_{i+1}(w')).
    std::vector<double> out(static_cast<std::size_t>(N) * N, 0.0);
    std::vector<std::vector<double>> g(n, std::vector<double>(N));
    std::vector<int> u(n), pos(n, 0);
    auto score = [&](int x) {
        double* row = &out[static_cast<std::size_t>(x) * N];
        for (int w = 0; w < N; ++w) g[n - 1][w] = dist[static_cast<std::size_t>(u[n - 1]) * N + w];
        for (int i = n - 2; i >= 0; --i) {
            const Table& t = *steps[i];
            const double* drow = &dist[static_cast<std::size_t>(u[i]) * N];
            for (int w = 0; w < N; ++w) {
                double m = std::numeric_limits<double>::infinity();
                for (int w2 : t[w]) m = std::min(m, g[i + 1][w2]);
                g[i][w] = std::max(drow[w], m);
            }
        }
        for (int y = 0; y < N; ++y) row[y] = std::max(row[y], g[0][y]);
    };
    for (int x = 0; x < N; ++x) {
        u[0] = x;
        if (n == 1) {
            score(x);
            continue;
        }
        int depth = 1;
        pos[1] = 0;
        while (depth >= 1) {
            const auto& succ = (*steps[depth - 1])[u[depth - 1]];
            if (pos[depth] >= static_cast<int>(succ.size())) {
                --depth;
                if (depth >= 1) ++pos[depth];
                continue;
            }
            u[depth] = succ[pos[depth]];
            if (depth == n - 1) {
                if (++visited > cap) throw CapError("branch metric exceeds the enumeration cap", "h_i", n);
                score(x);
                ++pos[depth];
            } else {
                ++depth;
                pos[depth] = 0;
            }
        }
        out[static_cast<std::size_t>(x) * N + x] = 0;
    }
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < x; ++y) {
            double v = std::max(out[static_cast<std::size_t>(x) * N + y], out[static_cast<std::size_t>(y) * N + x]);
            out[static_cast<std::size_t>(x) * N + y] = out[static_cast<std::size_t>(y) * N + x] = v;
        }
    return out;
}

CoincidenceCounts coincidence_counts(const SelectedPairSequence& pairs, const CellPartition& part_z,
                                     const CellPartition& part_x, double eps, int nmax, Engine engine,
                                     std::size_t cap, const SymbolicOptions& opt) {
    CoincidenceCounts out;
    out.pair.epsilon = out.z.epsilon = eps;
    out.pair.engine = out.z.engine = engine;
    if (engine == Engine::Exact) {
        for (int n = 1; n <= nmax; ++n) {
            OrbitSet coin = enumerate_coincidences(pairs, n, cap);
            if (coin.truncated) break;
            out.pair.entries.push_back({n, BigInt(greedy_separated(pair_metric(pairs, coin), eps).size()), true});
            out.z.entries.push_back(
                {n, BigInt(greedy_separated(orbit_metric(coin, pairs.z_space()), eps).size()), true});
        }
        return out;
    }
    auto phi = realized_counts(pairs.phi(), part_x, nmax + 1, opt);
    for (int n = 1; n + 1 <= static_cast<int>(phi.counts.size()); ++n)
        out.pair.entries.push_back({n, phi.counts[n], true});
    auto psi = realized_counts(pairs.psi(), part_z, nmax, opt);
    for (int n = 1; n <= static_cast<int>(psi.counts.size()); ++n)
        out.z.entries.push_back({n, psi.counts[n - 1], true});
    return out;
}

}  // namespace orbitropy
