#include "orbitropy/counting.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace orbitropy {

FarGraph far_graph(const ItemMetric& m, double eps) {
    FarGraph g;
    g.n = m.size();
    g.words = (g.n + 63) / 64;
    g.bits.assign(g.n * g.words, 0);
    for (std::size_t a = 0; a < g.n; ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (farther(m.distance(a, b), eps)) {
                g.bits[a * g.words + b / 64] |= std::uint64_t{1} << (b % 64);
                g.bits[b * g.words + a / 64] |= std::uint64_t{1} << (a % 64);
            }
    return g;
}

namespace {

// Branch and bound with greedy colouring bounds over bitsets (vertices
// relabelled by non-increasing degree).
class CliqueSolver {
public:
    CliqueSolver(const FarGraph& g, std::uint64_t budget) : budget_(budget) {
        n_ = g.n;
        w_ = g.words;
        std::vector<std::size_t> deg(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            std::size_t d = 0;
            for (std::size_t k = 0; k < w_; ++k) d += std::popcount(g.bits[v * w_ + k]);
            deg[v] = d;
        }
        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
        adj_.assign(n_ * w_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j && g.adjacent(order_[i], order_[j])) adj_[i * w_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }

    CliqueResult run() {
        CliqueResult res;
        if (n_ == 0) return res;
        // greedy seed
        std::vector<std::uint64_t> cand(w_, 0);
        for (std::size_t v = 0; v < n_; ++v) cand[v / 64] |= std::uint64_t{1} << (v % 64);
        std::vector<std::size_t> seed;
        auto p = cand;
        for (;;) {
            std::size_t v = first(p);
            if (v == npos) break;
            seed.push_back(v);
            for (std::size_t k = 0; k < w_; ++k) p[k] &= adj_[v * w_ + k];
        }
        best_ = seed;
        std::vector<std::size_t> c;
        expand(c, cand);
        res.size = best_.size();
        res.exact = !stopped_;
        res.nodes = nodes_;
        for (std::size_t v : best_) res.members.push_back(order_[v]);
        std::sort(res.members.begin(), res.members.end());
        return res;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t first(const std::vector<std::uint64_t>& s) const {
        for (std::size_t k = 0; k < w_; ++k)
            if (s[k]) return k * 64 + std::countr_zero(s[k]);
        return npos;
    }

    void expand(std::vector<std::size_t>& c, std::vector<std::uint64_t>& p) {
        if (stopped_) return;
        if (++nodes_ > budget_) {
            stopped_ = true;
            return;
        }
        std::vector<std::size_t> verts;
        std::vector<std::size_t> colors;
        std::vector<std::uint64_t> u = p, q(w_);
        std::size_t k = 0;
        for (;;) {
            bool any = false;
            for (std::size_t i = 0; i < w_; ++i)
                if (u[i]) any = true;
            if (!any) break;
            ++k;
            q = u;
            for (;;) {
                std::size_t v = first(q);
                if (v == npos) break;
                q[v / 64] &= ~(std::uint64_t{1} << (v % 64));
                u[v / 64] &= ~(std::uint64_t{1} << (v % 64));
                for (std::size_t i = 0; i < w_; ++i) q[i] &= ~adj_[v * w_ + i];
                verts.push_back(v);
                colors.push_back(k);
            }
        }
        std::vector<std::uint64_t> np(w_);
        for (std::size_t i = verts.size(); i-- > 0;) {
            if (c.size() + colors[i] <= best_.size()) return;
            std::size_t v = verts[i];
            c.push_back(v);
            bool empty = true;
            for (std::size_t t = 0; t < w_; ++t) {
                np[t] = p[t] & adj_[v * w_ + t];
                if (np[t]) empty = false;
            }
            if (empty) {
                if (c.size() > best_.size()) best_ = c;
            } else {
                auto sub = np;
                expand(c, sub);
            }
            c.pop_back();
            p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
            if (stopped_) return;
        }
    }

    std::size_t n_ = 0, w_ = 0;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool stopped_ = false;
    std::vector<std::size_t> order_;
    std::vector<std::uint64_t> adj_;
    std::vector<std::size_t> best_;
};

// Maximum independent set of the closeness graph: dominated vertices and
// isolated vertices are resolved first, then each component gets its own
// clique search on the far graph.
CliqueResult reduced_max_separated(const ItemMetric& m, const std::vector<std::size_t>& reps, double eps,
                                   std::uint64_t budget) {
    std::size_t k = reps.size();
    std::size_t w = (k + 63) / 64;
    std::vector<std::uint64_t> close(k * w, 0);
    std::vector<std::vector<std::size_t>> nb(k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (m.close(reps[a], reps[b], eps)) {
                close[a * w + b / 64] |= std::uint64_t{1} << (b % 64);
                close[b * w + a / 64] |= std::uint64_t{1} << (a % 64);
                nb[a].push_back(b);
                nb[b].push_back(a);
            }
    auto is_close = [&](std::size_t a, std::size_t b) { return (close[a * w + b / 64] >> (b % 64)) & 1u; };
    std::vector<char> alive(k, 1);
    std::vector<std::size_t> chosen;
    auto degree = [&](std::size_t v) {
        std::size_t d = 0;
        for (std::size_t u : nb[v]) d += alive[u];
        return d;
    };
    constexpr std::size_t kDomDegree = 256;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t u = 0; u < k; ++u) {
            if (!alive[u]) continue;
            std::size_t du = degree(u);
            if (du == 0) {
                chosen.push_back(u);
                alive[u] = 0;
                changed = true;
                continue;
            }
            if (du > kDomDegree) continue;
            // N[u] within N[v] means some maximum set avoids v
            for (std::size_t v : nb[u]) {
                if (!alive[v]) continue;
                bool sub = true;
                for (std::size_t x : nb[u])
                    if (alive[x] && x != v && !is_close(v, x)) {
                        sub = false;
                        break;
                    }
                if (sub) {
                    alive[v] = 0;
                    changed = true;
                }
            }
        }
    }
    CliqueResult res;
    res.members = chosen;
    std::vector<char> seen(k, 0);
    for (std::size_t s = 0; s < k; ++s) {
        if (!alive[s] || seen[s]) continue;
        std::vector<std::size_t> comp{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::size_t u : nb[comp[i]])
                if (alive[u] && !seen[u]) {
                    seen[u] = 1;
                    comp.push_back(u);
                }
        std::sort(comp.begin(), comp.end());
        if (comp.size() == 1) {
            res.members.push_back(comp[0]);
            continue;
        }
        FarGraph g;
        g.n = comp.size();
        g.words = (g.n + 63) / 64;
        g.bits.assign(g.n * g.words, 0);
        for (std::size_t a = 0; a < g.n; ++a)
            for (std::size_t b = 0; b < g.n; ++b)
                if (a != b && !is_close(comp[a], comp[b])) g.bits[a * g.words + b / 64] |= std::uint64_t{1} << (b % 64);
        std::uint64_t left = res.nodes < budget ? budget - res.nodes : 0;
        auto sub = max_clique(g, std::max<std::uint64_t>(left, 1));
        res.nodes += sub.nodes;
        if (!sub.exact) res.exact = false;
        for (std::size_t v : sub.members) res.members.push_back(comp[v]);
    }
    res.size = res.members.size();
    for (auto& v : res.members) v = reps[v];
    std::sort(res.members.begin(), res.members.end());
    return res;
}

}  // namespace

CliqueResult max_clique(const FarGraph& g, std::uint64_t node_budget) {
    return CliqueSolver(g, node_budget).run();
}

CliqueResult exact_max_separated(const ItemMetric& m, double eps, std::uint64_t node_budget) {
    std::size_t n = m.size();
    if (n == 0) throw InputError("exact_max_separated: empty tuple set");
    // collapse zero-distance twins: identical neighbourhoods, at most one can be kept
    std::vector<std::size_t> reps;
    if (m.has_rows()) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        int w = m.width();
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(m.row(a), m.row(a) + w, m.row(b), m.row(b) + w);
        });
        for (std::size_t i = 0; i < n; ++i)
            if (i == 0 || !std::equal(m.row(idx[i]), m.row(idx[i]) + w, m.row(idx[i - 1])))
                reps.push_back(idx[i]);
        std::sort(reps.begin(), reps.end());
    } else {
        reps.resize(n);
        std::iota(reps.begin(), reps.end(), 0);
    }
    if ((!m.has_rows() || !m.base().is_grid()) && reps.size() <= 4 * kCliqueLimit) {
        std::vector<std::size_t> kept;
        for (std::size_t r : reps) {
            bool twin = false;
            for (std::size_t k : kept)
                if (m.distance(r, k) <= kTol) {
                    twin = true;
                    break;
                }
            if (!twin) kept.push_back(r);
        }
        reps = std::move(kept);
    }
    if (reps.size() > kCliqueLimit)
        throw InputError("exact_max_separated: " + std::to_string(reps.size()) + " distinct tuples exceed the limit of " +
                         std::to_string(kCliqueLimit));
    return reduced_max_separated(m, reps, eps, node_budget);
}

CliqueResult exact_max_separated(const OrbitSet& tuples, const TupleMetric& metric, double eps,
                                 std::uint64_t node_budget) {
    if (tuples.arity != metric.arity) throw InputError("tuple arity mismatch");
    return exact_max_separated(orbit_metric(tuples, metric.base), eps, node_budget);
}

}  // namespace orbitropy
