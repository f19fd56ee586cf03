#include "orbitropy/scenario.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace orbitropy {

namespace {

constexpr int kOracleCells = 16;
constexpr int kOracleN = 8;
constexpr std::size_t kOracleWords = 500'000;
constexpr std::uint64_t kOracleBudget = 50'000;
constexpr std::size_t kOracleTuples = 2000;

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

struct Target {
    std::string name;
    MapSequence seq;
    SpacePtr space;
};

void symbolic_vs_paths(const Target& t, const std::vector<double>& eps, int nmax, const SymbolicOptions& opt,
                       std::vector<OracleResult>& out, int& usable) {
    for (double e : eps) {
        std::optional<CellPartition> part;
        try {
            part.emplace(t.space, e);
        } catch (const InputError&) {
            continue;
        }
        if (part->cell_count() > kOracleCells) continue;
        ++usable;
        auto engine = realized_counts(t.seq, *part, nmax, opt);
        std::vector<BigInt> truth;
        try {
            truth = enumerate_realized_word_counts(t.seq, *part, nmax, kOracleWords);
        } catch (const CapError& err) {
            throw OracleLimitError(t.name + " eps=" + num(e) + ": path enumeration exceeds " +
                                   std::to_string(kOracleWords) + " words at n=" + std::to_string(err.n));
        }
        for (int n = 1; n <= nmax; ++n) {
            OracleResult r;
            r.name = t.name + " cover_count eps=" + num(e) + " n=" + std::to_string(n);
            r.oracle_value = truth[n - 1].str();
            if (n <= int(engine.counts.size())) {
                r.engine_value = engine.counts[n - 1].str();
                r.pass = engine.counts[n - 1] == truth[n - 1];
            } else {
                r.engine_value = "state cap";
            }
            out.push_back(r);
        }
    }
}

void greedy_vs_clique(const std::string& name, const std::vector<ItemMetric>& ms, const std::vector<double>& eps,
                      std::vector<OracleResult>& out) {
    for (double e : eps)
        for (std::size_t i = 0; i < ms.size(); ++i) {
            auto hi = exact_max_separated(ms[i], e, kOracleBudget);
            if (!hi.exact) continue;
            auto lo = exact_max_separated(ms[i], 2 * e, kOracleBudget);
            if (!lo.exact) continue;
            auto g = greedy_separated(ms[i], e);
            OracleResult r;
            r.name = name + " greedy_separated eps=" + num(e) + " n=" + std::to_string(i + 1);
            r.engine_value = std::to_string(g.size());
            r.oracle_value = "[" + std::to_string(lo.size) + ", " + std::to_string(hi.size) + "]";
            r.pass = lo.size <= g.size() && g.size() <= hi.size;
            out.push_back(r);
        }
}

}  // namespace

std::vector<OracleResult> oracle_scenario(const Scenario& sc, const Overrides& ov) {
    int nmax = std::min(kOracleN, ov.n_max.value_or(sc.oracle_n.value_or(kOracleN)));
    std::size_t cap = ov.cap.value_or(sc.run.cap);
    SymbolicOptions opt;
    opt.state_cap = sc.run.state_cap;

    std::vector<Target> targets;
    if (sc.system.seq) targets.push_back({"phi", *sc.system.seq, sc.x});
    if (sc.system.pairs) {
        targets.push_back({"q o r^-1", sc.system.pairs->phi(), sc.x});
        targets.push_back({"psi on Z", sc.system.pairs->psi(), sc.system.pairs->z_space()});
    }

    std::vector<OracleResult> out;
    int usable = 0;
    for (auto& t : targets) {
        auto eps = sc.run.epsilons.empty() ? default_epsilons(*t.space) : sc.run.epsilons;
        symbolic_vs_paths(t, eps, nmax, opt, out, usable);
    }
    if (usable == 0)
        throw OracleLimitError(sc.id + ": no epsilon gives at most " + std::to_string(kOracleCells) + " cells");

    for (auto& t : targets) {
        auto eps = sc.run.epsilons.empty() ? default_epsilons(*t.space) : sc.run.epsilons;
        std::vector<ItemMetric> ms;
        for (int n = 1; n <= nmax; ++n) {
            OrbitSet o = enumerate_orbits(t.seq, n, cap);
            if (o.truncated || o.size() > kOracleTuples) break;
            ms.push_back(orbit_metric(o, t.space));
        }
        greedy_vs_clique(t.name, ms, eps, out);
    }
    if (sc.system.pairs) {
        auto eps = sc.run.epsilons.empty() ? default_epsilons(*sc.x) : sc.run.epsilons;
        std::vector<ItemMetric> ms;
        for (int n = 1; n <= nmax; ++n) {
            OrbitSet coin = enumerate_coincidences(*sc.system.pairs, n, cap);
            if (coin.truncated || coin.size() > kOracleTuples) break;
            ms.push_back(pair_metric(*sc.system.pairs, coin));
        }
        greedy_vs_clique("pairs p*", ms, eps, out);
    }
    return out;
}

}  // namespace orbitropy
