#include "orbitropy/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iostream>
#include <numeric>

namespace orbitropy {

RateFit fit_rate(const CountSeries& series, int window) {
    if (window < 2) throw InputError("fit window must be >= 2");
    std::size_t exact = 0;
    while (exact < series.entries.size() && series.entries[exact].exact) ++exact;
    if (exact < static_cast<std::size_t>(window) + 2)
        throw InputError("fit_rate needs " + std::to_string(window + 2) + " exact entries, series has " +
                         std::to_string(exact));
    std::vector<double> xs, ys;
    for (std::size_t i = exact - window; i < exact; ++i) {
        const auto& e = series.entries[i];
        if (e.count < 1) throw InputError("counts must be >= 1");
        xs.push_back(e.n);
        ys.push_back(log_big(e.count));
    }
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    RateFit f;
    f.rate = sxy / sxx;
    double icpt = my - f.rate * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (icpt + f.rate * xs[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / xs.size());
    f.endpoint_rate = ys.back() / xs.back();
    f.n_lo = static_cast<int>(xs.front());
    f.n_hi = static_cast<int>(xs.back());
    return f;
}

std::string tag(Definition d) {
    switch (d) {
    case Definition::HSep: return "h_sep";
    case Definition::HSpan: return "h_span";
    case Definition::HAKEK: return "h_AKEK";
    case Definition::HPair: return "h_pair";
    case Definition::HZ: return "h_Z";
    case Definition::HP: return "h_p";
    case Definition::HM: return "h_m";
    case Definition::HI: return "h_i";
    case Definition::HPZ: return "h_p_Z";
    case Definition::HMZ: return "h_m_Z";
    case Definition::HIZ: return "h_i_Z";
    }
    return "?";
}

std::string csv_label(Definition d) {
    switch (d) {
    case Definition::HSep: return "h";
    case Definition::HAKEK: return "AKEK";
    default: return tag(d);
    }
}

Definition parse_definition(const std::string& s) {
    for (auto d : {Definition::HSep, Definition::HSpan, Definition::HAKEK, Definition::HPair, Definition::HZ,
                   Definition::HP, Definition::HM, Definition::HI, Definition::HPZ, Definition::HMZ, Definition::HIZ})
        if (tag(d) == s) return d;
    if (s == "h") return Definition::HSep;
    if (s == "AKEK") return Definition::HAKEK;
    throw InputError("unknown definition tag '" + s + "'");
}

bool needs_pairs(Definition d) {
    return d == Definition::HPair || d == Definition::HZ || d == Definition::HPZ || d == Definition::HMZ ||
           d == Definition::HIZ;
}

bool pointwise(Definition d) {
    return d == Definition::HP || d == Definition::HM || d == Definition::HPZ || d == Definition::HMZ;
}

std::vector<double> default_epsilons(const Space& space) {
    std::vector<double> out;
    double diam = space.diameter();
    for (int k = 1; k <= 7; ++k) out.push_back(diam / std::pow(2.0, k));
    return out;
}

InequalityResult check_le(std::string name, double lhs, double rhs, double tol) {
    InequalityResult r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = tol;
    r.pass = lhs <= rhs + tol;
    return r;
}

InequalityResult skipped_check(std::string name, std::string reason) {
    InequalityResult r;
    r.name = std::move(name);
    r.skipped = true;
    r.pass = true;
    r.reason = std::move(reason);
    return r;
}

namespace {

struct Job {
    EpsilonResult result;
    std::vector<LabeledSeries> series;
    bool exact = true;
    double bound = 0;
};

// Shared, ε-independent exact-engine data.
struct ExactData {
    std::vector<ItemMetric> global;                 // per n
    std::vector<std::vector<ItemMetric>> pointwise; // per x, per n
    int reach = 0;                                  // largest n with complete data
    bool truncated = false;
};

CountSeries make_series(double eps, Engine e) {
    CountSeries s;
    s.epsilon = eps;
    s.engine = e;
    return s;
}

void fit_into(Job& job, const CountSeries& s, int window) {
    try {
        job.result.fit = fit_rate(s, window);
        job.result.fitted = true;
    } catch (const InputError& e) {
        job.result.note = e.what();
    }
}

}  // namespace

EntropyEstimate estimate_entropy(const System& sys, Definition def, const EstimateConfig& cfg) {
    if (needs_pairs(def) && !sys.pairs) throw InputError(tag(def) + " requires a pair sequence");
    if ((def == Definition::HI || def == Definition::HIZ) && cfg.engine != Engine::Exact)
        throw InputError(tag(def) + " is only available with the exact engine");
    bool on_z = def == Definition::HZ || def == Definition::HPZ || def == Definition::HMZ || def == Definition::HIZ;
    std::optional<MapSequence> seq;
    if (on_z) seq = sys.pairs->psi();
    else if (sys.seq) seq = sys.seq;
    else if (sys.pairs) seq = sys.pairs->phi();
    else throw InputError("scenario has no map sequence");
    SpacePtr space = def == Definition::HPair ? sys.pairs->x_space() : seq->space();

    int nmax = cfg.n_max > 0 ? cfg.n_max : (cfg.engine == Engine::Symbolic ? 60 : 8);
    std::vector<double> eps_list = cfg.epsilons.empty() ? default_epsilons(*space) : cfg.epsilons;
    std::size_t branching = seq->max_branching();

    EntropyEstimate est;
    est.definition = def;
    est.window = cfg.window;
    est.engine = cfg.engine;

    ExactData ex;
    std::vector<OrbitSet> coin_sets;
    if (cfg.engine == Engine::Exact) {
        for (int n = 1; n <= nmax; ++n) {
            if (def == Definition::HI || def == Definition::HIZ) {
                std::vector<double> m;
                try {
                    m = branch_distance_matrix(*seq, n, cfg.cap);
                } catch (const CapError&) {
                    ex.truncated = true;
                    break;
                }
                ex.global.push_back(ItemMetric::matrix(space->size(), std::move(m)));
            } else if (pointwise(def)) {
                if (ex.pointwise.empty()) ex.pointwise.resize(space->size());
                bool ok = true;
                std::vector<ItemMetric> row;
                for (int x = 0; x < space->size() && ok; ++x) {
                    OrbitSet o = enumerate_orbits_from(*seq, n, x, cfg.cap);
                    if (o.truncated) ok = false;
                    else row.push_back(orbit_metric(o, space));
                }
                if (!ok) {
                    ex.truncated = true;
                    break;
                }
                for (int x = 0; x < space->size(); ++x) ex.pointwise[x].push_back(std::move(row[x]));
            } else if (def == Definition::HPair) {
                OrbitSet coin = enumerate_coincidences(*sys.pairs, n, cfg.cap);
                if (coin.truncated) {
                    ex.truncated = true;
                    break;
                }
                ex.global.push_back(pair_metric(*sys.pairs, coin));
            } else {
                OrbitSet o = enumerate_orbits(*seq, n, cfg.cap);
                if (o.truncated) {
                    ex.truncated = true;
                    break;
                }
                if (def == Definition::HAKEK) coin_sets.push_back(std::move(o));
                else ex.global.push_back(orbit_metric(o, space));
            }
            ex.reach = n;
        }
        if (ex.truncated)
            std::cerr << "[orbitropy] " << tag(def) << ": enumeration cap reached at n=" << ex.reach + 1 << "\n";
    }

    auto run_eps = [&](double eps) {
        Job job;
        job.result.epsilon = eps;
        Engine e = cfg.engine;
        std::string label = csv_label(def);
        if (e == Engine::Exact) {
            job.bound = std::log(static_cast<double>(branching) * space->size());
            if (pointwise(def)) {
                bool is_p = def == Definition::HP || def == Definition::HPZ;
                CountSeries sup = make_series(eps, e);
                double best = -1;
                for (int x = 0; x < static_cast<int>(ex.pointwise.size()); ++x) {
                    CountSeries sx = make_series(eps, e);
                    for (int n = 1; n <= ex.reach; ++n) {
                        BigInt c(greedy_separated(ex.pointwise[x][n - 1], eps).size());
                        sx.entries.push_back({n, c, true});
                        if (static_cast<int>(sup.entries.size()) < n) sup.entries.push_back({n, c, true});
                        else if (c > sup.entries[n - 1].count) sup.entries[n - 1].count = c;
                    }
                    if (is_p) {
                        Job tmp;
                        fit_into(tmp, sx, cfg.window);
                        if (tmp.result.fitted && tmp.result.fit.rate > best) {
                            best = tmp.result.fit.rate;
                            job.result = tmp.result;
                            job.result.epsilon = eps;
                        } else if (!tmp.result.fitted) {
                            job.result.note = tmp.result.note;
                        }
                        job.series.push_back({label + ":x=" + std::to_string(x), std::move(sx)});
                    }
                }
                if (!is_p) {
                    fit_into(job, sup, cfg.window);
                    job.series.push_back({label, std::move(sup)});
                }
            } else {
                CountSeries s = make_series(eps, e);
                for (int n = 1; n <= ex.reach; ++n) {
                    BigInt c;
                    if (def == Definition::HAKEK) {
                        auto part = partition(space, eps);
                        const OrbitSet& o = coin_sets[n - 1];
                        std::vector<std::vector<int>> words;
                        for (std::size_t i = 0; i < o.size(); ++i) {
                            auto t = o.tuple(i);
                            std::vector<int> w(t.size());
                            for (std::size_t j = 0; j < t.size(); ++j) w[j] = part.cell_of_point(t[j]);
                            words.push_back(std::move(w));
                        }
                        std::sort(words.begin(), words.end());
                        words.erase(std::unique(words.begin(), words.end()), words.end());
                        c = words.size();
                    } else if (def == Definition::HSpan) {
                        c = greedy_spanning(ex.global[n - 1], eps).size();
                    } else {
                        c = greedy_separated(ex.global[n - 1], eps).size();
                    }
                    s.entries.push_back({n, c, true});
                }
                fit_into(job, s, cfg.window);
                job.series.push_back({label, std::move(s)});
            }
            if (ex.truncated) job.exact = false;
            return job;
        }

        // symbolic engine: cells of mesh ε
        std::optional<CellPartition> part;
        try {
            part.emplace(partition(space, eps));
        } catch (const InputError& err) {
            job.result.note = err.what();
            return job;
        }
        job.bound = std::log(static_cast<double>(branching) * part->cell_count());
        if (pointwise(def)) {
            bool is_p = def == Definition::HP || def == Definition::HPZ;
            CountSeries sup = make_series(eps, e);
            double best = -1;
            int reach = nmax;
            std::vector<SymbolicSeries> per_x;
            for (int x = 0; x < space->size(); ++x) {
                per_x.push_back(pointwise_counts(*seq, *part, nmax, x, cfg.symbolic));
                reach = std::min<int>(reach, per_x.back().counts.size());
            }
            for (int x = 0; x < space->size(); ++x) {
                CountSeries sx = make_series(eps, e);
                for (int n = 1; n <= reach; ++n) {
                    const BigInt& c = per_x[x].counts[n - 1];
                    sx.entries.push_back({n, c, true});
                    if (static_cast<int>(sup.entries.size()) < n) sup.entries.push_back({n, c, true});
                    else if (c > sup.entries[n - 1].count) sup.entries[n - 1].count = c;
                }
                if (is_p) {
                    Job tmp;
                    fit_into(tmp, sx, cfg.window);
                    if (tmp.result.fitted && tmp.result.fit.rate > best) {
                        best = tmp.result.fit.rate;
                        job.result = tmp.result;
                        job.result.epsilon = eps;
                    } else if (!tmp.result.fitted) {
                        job.result.note = tmp.result.note;
                    }
                    job.series.push_back({csv_label(def) + ":x=" + std::to_string(x), std::move(sx)});
                }
            }
            if (!is_p) {
                fit_into(job, sup, cfg.window);
                job.series.push_back({csv_label(def), std::move(sup)});
            }
            return job;
        }
        CountSeries s = make_series(eps, e);
        if (def == Definition::HPair) {
            auto r = realized_counts(*seq, *part, nmax + 1, cfg.symbolic);
            for (int n = 1; n + 1 <= static_cast<int>(r.counts.size()); ++n) s.entries.push_back({n, r.counts[n], true});
        } else {
            auto r = realized_counts(*seq, *part, nmax, cfg.symbolic);
            for (int n = 1; n <= static_cast<int>(r.counts.size()); ++n) s.entries.push_back({n, r.counts[n - 1], true});
        }
        if (static_cast<int>(s.entries.size()) < nmax)
            std::cerr << "[orbitropy] " << tag(def) << " eps=" << eps << ": state cap reached, series stops at n="
                      << s.entries.size() << "\n";
        fit_into(job, s, cfg.window);
        job.series.push_back({csv_label(def), std::move(s)});
        return job;
    };

    std::vector<Job> jobs(eps_list.size());
    int workers = std::max(1, cfg.jobs);
    for (std::size_t start = 0; start < eps_list.size(); start += workers) {
        std::vector<std::future<Job>> fut;
        for (std::size_t i = start; i < std::min(eps_list.size(), start + workers); ++i)
            fut.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, run_eps, eps_list[i]));
        for (std::size_t i = 0; i < fut.size(); ++i) jobs[start + i] = fut[i].get();
    }

    bool any = false;
    double value = 0;
    for (auto& j : jobs) {
        est.per_epsilon.push_back(j.result);
        for (auto& s : j.series) est.series.push_back(std::move(s));
        if (!j.exact) est.exact = false;
        if (j.result.fitted) {
            if (!any || j.result.fit.rate > value) value = j.result.fit.rate;
            any = true;
            est.crude_bound = std::max(est.crude_bound, j.bound);
        } else {
            std::cerr << "[orbitropy] " << tag(def) << " eps=" << j.result.epsilon << " skipped: " << j.result.note
                      << "\n";
        }
    }
    if (!any) {
        int reached = 0;
        for (auto& s : est.series) reached = std::max<int>(reached, s.series.entries.size());
        throw CapError("no epsilon reached window+2 exact entries", tag(def), reached + 1);
    }
    est.value = std::max(0.0, value);
    if (est.value > est.crude_bound + 1e-9)
        std::cerr << "[orbitropy] warning: " << tag(def) << " estimate " << est.value << " exceeds the crude bound "
                  << est.crude_bound << "\n";
    return est;
}

DegreeBound degree_lower_bound(const DegreeBoundInput& input, int horizon) {
    if (horizon < 2) throw InputError("degree bound horizon must be >= 2");
    if (input.prefix.empty() && input.period.empty()) throw InputError("degree sequence is empty");
    for (long d : input.prefix)
        if (d == 0) throw InputError("degrees must be nonzero");
    for (long d : input.period)
        if (d == 0) throw InputError("degrees must be nonzero");
    auto deg = [&](std::size_t j) -> long {
        if (j < input.prefix.size()) return input.prefix[j];
        if (input.period.empty())
            throw InputError("degree sequence undefined at index " + std::to_string(j));
        return input.period[(j - input.prefix.size()) % input.period.size()];
    };
    DegreeBound out;
    int n_hi = horizon;
    if (input.period.empty()) n_hi = std::min<int>(horizon, input.prefix.size());
    int n_lo = std::max(1, n_hi / 2);
    BigInt prod = 1;
    double best = 0;
    for (int n = 1; n <= n_hi; ++n) {
        prod *= deg(n - 1);
        if (n < n_lo) continue;
        BigInt diff = abs(BigInt(1) - prod);
        if (diff == 0) continue;
        best = std::max(best, log_big(diff) / n);
    }
    out.horizon_value = std::max(0.0, best);
    if (input.period.empty()) {
        out.value = out.horizon_value;
        return out;
    }
    BigInt pp = 1;
    for (long d : input.period) pp *= d;
    BigInt ap = abs(pp);
    out.value = ap > 1 ? log_big(ap) / static_cast<double>(input.period.size()) : 0.0;
    return out;
}

}  // namespace orbitropy
