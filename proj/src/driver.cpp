#include "orbitropy/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace orbitropy {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::vector<Engine> engines_of(const std::string& s) {
    if (s == "exact") return {Engine::Exact};
    if (s == "symbolic") return {Engine::Symbolic};
    if (s == "both") return {Engine::Symbolic, Engine::Exact};
    throw InputError("unknown engine '" + s + "'");
}

struct Ctx {
    const Scenario& sc;
    Overrides ov;

    std::string engine_name() const { return ov.engine.value_or(sc.run.engine); }
    Engine primary() const { return engine_name() == "exact" ? Engine::Exact : Engine::Symbolic; }

    double tolerance(Engine e) const { return sc.run.tolerance.value_or(e == Engine::Exact ? 0.15 : 0.05); }

    EstimateConfig config(Engine e) const {
        EstimateConfig c;
        c.engine = e;
        c.epsilons = sc.run.epsilons;
        c.cap = ov.cap.value_or(sc.run.cap);
        c.symbolic.state_cap = sc.run.state_cap;
        c.jobs = ov.jobs.value_or(sc.run.jobs);
        c.window = sc.run.window;
        if (e == Engine::Symbolic || engine_name() == "exact") c.n_max = ov.n_max.value_or(sc.run.n_max);
        else c.n_max = ov.n_max.value_or(8);
        if (e == Engine::Exact) {
            int n = c.n_max > 0 ? c.n_max : 8;
            c.window = std::max(2, std::min(c.window, n - 2));
        }
        return c;
    }

    EstimateConfig config_for(Definition d) const {
        return config(d == Definition::HI || d == Definition::HIZ ? Engine::Exact : primary());
    }
};

System seq_system(const MapSequence& s) {
    System sys;
    sys.seq = s;
    return sys;
}

double param_real(const Json& p, const char* key, double dflt) { return p.contains(key) ? p.at(key).get<double>() : dflt; }
int param_int(const Json& p, const char* key, int dflt) { return p.contains(key) ? p.at(key).get<int>() : dflt; }

std::vector<double> param_eps(const Ctx& c, const Json& p, const Space& space) {
    if (p.contains("epsilons")) return p.at("epsilons").get<std::vector<double>>();
    if (!c.sc.run.epsilons.empty()) return c.sc.run.epsilons;
    return default_epsilons(space);
}

InequalityResult equality(std::string name, double lhs, double rhs, double tol) {
    InequalityResult r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = tol;
    r.pass = std::abs(lhs - rhs) <= tol + 1e-15;
    return r;
}

InequalityResult exact_count(std::string name, long violations, long compared) {
    InequalityResult r;
    r.name = std::move(name);
    r.lhs = double(violations);
    r.rhs = 0;
    r.tolerance = 0;
    r.pass = violations == 0 && compared > 0;
    if (compared == 0) r.reason = "no comparable instance";
    return r;
}

using Results = std::vector<InequalityResult>;

constexpr std::uint64_t kCheckBudget = 1'000'000;

std::optional<std::size_t> try_exact(const ItemMetric& m, double eps) {
    try {
        auto r = exact_max_separated(m, eps, kCheckBudget);
        if (r.exact) return r.size;
    } catch (const InputError&) {
    }
    return std::nullopt;
}

void check_expected(const Ctx& c, Results& out) {
    for (auto& ex : c.sc.expected) {
        std::string name = "expected " + ex.definition + (ex.value ? " = " + num(*ex.value) : " >= " + num(*ex.at_least));
        double got;
        if (ex.definition == "degree_bound") {
            if (!c.sc.degrees) {
                out.push_back(skipped_check(name, "scenario has no degrees"));
                continue;
            }
            got = degree_lower_bound(*c.sc.degrees, 60).value;
        } else {
            Definition d = parse_definition(ex.definition);
            if (needs_pairs(d) && !c.sc.system.pairs) {
                out.push_back(skipped_check(name, "missing pair sequence for " + tag(d)));
                continue;
            }
            got = estimate_entropy(c.sc.system, d, c.config_for(d)).value;
        }
        if (ex.value) {
            out.push_back(equality(name, got, *ex.value, ex.tolerance));
        } else {
            InequalityResult r = check_le(name, *ex.at_least, got, ex.tolerance);
            r.lhs = got;
            r.rhs = *ex.at_least;
            out.push_back(r);
        }
    }
}

void check_iterate(const Ctx& c, const Json& p, Results& out) {
    int k = param_int(p, "k", 2);
    std::string label = "iterate k=" + std::to_string(k);
    if (!c.sc.system.seq) {
        out.push_back(skipped_check(label, "needs a map sequence"));
        return;
    }
    Definition d = parse_definition(p.value("definition", std::string("h_sep")));
    auto cfg = c.config_for(d);
    double tol = param_real(p, "tolerance", c.tolerance(cfg.engine));
    double h = estimate_entropy(c.sc.system, d, cfg).value;
    double hk = estimate_entropy(seq_system(iterate(*c.sc.system.seq, k)), d, cfg).value;
    std::string t = tag(d), tk = t + "^[" + std::to_string(k) + "]";
    out.push_back(check_le(t + " <= " + tk, h, hk, tol));
    out.push_back(check_le(tk + " <= " + std::to_string(k) + "*" + t, hk, k * h, tol));
    if (p.contains("equality_tolerance"))
        out.push_back(equality("|" + tk + " - " + std::to_string(k) + "*" + t + "|", hk, k * h,
                               p.at("equality_tolerance").get<double>()));
}

void check_preimage(const Ctx& c, const Json& p, Results& out) {
    if (!c.sc.system.seq) {
        out.push_back(skipped_check("preimage", "needs a map sequence"));
        return;
    }
    const MapSequence& s = *c.sc.system.seq;
    Rounding rnd = c.sc.rounding == Rounding::Nearest ? Rounding::Nearest : Rounding::Exact;
    std::optional<MapSequence> inv;
    try {
        auto flip = [&](const std::vector<MultiMap>& ms) {
            std::vector<MultiMap> o;
            for (auto& m : ms) {
                if (!m.single_valued()) throw InputError("map is not single-valued");
                o.push_back(inverse(m, rnd));
            }
            return o;
        };
        inv.emplace(flip(s.prefix()), flip(s.period()));
    } catch (const InputError& e) {
        out.push_back(skipped_check("preimage", e.what()));
        return;
    }
    Definition d = parse_definition(p.value("definition", std::string("h_sep")));
    auto cfg = c.config_for(d);
    double tol = param_real(p, "tolerance", c.tolerance(cfg.engine));
    double h = estimate_entropy(c.sc.system, d, cfg).value;
    double hi = estimate_entropy(seq_system(*inv), d, cfg).value;
    out.push_back(check_le("h(r) <= h(r^-1)", h, hi, tol));
    out.push_back(check_le("h(r^-1) <= 2*h(r)", hi, 2 * h, tol));
}

struct Sets {
    SpacePtr space;
    std::optional<MapSequence> seq;
};

Sets chain_sets(const Ctx& c, bool coincidence) {
    if (coincidence) return {c.sc.system.pairs->z_space(), c.sc.system.pairs->psi()};
    if (c.sc.system.seq) return {c.sc.x, *c.sc.system.seq};
    return {c.sc.x, c.sc.system.pairs->phi()};
}

void check_pointwise_chain(const Ctx& c, const Json& p, Results& out) {
    bool coin = p.value("coincidence", false);
    if (coin && !c.sc.system.pairs) {
        out.push_back(skipped_check("pointwise chain", "missing pair sequence"));
        return;
    }
    Sets s = chain_sets(c, coin);
    int nmax = param_int(p, "n_max", 8);
    auto eps = param_eps(c, p, *s.space);
    std::size_t cap = c.ov.cap.value_or(c.sc.run.cap);
    std::string sfx = coin ? "_Z" : "";

    std::vector<long> bad(eps.size()), compared(eps.size()), inexact(eps.size());
    for (int n = 1; n <= nmax; ++n) {
        OrbitSet all = enumerate_orbits(*s.seq, n, cap);
        if (all.truncated) break;
        ItemMetric gm = orbit_metric(all, s.space);
        std::vector<ItemMetric> px;
        for (int x = 0; x < s.space->size(); ++x)
            px.push_back(orbit_metric(enumerate_orbits_from(*s.seq, n, x, cap), s.space));
        for (std::size_t i = 0; i < eps.size(); ++i) {
            double e = eps[i];
            std::size_t sup = 0;
            bool ok = true;
            for (std::size_t x = 0; x < px.size() && ok; ++x) {
                auto v = try_exact(px[x], e);
                ok = v.has_value();
                if (ok) sup = std::max(sup, *v);
            }
            // any separated set bounds s from below; the exact maximum is only needed when that is not enough
            if (ok && sup > greedy_separated(gm, e).size()) {
                auto g = try_exact(gm, e);
                if (!g) ok = false;
                else if (sup > *g) ++bad[i];
            }
            if (ok) ++compared[i];
            else ++inexact[i];
        }
    }
    for (std::size_t i = 0; i < eps.size(); ++i) {
        auto r = exact_count("s_p" + sfx + "(x) <= sup_x <= s" + sfx + " at eps=" + num(eps[i]) + ", n<=" +
                                 std::to_string(nmax),
                             bad[i], compared[i]);
        if (inexact[i]) r.reason = std::to_string(inexact[i]) + " n values beyond the clique limit";
        out.push_back(r);
    }

    EstimateConfig cfg = c.config(Engine::Exact);
    cfg.n_max = nmax;
    cfg.epsilons = eps;
    cfg.window = param_int(p, "window", std::max(2, std::min(c.sc.run.window, nmax - 2)));
    double tol = param_real(p, "tolerance", 0.15);
    auto val = [&](Definition d) { return estimate_entropy(c.sc.system, d, cfg).value; };
    double hp = val(coin ? Definition::HPZ : Definition::HP);
    double hm = val(coin ? Definition::HMZ : Definition::HM);
    double h = val(coin ? Definition::HZ : Definition::HSep);
    double hi = val(coin ? Definition::HIZ : Definition::HI);
    std::string hs = coin ? "h_Z" : "h";
    out.push_back(check_le("h_p" + sfx + " <= h_m" + sfx, hp, hm, tol));
    out.push_back(check_le("h_m" + sfx + " <= " + hs, hm, h, tol));
    out.push_back(check_le(hs + " <= h_m" + sfx + " + h_i" + sfx, h, hm + hi, tol));
}

void check_degeneracy(const Ctx& c, const Json& p, Results& out) {
    if (!c.sc.system.seq) {
        out.push_back(skipped_check("single-valued degeneracy", "needs a map sequence"));
        return;
    }
    if (c.sc.system.seq->max_branching() != 1) {
        out.push_back(skipped_check("single-valued degeneracy", "sequence is multivalued"));
        return;
    }
    EstimateConfig cfg = c.config(Engine::Exact);
    cfg.n_max = param_int(p, "n_max", 8);
    if (p.contains("epsilons")) cfg.epsilons = p.at("epsilons").get<std::vector<double>>();
    cfg.window = param_int(p, "window", std::max(2, std::min(c.sc.run.window, cfg.n_max - 2)));
    double tol = param_real(p, "tolerance", 0.1);
    auto hp = estimate_entropy(c.sc.system, Definition::HP, cfg);
    auto hm = estimate_entropy(c.sc.system, Definition::HM, cfg);
    long not_one = 0, total = 0;
    for (auto* est : {&hp, &hm})
        for (auto& ls : est->series)
            for (auto& e : ls.series.entries) {
                ++total;
                not_one += e.count != 1;
            }
    out.push_back(exact_count("pointwise counts == 1", not_one, total));
    out.push_back(equality("h_p == 0", hp.value, 0, 0));
    out.push_back(equality("h_m == 0", hm.value, 0, 0));
    double h = estimate_entropy(c.sc.system, Definition::HSep, cfg).value;
    double hi = estimate_entropy(c.sc.system, Definition::HI, cfg).value;
    out.push_back(equality("|h_i - h|", hi, h, tol));
}

void check_orbit_identity(const Ctx& c, const Json& p, Results& out) {
    if (!c.sc.system.pairs) {
        out.push_back(skipped_check("orbit_identity", "missing pair sequence"));
        return;
    }
    const auto& pairs = *c.sc.system.pairs;
    int nmax = param_int(p, "n_max", 6);
    auto eps = param_eps(c, p, *c.sc.x);
    std::size_t cap = c.ov.cap.value_or(c.sc.run.cap);
    std::vector<ItemMetric> orb, coin;
    for (int n = 1; n <= nmax; ++n) {
        auto w = orbit_to_coincidence_projection(pairs, n, cap);
        if (w.coincidences.truncated || w.orbits.truncated) break;
        orb.push_back(orbit_metric(w.orbits, c.sc.x));
        coin.push_back(pair_metric(pairs, w.coincidences));
    }
    for (double e : eps) {
        long bad = 0, compared = 0, inexact = 0;
        for (std::size_t i = 0; i < orb.size(); ++i) {
            auto a = try_exact(orb[i], e);
            auto b = try_exact(coin[i], e);
            if (!a || !b) {
                ++inexact;
                continue;
            }
            ++compared;
            bad += *a != *b;
        }
        auto r = exact_count("s(phi,n+1) == s((r,q),n) at eps=" + num(e) + ", n<=" + std::to_string(orb.size()),
                             bad + inexact, compared);
        if (inexact) r.reason = std::to_string(inexact) + " n values beyond the clique limit";
        out.push_back(r);
    }
}

void check_sandwich(const Ctx& c, const Json& p, Results& out) {
    bool coin = p.value("coincidence", false);
    if (coin && !c.sc.system.pairs) {
        out.push_back(skipped_check("sandwich", "missing pair sequence"));
        return;
    }
    Sets s = chain_sets(c, coin);
    int nmax = param_int(p, "n_max", 6);
    auto eps = param_eps(c, p, *s.space);
    std::size_t cap = c.ov.cap.value_or(c.sc.run.cap);
    std::vector<std::pair<std::string, std::vector<ItemMetric>>> families;
    if (coin) {
        std::vector<ItemMetric> z, star;
        for (int n = 1; n <= nmax; ++n) {
            OrbitSet o = enumerate_coincidences(*c.sc.system.pairs, n, cap);
            if (o.truncated) break;
            z.push_back(orbit_metric(o, s.space));
            star.push_back(pair_metric(*c.sc.system.pairs, o));
        }
        families.emplace_back(" on Z", std::move(z));
        families.emplace_back(" under p*", std::move(star));
    } else {
        std::vector<ItemMetric> ms;
        for (int n = 1; n <= nmax; ++n) {
            OrbitSet o = enumerate_orbits(*s.seq, n, cap);
            if (o.truncated) break;
            ms.push_back(orbit_metric(o, s.space));
        }
        families.emplace_back("", std::move(ms));
    }
    for (auto& [where, ms] : families)
        for (double e : eps) {
            long bad_sep = 0, bad_span = 0, compared = 0, skipped = 0;
            for (auto& m : ms) {
                auto hi = try_exact(m, e);
                auto lo = try_exact(m, 2 * e);
                if (!hi || !lo) {
                    ++skipped;
                    continue;
                }
                ++compared;
                auto g = greedy_separated(m, e);
                auto sp = greedy_spanning(m, e);
                if (g.size() < *lo || g.size() > *hi || !is_spanning(m, g, e)) ++bad_sep;
                if (sp.size() < *lo || sp.size() > *hi || !is_spanning(m, sp, e)) ++bad_span;
            }
            std::string at = where + " at eps=" + num(e) + ", " + std::to_string(compared) + " instances";
            if (skipped) at += " (" + std::to_string(skipped) + " beyond the clique limit)";
            out.push_back(exact_count("s(2eps) <= greedy_separated <= s(eps)" + at, bad_sep, compared));
            out.push_back(exact_count("s(2eps) <= greedy_spanning <= s(eps)" + at, bad_span, compared));
        }
}

void check_sep_akek(const Ctx& c, const Json& p, Results& out) {
    Engine e = c.primary();
    if (p.contains("engine")) e = p.at("engine").get<std::string>() == "exact" ? Engine::Exact : Engine::Symbolic;
    EstimateConfig cfg = c.config(e);
    if (p.contains("n_max")) cfg.n_max = p.at("n_max").get<int>();
    if (p.contains("epsilons")) cfg.epsilons = p.at("epsilons").get<std::vector<double>>();
    if (p.contains("window")) cfg.window = p.at("window").get<int>();
    double tol = param_real(p, "tolerance", 0.05);
    if (e == Engine::Exact && !p.contains("window")) cfg.window = std::max(2, std::min(cfg.window, cfg.n_max - 2));
    double h = estimate_entropy(c.sc.system, Definition::HSep, cfg).value;
    double a = estimate_entropy(c.sc.system, Definition::HAKEK, cfg).value;
    out.push_back(equality("|h_sep - h_AKEK|", h, a, tol));
}

void check_degree_bound(const Ctx& c, const Json& p, Results& out) {
    if (!c.sc.degrees) {
        out.push_back(skipped_check("degree bound", "scenario has no degrees"));
        return;
    }
    auto b = degree_lower_bound(*c.sc.degrees, param_int(p, "horizon", 60));
    Definition d = c.sc.system.pairs ? Definition::HPair : Definition::HSep;
    auto cfg = c.config_for(d);
    double tol = param_real(p, "tolerance", c.tolerance(cfg.engine));
    double h = estimate_entropy(c.sc.system, d, cfg).value;
    out.push_back(check_le("degree bound <= " + tag(d), b.value, h, tol));
}

void check_commutativity(const Ctx& c, const CheckSpec& cs, Results& out) {
    const Json& p = cs.params;
    if (!p.contains("q") || !p.contains("r")) throw SpecError(cs.pointer, "strong_commutativity needs q and r");
    MultiMap q = parse_map(c.sc, p.at("q"), cs.pointer + "/q", c.sc.x, c.sc.x);
    MultiMap r = parse_map(c.sc, p.at("r"), cs.pointer + "/r", c.sc.x, c.sc.x);
    bool expect = p.value("expect", true);
    bool got = check_strong_commutativity(q, r);
    InequalityResult res;
    res.name = "strong commutativity " + p.at("q").dump() + " / " + p.at("r").dump();
    res.lhs = got;
    res.rhs = expect;
    res.pass = got == expect;
    out.push_back(res);
}

void check_semi(const Ctx& c, const CheckSpec& cs, Results& out) {
    const Json& p = cs.params;
    if (!c.sc.system.seq) {
        out.push_back(skipped_check("semi-conjugacy", "needs a map sequence"));
        return;
    }
    if (!p.contains("psi") || !p.contains("factor")) throw SpecError(cs.pointer, "semi_conjugacy needs psi and factor");
    MapSequence psi = parse_sequence(c.sc, p.at("psi"), cs.pointer + "/psi");
    std::vector<MultiMap> f;
    const Json& fs = p.at("factor");
    if (fs.is_array())
        for (std::size_t i = 0; i < fs.size(); ++i)
            f.push_back(parse_map(c.sc, fs[i], cs.pointer + "/factor/" + std::to_string(i), c.sc.x, c.sc.x));
    else f.push_back(parse_map(c.sc, fs, cs.pointer + "/factor", c.sc.x, c.sc.x));
    bool ok = check_semi_conjugacy(*c.sc.system.seq, psi, f, param_int(p, "horizon", 20));
    InequalityResult r;
    r.name = "psi is semi-conjugate to phi";
    r.lhs = ok;
    r.rhs = 1;
    r.pass = ok;
    out.push_back(r);
    Definition d = parse_definition(p.value("definition", std::string("h_sep")));
    auto cfg = c.config_for(d);
    double tol = param_real(p, "tolerance", c.tolerance(cfg.engine));
    out.push_back(check_le(tag(d) + "(psi) <= " + tag(d) + "(phi)", estimate_entropy(seq_system(psi), d, cfg).value,
                           estimate_entropy(c.sc.system, d, cfg).value, tol));
}

bool contained(const MultiMap& a, const MultiMap& b) {
    if (a.domain().size() != b.domain().size()) return false;
    for (int x = 0; x < a.domain().size(); ++x)
        for (int y : a.image(x))
            if (std::find(b.image(x).begin(), b.image(x).end(), y) == b.image(x).end()) return false;
    return true;
}

void check_monotone(const Ctx& c, const CheckSpec& cs, Results& out) {
    const Json& p = cs.params;
    if (!c.sc.system.seq) {
        out.push_back(skipped_check("monotone", "needs a map sequence"));
        return;
    }
    if (!p.contains("psi")) throw SpecError(cs.pointer, "monotone needs psi");
    MapSequence psi = parse_sequence(c.sc, p.at("psi"), cs.pointer + "/psi");
    const MapSequence& phi = *c.sc.system.seq;
    std::size_t steps = std::max(psi.distinct_steps(), phi.distinct_steps()) * 2;
    bool inside = true;
    for (std::size_t j = 0; j < steps; ++j) inside = inside && contained(psi.at(j), phi.at(j));
    InequalityResult r;
    r.name = "psi_j subset of phi_j";
    r.lhs = inside;
    r.rhs = 1;
    r.pass = inside;
    out.push_back(r);
    int nmax = param_int(p, "n_max", 6);
    auto eps = param_eps(c, p, *c.sc.x);
    std::size_t cap = c.ov.cap.value_or(c.sc.run.cap);
    for (double e : eps) {
        long bad = 0, compared = 0;
        auto part = partition(c.sc.x, e);
        for (int n = 1; n <= nmax; ++n) {
            OrbitSet a = enumerate_orbits(psi, n, cap), b = enumerate_orbits(phi, n, cap);
            if (a.truncated || b.truncated) break;
            auto sa = try_exact(orbit_metric(a, c.sc.x), e);
            auto sb = try_exact(orbit_metric(b, c.sc.x), e);
            if (sa && sb) {
                ++compared;
                bad += *sa > *sb;
            }
            ++compared;
            bad += grid_orbit_words(psi, part, n, cap) > grid_orbit_words(phi, part, n, cap);
        }
        out.push_back(exact_count("psi counts <= phi counts at eps=" + num(e), bad, compared));
    }
}

}  // namespace

RunOutput run_scenario(const Scenario& sc, const Overrides& ov) {
    Ctx c{sc, ov};
    RunOutput out;
    std::vector<Definition> defs = sc.run.definitions;
    if (defs.empty()) {
        if (sc.system.seq) defs = {Definition::HSep};
        else defs = {Definition::HPair, Definition::HZ};
    }
    for (Definition d : defs) {
        if (needs_pairs(d) && !sc.system.pairs)
            throw InputError(sc.where("/run/definitions") + ": " + tag(d) + " requires a pair sequence");
        for (Engine e : engines_of(c.engine_name())) {
            if ((d == Definition::HI || d == Definition::HIZ) && e == Engine::Symbolic) {
                if (c.engine_name() == "both") continue;
                e = Engine::Exact;
            }
            out.estimates.push_back(estimate_entropy(sc.system, d, c.config(e)));
        }
    }
    if (sc.degrees) out.degree_bound = degree_lower_bound(*sc.degrees, 60);
    return out;
}

std::vector<InequalityResult> verify_scenario(const Scenario& sc, const Overrides& ov) {
    Ctx c{sc, ov};
    Results out;
    check_expected(c, out);
    for (auto& cs : sc.checks) {
        try {
            const Json& p = cs.params;
            if (cs.kind == "iterate") check_iterate(c, p, out);
            else if (cs.kind == "preimage") check_preimage(c, p, out);
            else if (cs.kind == "pointwise_chain") check_pointwise_chain(c, p, out);
            else if (cs.kind == "degeneracy") check_degeneracy(c, p, out);
            else if (cs.kind == "orbit_identity") check_orbit_identity(c, p, out);
            else if (cs.kind == "sandwich") check_sandwich(c, p, out);
            else if (cs.kind == "sep_akek") check_sep_akek(c, p, out);
            else if (cs.kind == "degree_bound") check_degree_bound(c, p, out);
            else if (cs.kind == "strong_commutativity") check_commutativity(c, cs, out);
            else if (cs.kind == "semi_conjugacy") check_semi(c, cs, out);
            else if (cs.kind == "monotone") check_monotone(c, cs, out);
        } catch (const SpecError& e) {
            throw InputError(sc.where(e.pointer) + ": " + e.what() + " (at " + e.pointer + ")");
        } catch (const Json::exception& e) {
            throw InputError(sc.where(cs.pointer) + ": bad check parameter: " + e.what() + " (at " + cs.pointer + ")");
        }
    }
    return out;
}

}  // namespace orbitropy
