#include "orbitropy/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace orbitropy {

namespace {

using Keys = std::initializer_list<const char*>;

void only(const Json& j, const std::string& ptr, Keys keys) {
    if (!j.is_object()) throw SpecError(ptr, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        if (!ok) throw SpecError(ptr + "/" + it.key(), "unknown field '" + it.key() + "'");
    }
}

const Json& need(const Json& j, const std::string& ptr, const char* key) {
    if (!j.contains(key)) throw SpecError(ptr, std::string("missing field '") + key + "'");
    return j.at(key);
}

long as_int(const Json& j, const std::string& ptr) {
    if (!j.is_number_integer()) throw SpecError(ptr, "expected an integer");
    return j.get<long>();
}

double as_real(const Json& j, const std::string& ptr) {
    if (!j.is_number()) throw SpecError(ptr, "expected a number");
    return j.get<double>();
}

std::string as_string(const Json& j, const std::string& ptr) {
    if (!j.is_string()) throw SpecError(ptr, "expected a string");
    return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& ptr) {
    if (!j.is_array()) throw SpecError(ptr, "expected an array");
    return j;
}

SpacePtr parse_space(const Json& j, const std::string& ptr) {
    only(j, ptr, {"kind", "grid_size", "distance_matrix"});
    std::string kind = as_string(need(j, ptr, "kind"), ptr + "/kind");
    try {
        if (kind == "interval" || kind == "circle") {
            if (j.contains("distance_matrix")) throw SpecError(ptr + "/distance_matrix", "only finite spaces take a matrix");
            long m = as_int(need(j, ptr, "grid_size"), ptr + "/grid_size");
            if (m < 1 || m > 1'000'000) throw SpecError(ptr + "/grid_size", "grid_size out of range");
            return kind == "interval" ? Space::interval(int(m)) : Space::circle(int(m));
        }
        if (kind == "finite") {
            std::vector<std::vector<double>> mat;
            if (j.contains("distance_matrix")) {
                if (j.contains("grid_size")) throw SpecError(ptr + "/grid_size", "give grid_size or distance_matrix, not both");
                const Json& rows = as_array(j.at("distance_matrix"), ptr + "/distance_matrix");
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    std::string rp = ptr + "/distance_matrix/" + std::to_string(i);
                    std::vector<double> row;
                    for (std::size_t k = 0; k < as_array(rows[i], rp).size(); ++k)
                        row.push_back(as_real(rows[i][k], rp + "/" + std::to_string(k)));
                    mat.push_back(std::move(row));
                }
            } else {
                long n = as_int(need(j, ptr, "grid_size"), ptr + "/grid_size");
                if (n < 1 || n > 100'000) throw SpecError(ptr + "/grid_size", "grid_size out of range");
                mat.assign(n, std::vector<double>(n, 1.0));
                for (long i = 0; i < n; ++i) mat[i][i] = 0;
            }
            return Space::finite(std::move(mat));
        }
    } catch (const SpecError&) {
        throw;
    } catch (const InputError& e) {
        throw SpecError(ptr, e.what());
    }
    throw SpecError(ptr + "/kind", "unknown space kind '" + kind + "'");
}

SpacePtr pick(const Scenario& sc, const Json& j, const std::string& ptr, const char* key, SpacePtr dflt) {
    if (!j.contains(key)) return dflt;
    std::string s = as_string(j.at(key), ptr + "/" + key);
    if (s == "X") return sc.x;
    if (s == "Z") {
        if (!sc.z) throw SpecError(ptr + "/" + key, "no z_space declared");
        return sc.z;
    }
    throw SpecError(ptr + "/" + key, "expected \"X\" or \"Z\"");
}

int point_index(const Space& s, const Json& j, const std::string& ptr) {
    long i = as_int(j, ptr);
    if (i < 0 || i >= s.size()) throw SpecError(ptr, "point index out of range for " + s.describe());
    return int(i);
}

FormulaPtr parse_formula(const Scenario& sc, const Json& j, const std::string& ptr, SpacePtr from, SpacePtr to) {
    if (!j.is_object()) throw SpecError(ptr, "expected a map object");
    std::string kind = as_string(need(j, ptr, "kind"), ptr + "/kind");
    from = pick(sc, j, ptr, "from", from);
    to = pick(sc, j, ptr, "to", to);
    auto grid_only = [&] {
        if (!from->is_grid() || !to->is_grid()) throw SpecError(ptr, kind + " maps need interval or circle spaces");
    };
    if (kind == "tent") {
        only(j, ptr, {"kind", "k", "from", "to"});
        grid_only();
        long k = as_int(need(j, ptr, "k"), ptr + "/k");
        if (k < 1) throw SpecError(ptr + "/k", "k must be >= 1");
        if (sc.rounding != Rounding::Nearest && from->kind() == SpaceKind::Interval && from->grid_size() % k != 0)
            throw SpecError(ptr + "/k", "T_" + std::to_string(k) + " needs grid_size divisible by k under exact rounding");
        return tent_formula(from, to, int(k));
    }
    if (kind == "degree") {
        only(j, ptr, {"kind", "d", "from", "to"});
        grid_only();
        if (from->kind() != SpaceKind::Circle || to->kind() != SpaceKind::Circle)
            throw SpecError(ptr, "degree maps need circle spaces");
        return degree_formula(from, to, int(as_int(need(j, ptr, "d"), ptr + "/d")));
    }
    if (kind == "identity") {
        only(j, ptr, {"kind", "from", "to"});
        return identity_formula(from, to);
    }
    if (kind == "constant") {
        only(j, ptr, {"kind", "value", "from", "to"});
        const Json& v = need(j, ptr, "value");
        if (!to->is_grid()) return constant_formula(from, to, Rational(point_index(*to, v, ptr + "/value")));
        double x = as_real(v, ptr + "/value");
        double hi = to->kind() == SpaceKind::Interval ? 1.0 : 1.0 - 1e-15;
        if (x < 0 || x > hi) throw SpecError(ptr + "/value", "constant outside the space");
        return constant_formula(from, to, to_rational(x));
    }
    if (kind == "table") {
        only(j, ptr, {"kind", "images", "from", "to"});
        const Json& imgs = as_array(need(j, ptr, "images"), ptr + "/images");
        if (int(imgs.size()) != from->size())
            throw SpecError(ptr + "/images", "table needs " + std::to_string(from->size()) + " rows, got " +
                                                 std::to_string(imgs.size()));
        Table t(imgs.size());
        for (std::size_t i = 0; i < imgs.size(); ++i) {
            std::string rp = ptr + "/images/" + std::to_string(i);
            if (imgs[i].is_array()) {
                if (imgs[i].empty()) throw SpecError(rp, "empty image");
                for (std::size_t k = 0; k < imgs[i].size(); ++k)
                    t[i].push_back(point_index(*to, imgs[i][k], rp + "/" + std::to_string(k)));
            } else {
                t[i].push_back(point_index(*to, imgs[i], rp));
            }
        }
        try {
            return table_map(from, to, std::move(t)).formula();
        } catch (const InputError& e) {
            throw SpecError(ptr, e.what());
        }
    }
    if (kind == "inverse") {
        only(j, ptr, {"kind", "of", "from", "to"});
        return inverse_formula(parse_formula(sc, need(j, ptr, "of"), ptr + "/of", to, from));
    }
    if (kind == "compose") {
        only(j, ptr, {"kind", "maps", "from", "to"});
        const Json& maps = as_array(need(j, ptr, "maps"), ptr + "/maps");
        if (maps.empty()) throw SpecError(ptr + "/maps", "compose needs at least one map");
        std::vector<FormulaPtr> parts;
        for (std::size_t i = 0; i < maps.size(); ++i) {
            SpacePtr f = i + 1 == maps.size() ? from : sc.x;
            SpacePtr t = i == 0 ? to : sc.x;
            parts.push_back(parse_formula(sc, maps[i], ptr + "/maps/" + std::to_string(i), f, t));
        }
        for (std::size_t i = 0; i + 1 < parts.size(); ++i)
            if (!parts[i]->domain->same_as(*parts[i + 1]->codomain))
                throw SpecError(ptr + "/maps/" + std::to_string(i), "composed spaces do not match");
        return compose_formula(std::move(parts));
    }
    if (kind == "pair") {
        only(j, ptr, {"kind", "r", "q", "from", "to"});
        SpacePtr zs = sc.z ? sc.z : sc.x;
        auto r = parse_formula(sc, need(j, ptr, "r"), ptr + "/r", zs, from);
        auto q = parse_formula(sc, need(j, ptr, "q"), ptr + "/q", zs, to);
        return pair_formula(r, q);
    }
    throw SpecError(ptr + "/kind", "unknown map kind '" + kind + "'");
}

Rounding parse_rounding(const Json& j, const std::string& ptr) {
    std::string s = as_string(j, ptr);
    if (s == "exact") return Rounding::Exact;
    if (s == "nearest") return Rounding::Nearest;
    throw SpecError(ptr, "rounding must be \"exact\" or \"nearest\"");
}

std::vector<double> parse_reals(const Json& j, const std::string& ptr, bool positive) {
    std::vector<double> v;
    for (std::size_t i = 0; i < as_array(j, ptr).size(); ++i) {
        double x = as_real(j[i], ptr + "/" + std::to_string(i));
        if (positive && !(x > 0)) throw SpecError(ptr + "/" + std::to_string(i), "expected a positive number");
        v.push_back(x);
    }
    return v;
}

std::vector<long> parse_ints(const Json& j, const std::string& ptr) {
    std::vector<long> v;
    for (std::size_t i = 0; i < as_array(j, ptr).size(); ++i) v.push_back(as_int(j[i], ptr + "/" + std::to_string(i)));
    return v;
}

SelectedPairSequence parse_pairs(const Scenario& sc, const Json& j, const std::string& ptr) {
    only(j, ptr, {"prefix", "period"});
    SpacePtr zs = sc.z ? sc.z : sc.x;
    auto list = [&](const char* key) {
        std::vector<SelectedPair> out;
        if (!j.contains(key)) return out;
        std::string lp = ptr + "/" + key;
        const Json& arr = as_array(j.at(key), lp);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string ip = lp + "/" + std::to_string(i);
            only(arr[i], ip, {"r", "q"});
            out.push_back({parse_map(sc, need(arr[i], ip, "r"), ip + "/r", zs, sc.x),
                           parse_map(sc, need(arr[i], ip, "q"), ip + "/q", zs, sc.x)});
        }
        return out;
    };
    auto pre = list("prefix");
    auto per = list("period");
    try {
        return SelectedPairSequence(std::move(pre), std::move(per));
    } catch (const InputError& e) {
        throw SpecError(ptr, e.what());
    }
}

RunSpec parse_run(const Json& j, const std::string& ptr) {
    only(j, ptr, {"definitions", "epsilons", "n_max", "engine", "cap", "state_cap", "window", "tolerance", "jobs"});
    RunSpec r;
    if (j.contains("definitions")) {
        const Json& d = as_array(j.at("definitions"), ptr + "/definitions");
        for (std::size_t i = 0; i < d.size(); ++i) {
            std::string dp = ptr + "/definitions/" + std::to_string(i);
            try {
                r.definitions.push_back(parse_definition(as_string(d[i], dp)));
            } catch (const SpecError&) {
                throw;
            } catch (const InputError& e) {
                throw SpecError(dp, e.what());
            }
        }
    }
    if (j.contains("epsilons")) r.epsilons = parse_reals(j.at("epsilons"), ptr + "/epsilons", true);
    if (j.contains("n_max")) {
        r.n_max = int(as_int(j.at("n_max"), ptr + "/n_max"));
        if (r.n_max < 1) throw SpecError(ptr + "/n_max", "n_max must be >= 1");
    }
    if (j.contains("engine")) {
        r.engine = as_string(j.at("engine"), ptr + "/engine");
        if (r.engine != "exact" && r.engine != "symbolic" && r.engine != "both")
            throw SpecError(ptr + "/engine", "engine must be exact, symbolic or both");
    }
    if (j.contains("cap")) r.cap = std::size_t(std::max(1L, as_int(j.at("cap"), ptr + "/cap")));
    if (j.contains("state_cap")) r.state_cap = std::size_t(std::max(1L, as_int(j.at("state_cap"), ptr + "/state_cap")));
    if (j.contains("window")) {
        r.window = int(as_int(j.at("window"), ptr + "/window"));
        if (r.window < 2) throw SpecError(ptr + "/window", "window must be >= 2");
    }
    if (j.contains("tolerance")) r.tolerance = as_real(j.at("tolerance"), ptr + "/tolerance");
    if (j.contains("jobs")) r.jobs = int(std::max(1L, as_int(j.at("jobs"), ptr + "/jobs")));
    return r;
}

const std::map<std::string, std::set<std::string>>& check_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"iterate", {"k", "definition", "tolerance", "equality_tolerance"}},
        {"preimage", {"definition", "tolerance"}},
        {"pointwise_chain", {"coincidence", "tolerance", "n_max", "epsilons", "window"}},
        {"orbit_identity", {"n_max", "epsilons"}},
        {"semi_conjugacy", {"psi", "factor", "horizon", "definition", "tolerance"}},
        {"degree_bound", {"horizon", "tolerance"}},
        {"sep_akek", {"tolerance", "n_max", "epsilons", "window", "engine"}},
        {"strong_commutativity", {"q", "r", "expect"}},
        {"sandwich", {"n_max", "epsilons", "coincidence"}},
        {"monotone", {"psi", "n_max", "epsilons"}},
        {"degeneracy", {"tolerance", "n_max", "epsilons", "window"}},
    };
    return keys;
}

}  // namespace

std::string Scenario::where(const std::string& pointer) const {
    return path + ":" + std::to_string(lines.line_of(pointer));
}

MultiMap parse_map(const Scenario& sc, const Json& j, const std::string& pointer, SpacePtr from, SpacePtr to) {
    auto f = parse_formula(sc, j, pointer, std::move(from), std::move(to));
    try {
        if (f->kind == Formula::Kind::Table) return MultiMap(f->domain, f->codomain, *f->table, f);
        return MultiMap::sample(f, sc.rounding == Rounding::Nearest ? Rounding::Nearest : Rounding::Exact);
    } catch (const SpecError&) {
        throw;
    } catch (const InputError& e) {
        throw SpecError(pointer, e.what());
    }
}

MapSequence parse_sequence(const Scenario& sc, const Json& j, const std::string& pointer) {
    only(j, pointer, {"prefix", "period"});
    auto list = [&](const char* key) {
        std::vector<MultiMap> out;
        if (!j.contains(key)) return out;
        std::string lp = pointer + "/" + key;
        const Json& arr = as_array(j.at(key), lp);
        for (std::size_t i = 0; i < arr.size(); ++i)
            out.push_back(parse_map(sc, arr[i], lp + "/" + std::to_string(i), sc.x, sc.x));
        return out;
    };
    auto pre = list("prefix");
    auto per = list("period");
    if (pre.empty() && per.empty()) throw SpecError(pointer, "sequence needs a prefix or a period");
    try {
        return MapSequence(std::move(pre), std::move(per));
    } catch (const InputError& e) {
        throw SpecError(pointer, e.what());
    }
}

Scenario parse_scenario(const std::string& text, const std::string& path) {
    Scenario sc;
    sc.path = path;
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t off = e.byte == 0 ? 0 : e.byte - 1;
        int line = 1;
        for (std::size_t i = 0; i < off && i < text.size(); ++i) line += text[i] == '\n';
        throw InputError(path + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
    }
    sc.lines = LineIndex(text);
    try {
        only(j, "", {"schema", "id", "description", "space", "z_space", "rounding", "sequence", "pairs", "degrees",
                     "run", "expected", "checks", "oracle"});
        std::string schema = as_string(need(j, "", "schema"), "/schema");
        if (schema != kSchema) throw SpecError("/schema", "unsupported schema '" + schema + "', expected " + kSchema);
        sc.id = as_string(need(j, "", "id"), "/id");
        if (sc.id.empty() || sc.id.find_first_of(",\"\n") != std::string::npos)
            throw SpecError("/id", "id must be nonempty without commas or quotes");
        if (j.contains("description")) as_string(j.at("description"), "/description");
        sc.x = parse_space(need(j, "", "space"), "/space");
        if (j.contains("z_space")) sc.z = parse_space(j.at("z_space"), "/z_space");
        if (j.contains("rounding")) sc.rounding = parse_rounding(j.at("rounding"), "/rounding");
        if (j.contains("sequence") == j.contains("pairs"))
            throw SpecError("", "give exactly one of 'sequence' or 'pairs'");
        if (j.contains("sequence")) {
            if (sc.z) throw SpecError("/z_space", "z_space is only used with pairs");
            sc.system.seq = parse_sequence(sc, j.at("sequence"), "/sequence");
        } else {
            sc.system.pairs = parse_pairs(sc, j.at("pairs"), "/pairs");
        }
        if (j.contains("degrees")) {
            const Json& d = j.at("degrees");
            only(d, "/degrees", {"prefix", "period"});
            DegreeBoundInput in;
            if (d.contains("prefix")) in.prefix = parse_ints(d.at("prefix"), "/degrees/prefix");
            if (d.contains("period")) in.period = parse_ints(d.at("period"), "/degrees/period");
            if (in.prefix.empty() && in.period.empty()) throw SpecError("/degrees", "degrees need a prefix or a period");
            sc.degrees = in;
        }
        if (j.contains("run")) sc.run = parse_run(j.at("run"), "/run");
        for (double e : sc.run.epsilons)
            if (e > sc.x->diameter() + kTol && sc.x->is_grid()) throw SpecError("/run/epsilons", "epsilon exceeds the diameter");
        if (j.contains("expected")) {
            const Json& ex = as_array(j.at("expected"), "/expected");
            for (std::size_t i = 0; i < ex.size(); ++i) {
                std::string ep = "/expected/" + std::to_string(i);
                only(ex[i], ep, {"definition", "value", "at_least", "tolerance"});
                ExpectedValue v;
                v.pointer = ep;
                v.definition = as_string(need(ex[i], ep, "definition"), ep + "/definition");
                if (v.definition != "degree_bound") {
                    try {
                        parse_definition(v.definition);
                    } catch (const InputError& e) {
                        throw SpecError(ep + "/definition", e.what());
                    }
                }
                if (ex[i].contains("value")) v.value = as_real(ex[i].at("value"), ep + "/value");
                if (ex[i].contains("at_least")) v.at_least = as_real(ex[i].at("at_least"), ep + "/at_least");
                if (v.value.has_value() == v.at_least.has_value())
                    throw SpecError(ep, "give exactly one of 'value' or 'at_least'");
                v.tolerance = ex[i].contains("tolerance") ? as_real(ex[i].at("tolerance"), ep + "/tolerance")
                                                          : sc.run.tolerance.value_or(0.05);
                sc.expected.push_back(v);
            }
        }
        if (j.contains("checks")) {
            const Json& cs = as_array(j.at("checks"), "/checks");
            for (std::size_t i = 0; i < cs.size(); ++i) {
                std::string cp = "/checks/" + std::to_string(i);
                if (!cs[i].is_object()) throw SpecError(cp, "expected an object");
                std::string kind = as_string(need(cs[i], cp, "kind"), cp + "/kind");
                auto it = check_keys().find(kind);
                if (it == check_keys().end()) throw SpecError(cp + "/kind", "unknown check kind '" + kind + "'");
                for (auto f = cs[i].begin(); f != cs[i].end(); ++f)
                    if (f.key() != "kind" && !it->second.count(f.key()))
                        throw SpecError(cp + "/" + f.key(), "unknown field '" + f.key() + "'");
                sc.checks.push_back({kind, cs[i], cp});
            }
        }
        if (j.contains("oracle")) {
            only(j.at("oracle"), "/oracle", {"n_max"});
            sc.oracle_n = int(as_int(need(j.at("oracle"), "/oracle", "n_max"), "/oracle/n_max"));
        }
    } catch (const SpecError& e) {
        throw InputError(sc.where(e.pointer) + ": " + e.what() + " (at " + (e.pointer.empty() ? "/" : e.pointer) + ")");
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open scenario");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

}  // namespace orbitropy
