#include "orbitropy/maps.hpp"

#include <algorithm>
#include <numeric>

namespace orbitropy {

namespace {

BigInt floor_of(const Rational& x) {
    BigInt q = numerator(x) / denominator(x);
    if (Rational(q) > x) q -= 1;
    return q;
}

Rational frac(const Rational& x) { return x - Rational(floor_of(x)); }

Rational tent_value(long k, const Rational& x) {
    Rational kx = x * k;
    BigInt i = floor_of(kx);
    if (i >= k) i = k - 1;
    if (i < 0) i = 0;
    Rational f = kx - Rational(i);
    return (i % 2 == 0) ? f : Rational(1 - f);
}

Region single_point(const Rational& x) {
    Region r;
    r.points.push_back(x);
    return r;
}

Region tent_image(long k, const Region& in) {
    Region out;
    for (auto& p : in.points) out.points.push_back(tent_value(k, p));
    for (auto& iv : in.intervals) {
        Rational a = std::max(iv.lo, Rational(0)), b = std::min(iv.hi, Rational(1));
        if (!(a < b)) continue;
        Rational lo = tent_value(k, a), hi = lo;
        auto see = [&](const Rational& v) {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        };
        see(tent_value(k, b));
        BigInt first = floor_of(a * k) + 1;
        for (BigInt i = first; Rational(i, k) < b; ++i) see(tent_value(k, Rational(i, k)));
        out.intervals.push_back({lo, hi});
    }
    out.normalize();
    return out;
}

Region tent_preimage(long k, const Region& in) {
    Region out;
    for (auto& p : in.points) {
        if (p < 0 || p > 1) continue;
        for (long i = 0; i < k; ++i) out.points.push_back(i % 2 == 0 ? Rational((p + i) / k) : Rational((i + 1 - p) / k));
    }
    for (auto& iv : in.intervals) {
        Rational a = std::max(iv.lo, Rational(0)), b = std::min(iv.hi, Rational(1));
        if (!(a < b)) continue;
        for (long i = 0; i < k; ++i) {
            if (i % 2 == 0) out.intervals.push_back({(a + i) / k, (b + i) / k});
            else out.intervals.push_back({(i + 1 - b) / k, (i + 1 - a) / k});
        }
    }
    out.normalize();
    return out;
}

Region degree_image(long d, const Region& in) {
    Region out;
    for (auto& p : in.points) out.points.push_back(frac(p * d));
    long ad = d < 0 ? -d : d;
    for (auto& iv : in.intervals) {
        Rational len = (iv.hi - iv.lo) * ad;
        if (len >= 1) {
            out.intervals.push_back({Rational(0), Rational(1)});
            continue;
        }
        Rational start = d > 0 ? frac(iv.lo * d) : frac(iv.hi * d);
        Rational end = start + len;
        if (end <= 1) {
            out.intervals.push_back({start, end});
        } else {
            out.intervals.push_back({start, Rational(1)});
            out.intervals.push_back({Rational(0), Rational(end - 1)});
        }
    }
    out.normalize();
    return out;
}

Region degree_preimage(long d, const Region& in) {
    Region out;
    long ad = d < 0 ? -d : d;
    for (auto& p : in.points) {
        Rational base = d > 0 ? frac(p) : frac(-p);
        for (long j = 0; j < ad; ++j) out.points.push_back((base + j) / ad);
    }
    for (auto& iv : in.intervals) {
        for (long j = 0; j < ad; ++j) {
            if (d > 0) out.intervals.push_back({(iv.lo + j) / ad, (iv.hi + j) / ad});
            else out.intervals.push_back({(1 - iv.hi + j) / ad, (1 - iv.lo + j) / ad});
        }
    }
    out.normalize();
    return out;
}

Region table_image(const Formula& f, const Region& in) {
    Region out;
    for (int i : grid_points_in(in, *f.domain))
        for (int j : (*f.table)[i]) out.points.push_back(f.codomain->coordinate(j));
    out.normalize();
    return out;
}

Region table_preimage(const Formula& f, const Region& in) {
    Region out;
    const Table& t = *f.table;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
        for (int j : t[i]) {
            if (in.contains(f.codomain->coordinate(j))) {
                out.points.push_back(f.domain->coordinate(i));
                break;
            }
        }
    }
    out.normalize();
    return out;
}

}  // namespace

Region image(const Formula& f, const Region& r) {
    if (r.empty()) return {};
    switch (f.kind) {
    case Formula::Kind::Tent: return tent_image(f.param, r);
    case Formula::Kind::Degree: return degree_image(f.param, r);
    case Formula::Kind::Constant: return single_point(f.value);
    case Formula::Kind::Identity: return r;
    case Formula::Kind::Table: return table_image(f, r);
    case Formula::Kind::Inverse: return preimage(*f.parts[0], r);
    case Formula::Kind::Compose: {
        Region cur = r;
        for (auto it = f.parts.rbegin(); it != f.parts.rend() && !cur.empty(); ++it) cur = image(**it, cur);
        return cur;
    }
    case Formula::Kind::Pair: return image(*f.parts[1], preimage(*f.parts[0], r));
    }
    return {};
}

Region preimage(const Formula& f, const Region& r) {
    if (r.empty()) return {};
    switch (f.kind) {
    case Formula::Kind::Tent: return tent_preimage(f.param, r);
    case Formula::Kind::Degree: return degree_preimage(f.param, r);
    case Formula::Kind::Constant: return r.contains(f.value) ? full_region(*f.domain) : Region{};
    case Formula::Kind::Identity: return r;
    case Formula::Kind::Table: return table_preimage(f, r);
    case Formula::Kind::Inverse: return image(*f.parts[0], r);
    case Formula::Kind::Compose: {
        Region cur = r;
        for (auto it = f.parts.begin(); it != f.parts.end() && !cur.empty(); ++it) cur = preimage(**it, cur);
        return cur;
    }
    case Formula::Kind::Pair: return image(*f.parts[0], preimage(*f.parts[1], r));
    }
    return {};
}

bool single_valued(const Formula& f) {
    switch (f.kind) {
    case Formula::Kind::Tent:
    case Formula::Kind::Degree:
    case Formula::Kind::Constant:
    case Formula::Kind::Identity: return true;
    case Formula::Kind::Table:
        return std::all_of(f.table->begin(), f.table->end(), [](const auto& v) { return v.size() == 1; });
    case Formula::Kind::Inverse:
        return f.parts[0]->kind == Formula::Kind::Identity;
    case Formula::Kind::Compose:
        return std::all_of(f.parts.begin(), f.parts.end(), [](const FormulaPtr& p) { return single_valued(*p); });
    case Formula::Kind::Pair: return false;
    }
    return false;
}

bool grid_bound(const Formula& f) {
    if (f.kind == Formula::Kind::Table) return true;
    return std::any_of(f.parts.begin(), f.parts.end(), [](const FormulaPtr& p) { return grid_bound(*p); });
}

FormulaPtr tent_formula(SpacePtr dom, SpacePtr cod, int k) {
    if (k < 1) throw InputError("tent map needs k >= 1");
    if (dom->kind() != SpaceKind::Interval || cod->kind() != SpaceKind::Interval)
        throw InputError("tent map requires interval spaces");
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Tent;
    f->param = k;
    f->domain = std::move(dom);
    f->codomain = std::move(cod);
    return f;
}

FormulaPtr degree_formula(SpacePtr dom, SpacePtr cod, int d) {
    if (d == 0) throw InputError("degree 0 is only available as an explicit constant map");
    if (dom->kind() != SpaceKind::Circle || cod->kind() != SpaceKind::Circle)
        throw InputError("degree map requires circle spaces");
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Degree;
    f->param = d;
    f->domain = std::move(dom);
    f->codomain = std::move(cod);
    return f;
}

FormulaPtr constant_formula(SpacePtr dom, SpacePtr cod, const Rational& value) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Constant;
    f->value = value;
    f->domain = std::move(dom);
    f->codomain = std::move(cod);
    return f;
}

FormulaPtr identity_formula(SpacePtr dom, SpacePtr cod) {
    if (dom->kind() != cod->kind() || (!dom->is_grid() && !dom->same_as(*cod)))
        throw InputError("identity needs matching spaces");
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Identity;
    f->domain = std::move(dom);
    f->codomain = std::move(cod);
    return f;
}

FormulaPtr inverse_formula(FormulaPtr g) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Inverse;
    f->domain = g->codomain;
    f->codomain = g->domain;
    f->parts = {std::move(g)};
    return f;
}

FormulaPtr compose_formula(std::vector<FormulaPtr> parts) {
    if (parts.empty()) throw InputError("compose needs at least one map");
    std::vector<FormulaPtr> flat;
    for (auto& p : parts) {
        if (p->kind == Formula::Kind::Compose) flat.insert(flat.end(), p->parts.begin(), p->parts.end());
        else flat.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < flat.size(); ++i) {
        const Space& mid_out = *flat[i + 1]->codomain;
        const Space& mid_in = *flat[i]->domain;
        if (mid_out.kind() != mid_in.kind() || (!mid_in.is_grid() && !mid_in.same_as(mid_out)))
            throw InputError("compose: space mismatch between consecutive maps");
    }
    if (flat.size() == 1) return flat[0];
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Compose;
    f->domain = flat.back()->domain;
    f->codomain = flat.front()->codomain;
    f->parts = std::move(flat);
    return f;
}

FormulaPtr pair_formula(FormulaPtr r, FormulaPtr q) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Pair;
    f->domain = r->codomain;
    f->codomain = q->codomain;
    f->parts = {std::move(r), std::move(q)};
    return f;
}

MultiMap::MultiMap(SpacePtr domain, SpacePtr codomain, Table images, FormulaPtr formula)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
    if (static_cast<int>(images.size()) != domain_->size())
        throw InputError("image table has " + std::to_string(images.size()) + " rows, domain has " +
                         std::to_string(domain_->size()) + " points");
    for (std::size_t i = 0; i < images.size(); ++i) {
        auto& v = images[i];
        if (v.empty()) throw InputError("empty image set at point " + std::to_string(i));
        for (int j : v)
            if (j < 0 || j >= codomain_->size())
                throw InputError("image index " + std::to_string(j) + " out of range at point " + std::to_string(i));
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    images_ = std::make_shared<const Table>(std::move(images));
    if (formula) {
        formula_ = std::move(formula);
    } else {
        auto f = std::make_shared<Formula>();
        f->kind = Formula::Kind::Table;
        f->table = images_;
        f->domain = domain_;
        f->codomain = codomain_;
        formula_ = f;
    }
}

bool MultiMap::single_valued() const {
    return std::all_of(images_->begin(), images_->end(), [](const auto& v) { return v.size() == 1; });
}

int MultiMap::apply(int x) const {
    const auto& v = image(x);
    if (v.size() != 1) throw InputError("map is not single-valued at point " + std::to_string(x));
    return v[0];
}

bool MultiMap::surjective() const {
    std::vector<char> hit(codomain_->size(), 0);
    for (auto& v : *images_)
        for (int j : v) hit[j] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

std::size_t MultiMap::max_branching() const {
    std::size_t b = 0;
    for (auto& v : *images_) b = std::max(b, v.size());
    return b;
}

bool MultiMap::operator==(const MultiMap& o) const {
    return domain_->same_as(*o.domain_) && codomain_->same_as(*o.codomain_) && *images_ == *o.images_;
}

MultiMap MultiMap::sample(FormulaPtr f, Rounding rounding) {
    const Space& dom = *f->domain;
    const Space& cod = *f->codomain;
    bool single = orbitropy::single_valued(*f);
    Table t(dom.size());
    for (int i = 0; i < dom.size(); ++i) {
        Region img = orbitropy::image(*f, single_point(dom.coordinate(i)));
        auto& row = t[i];
        for (auto& iv : img.intervals) {
            Region closed;
            closed.intervals.push_back(iv);
            closed.points = {iv.lo, iv.hi};
            for (int j : grid_points_in(closed, cod)) row.push_back(j);
        }
        for (auto& p : img.points) {
            if (auto j = cod.index_of(p)) {
                row.push_back(*j);
                continue;
            }
            if (rounding != Rounding::Nearest)
                throw InputError("map is not grid-exact: point " + std::to_string(i) + " of " + dom.describe() +
                                 " has image " + to_string(p) + " off the " + cod.describe() + " grid");
            auto near = cod.nearest(p);
            if (single) row.push_back(near.front());
            else row.insert(row.end(), near.begin(), near.end());
        }
        if (row.empty())
            throw InputError("map has empty image at point " + std::to_string(i) + " of " + dom.describe());
    }
    return MultiMap(f->domain, f->codomain, std::move(t), f);
}

MultiMap tent_map(SpacePtr space, int k) { return tent_map(space, space, k); }

MultiMap tent_map(SpacePtr domain, SpacePtr codomain, int k) {
    if (k < 1) throw InputError("tent map needs k >= 1");
    if (domain->kind() == SpaceKind::Interval && domain->grid_size() % k != 0)
        throw InputError("tent map T_" + std::to_string(k) + " needs grid_size divisible by k, got " +
                         std::to_string(domain->grid_size()));
    return MultiMap::sample(tent_formula(std::move(domain), std::move(codomain), k), Rounding::Exact);
}

MultiMap circle_degree_map(SpacePtr space, int d) {
    return MultiMap::sample(degree_formula(space, space, d), Rounding::Exact);
}

MultiMap constant_map(SpacePtr domain, SpacePtr codomain, int point) {
    Rational v = codomain->coordinate(point);
    return MultiMap::sample(constant_formula(std::move(domain), std::move(codomain), v), Rounding::Exact);
}

MultiMap identity_map(SpacePtr space) { return MultiMap::sample(identity_formula(space, space), Rounding::Exact); }

MultiMap table_map(SpacePtr domain, SpacePtr codomain, Table images) {
    return MultiMap(std::move(domain), std::move(codomain), std::move(images));
}

MultiMap inverse(const MultiMap& f, Rounding rounding) {
    if (rounding != Rounding::Strict) return MultiMap::sample(inverse_formula(f.formula()), rounding);
    Table t(f.codomain().size());
    for (int x = 0; x < f.domain().size(); ++x)
        for (int y : f.image(x)) t[y].push_back(x);
    for (std::size_t y = 0; y < t.size(); ++y)
        if (t[y].empty())
            throw InputError("inverse: map is not surjective, point " + std::to_string(y) + " of " +
                             f.codomain().describe() + " is not covered");
    return MultiMap(f.codomain_ptr(), f.domain_ptr(), std::move(t), inverse_formula(f.formula()));
}

MultiMap compose(const MultiMap& g, const MultiMap& f) {
    if (!f.codomain().same_as(g.domain()))
        throw InputError("compose: codomain " + f.codomain().describe() + " does not match domain " +
                         g.domain().describe());
    Table t(f.domain().size());
    for (int x = 0; x < f.domain().size(); ++x) {
        auto& row = t[x];
        for (int y : f.image(x)) row.insert(row.end(), g.image(y).begin(), g.image(y).end());
    }
    return MultiMap(f.domain_ptr(), g.codomain_ptr(), std::move(t), compose_formula({g.formula(), f.formula()}));
}

MultiMap from_pair(const MultiMap& r, const MultiMap& q, Rounding rounding) {
    if (!r.domain().same_as(q.domain()) || !r.codomain().same_as(q.codomain()))
        throw InputError("from_pair: r and q must share domain and codomain");
    auto formula = pair_formula(r.formula(), q.formula());
    if (rounding != Rounding::Strict) return MultiMap::sample(formula, rounding);
    Table t(r.codomain().size());
    for (int z = 0; z < r.domain().size(); ++z)
        for (int x : r.image(z)) t[x].insert(t[x].end(), q.image(z).begin(), q.image(z).end());
    for (std::size_t x = 0; x < t.size(); ++x)
        if (t[x].empty())
            throw InputError("from_pair: r is not surjective, point " + std::to_string(x) + " is not covered");
    return MultiMap(r.codomain_ptr(), q.codomain_ptr(), std::move(t), formula);
}

MapSequence::MapSequence(std::vector<MultiMap> prefix, std::vector<MultiMap> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (prefix_.empty() && period_.empty()) throw InputError("map sequence is empty");
    const MultiMap& first = prefix_.empty() ? period_.front() : prefix_.front();
    space_ = first.domain_ptr();
    auto check = [&](const MultiMap& m) {
        if (!m.domain().same_as(*space_) || !m.codomain().same_as(*space_))
            throw InputError("all maps of a sequence must be self-maps of " + space_->describe());
    };
    for (auto& m : prefix_) check(m);
    for (auto& m : period_) check(m);
}

const MultiMap& MapSequence::at(std::size_t j) const {
    if (j < prefix_.size()) return prefix_[j];
    if (period_.empty())
        throw InputError("sequence index " + std::to_string(j) + " beyond the materialized prefix of length " +
                         std::to_string(prefix_.size()));
    return period_[(j - prefix_.size()) % period_.size()];
}

bool MapSequence::grid_bound() const {
    auto gb = [](const MultiMap& m) { return orbitropy::grid_bound(*m.formula()); };
    return std::any_of(prefix_.begin(), prefix_.end(), gb) || std::any_of(period_.begin(), period_.end(), gb);
}

std::size_t MapSequence::max_branching() const {
    std::size_t b = 1;
    for (auto& m : prefix_) b = std::max(b, m.max_branching());
    for (auto& m : period_) b = std::max(b, m.max_branching());
    return b;
}

MapSequence autonomous(const MultiMap& f) { return MapSequence({}, {f}); }

MapSequence iterate(const MapSequence& seq, int k) {
    if (k < 1) throw InputError("iterate needs k >= 1");
    if (k == 1) return seq;
    auto block = [&](std::size_t j) {
        MultiMap acc = seq.at(j * k);
        for (int t = 1; t < k; ++t) acc = compose(seq.at(j * k + t), acc);
        return acc;
    };
    std::size_t p = seq.prefix().size();
    if (!seq.periodic()) {
        if (p % k != 0)
            throw InputError("iterate: prefix length " + std::to_string(p) + " is not a multiple of k=" +
                             std::to_string(k));
        std::vector<MultiMap> out;
        for (std::size_t j = 0; j < p / k; ++j) out.push_back(block(j));
        return MapSequence(std::move(out), {});
    }
    std::size_t l = seq.period().size();
    std::size_t j0 = (p + k - 1) / k;
    std::size_t lp = l / std::gcd(l, static_cast<std::size_t>(k));
    std::vector<MultiMap> pre, per;
    for (std::size_t j = 0; j < j0; ++j) pre.push_back(block(j));
    for (std::size_t j = j0; j < j0 + lp; ++j) per.push_back(block(j));
    return MapSequence(std::move(pre), std::move(per));
}

SelectedPairSequence::SelectedPairSequence(std::vector<SelectedPair> prefix, std::vector<SelectedPair> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (prefix_.empty() && period_.empty()) throw InputError("pair sequence is empty");
    const SelectedPair& first = prefix_.empty() ? period_.front() : prefix_.front();
    z_ = first.r.domain_ptr();
    x_ = first.r.codomain_ptr();
    auto check = [&](const SelectedPair& p, std::size_t idx) {
        for (const MultiMap* m : {&p.r, &p.q}) {
            if (!m->domain().same_as(*z_) || !m->codomain().same_as(*x_))
                throw InputError("pair " + std::to_string(idx) + ": maps must go from " + z_->describe() + " to " +
                                 x_->describe());
            if (!m->single_valued()) throw InputError("pair " + std::to_string(idx) + ": r and q must be single-valued");
        }
        std::vector<char> hit(x_->size(), 0);
        for (int z = 0; z < z_->size(); ++z) hit[p.r.apply(z)] = 1;
        for (int x = 0; x < x_->size(); ++x)
            if (!hit[x])
                throw InputError("pair " + std::to_string(idx) + ": r is not surjective, point " + std::to_string(x) +
                                 " of " + x_->describe() + " is not covered");
    };
    for (std::size_t i = 0; i < prefix_.size(); ++i) check(prefix_[i], i);
    for (std::size_t i = 0; i < period_.size(); ++i) check(period_[i], prefix_.size() + i);
}

const SelectedPair& SelectedPairSequence::at(std::size_t j) const {
    if (j < prefix_.size()) return prefix_[j];
    if (period_.empty())
        throw InputError("pair index " + std::to_string(j) + " beyond the materialized prefix of length " +
                         std::to_string(prefix_.size()));
    return period_[(j - prefix_.size()) % period_.size()];
}

MapSequence SelectedPairSequence::phi() const {
    std::vector<MultiMap> pre, per;
    for (auto& p : prefix_) pre.push_back(from_pair(p.r, p.q));
    for (auto& p : period_) per.push_back(from_pair(p.r, p.q));
    return MapSequence(std::move(pre), std::move(per));
}

MapSequence SelectedPairSequence::psi() const {
    auto step = [&](std::size_t j) { return compose(inverse(at(j + 1).r), at(j).q); };
    std::vector<MultiMap> pre, per;
    if (periodic()) {
        for (std::size_t j = 0; j < prefix_.size(); ++j) pre.push_back(step(j));
        for (std::size_t j = prefix_.size(); j < prefix_.size() + period_.size(); ++j) per.push_back(step(j));
    } else {
        if (prefix_.size() < 2) throw InputError("coincidence dynamics need at least two pairs");
        for (std::size_t j = 0; j + 1 < prefix_.size(); ++j) pre.push_back(step(j));
    }
    return MapSequence(std::move(pre), std::move(per));
}

bool check_strong_commutativity(const MultiMap& q, const MultiMap& r) {
    if (!q.domain().same_as(r.domain()) || !q.domain().same_as(q.codomain()) || !r.domain().same_as(r.codomain()))
        throw InputError("strong commutativity needs two self-maps of one space");
    if (q.has_formula() && r.has_formula()) {
        auto lhs = compose_formula({q.formula(), inverse_formula(r.formula())});
        auto rhs = compose_formula({inverse_formula(r.formula()), q.formula()});
        for (int x = 0; x < q.domain().size(); ++x) {
            Region pt;
            pt.points.push_back(q.domain().coordinate(x));
            if (!(image(*lhs, pt) == image(*rhs, pt))) return false;
        }
        return true;
    }
    MultiMap rinv = inverse(r);
    return compose(q, rinv) == compose(rinv, q);
}

bool check_semi_conjugacy(const MapSequence& phi, const MapSequence& psi, const std::vector<MultiMap>& f,
                          int horizon) {
    if (f.empty()) throw InputError("semi-conjugacy needs at least one factor map");
    if (horizon < 1) throw InputError("semi-conjugacy horizon must be >= 1");
    if (f.size() != 1 && static_cast<int>(f.size()) < horizon + 1)
        throw InputError("semi-conjugacy needs " + std::to_string(horizon + 1) + " factor maps");
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!f[i].surjective()) throw InputError("factor map f_" + std::to_string(i) + " is not surjective");
    auto fa = [&](int j) -> const MultiMap& { return f.size() == 1 ? f[0] : f[j]; };
    const Space& x = *phi.space();
    for (int j = 0; j < horizon; ++j) {
        const MultiMap& ph = phi.at(j);
        const MultiMap& ps = psi.at(j);
        for (int p = 0; p < x.size(); ++p) {
            std::vector<int> lhs, rhs;
            for (int y : fa(j).image(p)) lhs.insert(lhs.end(), ps.image(y).begin(), ps.image(y).end());
            for (int w : ph.image(p)) rhs.insert(rhs.end(), fa(j + 1).image(w).begin(), fa(j + 1).image(w).end());
            std::sort(lhs.begin(), lhs.end());
            std::sort(rhs.begin(), rhs.end());
            rhs.erase(std::unique(rhs.begin(), rhs.end()), rhs.end());
            if (!std::includes(rhs.begin(), rhs.end(), lhs.begin(), lhs.end())) return false;
        }
    }
    return true;
}

}  // namespace orbitropy
