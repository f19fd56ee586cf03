#include "orbitropy/region.hpp"

#include <algorithm>

namespace orbitropy {

namespace {

BigInt floor_of(const Rational& x) {
    BigInt q = numerator(x) / denominator(x);
    if (Rational(q) > x) q -= 1;
    return q;
}

BigInt ceil_of(const Rational& x) {
    BigInt q = numerator(x) / denominator(x);
    if (Rational(q) < x) q += 1;
    return q;
}

}  // namespace

bool Region::contains(const Rational& x) const {
    if (std::binary_search(points.begin(), points.end(), x)) return true;
    auto it = std::upper_bound(intervals.begin(), intervals.end(), x,
                               [](const Rational& v, const OpenInterval& iv) { return v <= iv.lo; });
    if (it == intervals.begin()) return false;
    --it;
    return it->lo < x && x < it->hi;
}

void Region::normalize() {
    std::erase_if(intervals, [](const OpenInterval& iv) { return !(iv.lo < iv.hi); });
    std::sort(intervals.begin(), intervals.end(),
              [](const OpenInterval& a, const OpenInterval& b) { return a.lo < b.lo; });
    std::vector<OpenInterval> merged;
    for (auto& iv : intervals) {
        if (!merged.empty() && iv.lo < merged.back().hi) {
            if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
        } else {
            merged.push_back(iv);
        }
    }
    intervals = std::move(merged);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (!intervals.empty()) {
        std::vector<Rational> kept;
        for (auto& p : points) {
            auto it = std::upper_bound(intervals.begin(), intervals.end(), p,
                                       [](const Rational& v, const OpenInterval& iv) { return v <= iv.lo; });
            bool inside = false;
            if (it != intervals.begin()) {
                --it;
                inside = it->lo < p && p < it->hi;
            }
            if (!inside) kept.push_back(p);
        }
        points = std::move(kept);
    }
}

void Region::add(const Region& o) {
    intervals.insert(intervals.end(), o.intervals.begin(), o.intervals.end());
    points.insert(points.end(), o.points.begin(), o.points.end());
    normalize();
}

bool operator<(const Region& a, const Region& b) {
    if (a.intervals.size() != b.intervals.size()) return a.intervals.size() < b.intervals.size();
    if (a.points.size() != b.points.size()) return a.points.size() < b.points.size();
    for (std::size_t i = 0; i < a.intervals.size(); ++i) {
        if (a.intervals[i].lo != b.intervals[i].lo) return a.intervals[i].lo < b.intervals[i].lo;
        if (a.intervals[i].hi != b.intervals[i].hi) return a.intervals[i].hi < b.intervals[i].hi;
    }
    for (std::size_t i = 0; i < a.points.size(); ++i)
        if (a.points[i] != b.points[i]) return a.points[i] < b.points[i];
    return false;
}

Region full_region(const Space& space) {
    Region r;
    if (space.is_grid()) {
        r.intervals.push_back({Rational(0), Rational(1)});
    } else {
        for (int i = 0; i < space.size(); ++i) r.points.push_back(Rational(i));
    }
    return r;
}

Region grid_points_region(const CellPartition& part, int cell) {
    Region r;
    const Space& s = part.space();
    for (int i = 0; i < s.size(); ++i)
        if (part.cell_of_point(i) == cell) r.points.push_back(s.coordinate(i));
    return r;
}

Region cell_interior(const CellPartition& part, int cell) {
    if (!part.space().is_grid()) return grid_points_region(part, cell);
    Region r;
    r.intervals.push_back({part.lower(cell), part.upper(cell)});
    return r;
}

Region clip(const Region& r, const CellPartition& part, int cell) {
    Region out;
    if (part.space().is_grid()) {
        Rational lo = part.lower(cell), hi = part.upper(cell);
        for (auto& iv : r.intervals) {
            Rational a = std::max(iv.lo, lo), b = std::min(iv.hi, hi);
            if (a < b) out.intervals.push_back({a, b});
        }
    }
    for (auto& p : r.points)
        if (part.cell_of(p) == cell) out.points.push_back(p);
    return out;
}

std::vector<int> cells_met(const Region& r, const CellPartition& part) {
    std::vector<int> out;
    if (part.space().is_grid()) {
        for (auto& iv : r.intervals) {
            int a = part.first_cell_after(iv.lo), b = part.last_cell_before(iv.hi);
            for (int c = a; c <= b; ++c) out.push_back(c);
        }
    }
    for (auto& p : r.points) out.push_back(part.cell_of(p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> grid_points_in(const Region& r, const Space& space) {
    std::vector<int> out;
    if (space.is_grid()) {
        int m = space.grid_size();
        for (auto& iv : r.intervals) {
            BigInt a = floor_of(iv.lo * m) + 1, b = ceil_of(iv.hi * m) - 1;
            a = std::max<BigInt>(a, 0);
            b = std::min<BigInt>(b, space.size() - 1);
            for (BigInt i = a; i <= b; ++i) out.push_back(static_cast<int>(i));
        }
    }
    for (auto& p : r.points)
        if (auto i = space.index_of(p)) out.push_back(*i);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace orbitropy
