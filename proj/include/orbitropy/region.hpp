#pragma once

#include "orbitropy/space.hpp"

#include <compare>
#include <vector>

namespace orbitropy {

struct OpenInterval {
    Rational lo, hi;
    bool operator==(const OpenInterval&) const = default;
};

// A subset of a space: finitely many disjoint open intervals (coordinates in
// [0,1]) plus isolated points. On finite spaces only points occur.
struct Region {
    std::vector<OpenInterval> intervals;
    std::vector<Rational> points;

    bool empty() const { return intervals.empty() && points.empty(); }
    bool contains(const Rational& x) const;
    void normalize();
    void add(const Region& o);

    bool operator==(const Region& o) const { return intervals == o.intervals && points == o.points; }
};

bool operator<(const Region& a, const Region& b);

Region full_region(const Space& space);
Region grid_points_region(const CellPartition& part, int cell);
Region cell_interior(const CellPartition& part, int cell);
Region clip(const Region& r, const CellPartition& part, int cell);
std::vector<int> cells_met(const Region& r, const CellPartition& part);
// Grid points of the space lying in the region.
std::vector<int> grid_points_in(const Region& r, const Space& space);

}  // namespace orbitropy
