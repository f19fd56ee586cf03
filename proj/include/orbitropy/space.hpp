#pragma once

#include "orbitropy/common.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace orbitropy {

enum class SpaceKind { Interval, Circle, Finite };

class Space {
public:
    static std::shared_ptr<const Space> interval(int m);
    static std::shared_ptr<const Space> circle(int m);
    static std::shared_ptr<const Space> finite(std::vector<std::vector<double>> matrix);

    SpaceKind kind() const { return kind_; }
    int grid_size() const { return m_; }
    int size() const { return n_; }
    bool is_grid() const { return kind_ != SpaceKind::Finite; }

    double distance(int x, int y) const;
    double diameter() const;

    // Continuum coordinate of a point; finite spaces use the index itself.
    Rational coordinate(int i) const;
    std::optional<int> index_of(const Rational& x) const;
    // Grid points nearest to x; two on exact ties, else one.
    std::vector<int> nearest(const Rational& x) const;

    bool same_as(const Space& o) const;
    std::string describe() const;

private:
    Space() = default;
    SpaceKind kind_ = SpaceKind::Interval;
    int m_ = 0;
    int n_ = 0;
    std::vector<double> matrix_;
};

using SpacePtr = std::shared_ptr<const Space>;

double distance(const Space& space, int x, int y);

struct TupleMetric {
    SpacePtr base;
    int arity;
    double operator()(std::span<const int> xs, std::span<const int> ys) const;
};

double tuple_distance(const TupleMetric& metric, std::span<const int> xs, std::span<const int> ys);

class CellPartition {
public:
    CellPartition(SpacePtr space, const Rational& mesh);

    const Space& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const Rational& mesh() const { return mesh_; }
    int cell_count() const { return cells_; }
    int cell_of_point(int i) const { return cell_of_point_[i]; }
    const std::vector<int>& assignment() const { return cell_of_point_; }

    // Cell containing a continuum coordinate (interval: [0,e],(e,2e],...;
    // circle: [ke,(k+1)e)). Finite spaces take a point index.
    int cell_of(const Rational& x) const;
    // Open interior of a grid cell.
    Rational lower(int c) const;
    Rational upper(int c) const;
    // First cell whose interior ends after x / last cell whose interior starts before x.
    int first_cell_after(const Rational& x) const;
    int last_cell_before(const Rational& x) const;

private:
    SpacePtr space_;
    Rational mesh_;
    int cells_ = 0;
    std::vector<int> cell_of_point_;
};

CellPartition partition(SpacePtr space, const Rational& mesh);
CellPartition partition(SpacePtr space, double mesh);

double hausdorff_distance(const std::vector<std::vector<int>>& a,
                          const std::vector<std::vector<int>>& b,
                          const TupleMetric& metric);

}  // namespace orbitropy

namespace orbitropy {

// Symmetric Hausdorff distance between index sets {0..na-1} and {0..nb-1}
// where d(i, j) measures a_i against b_j.
template <class Dist>
double hausdorff_indexed(std::size_t na, std::size_t nb, Dist d) {
    if (na == 0 || nb == 0) throw InputError("hausdorff_distance: empty set");
    double ab = 0, ba = 0;
    std::vector<double> col(nb, 1e300);
    for (std::size_t i = 0; i < na; ++i) {
        double best = 1e300;
        for (std::size_t j = 0; j < nb; ++j) {
            double v = d(i, j);
            if (v < best) best = v;
            if (v < col[j]) col[j] = v;
        }
        ab = std::max(ab, best);
    }
    for (double v : col) ba = std::max(ba, v);
    return std::max(ab, ba);
}

}  // namespace orbitropy
