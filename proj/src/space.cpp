#include "orbitropy/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orbitropy {

Rational to_rational(double x) {
    if (!std::isfinite(x)) throw InputError("non-finite real value");
    // Continued-fraction expansion until the convergent reproduces x.
    bool neg = x < 0;
    double v = std::fabs(x);
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = v;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        BigInt ai(static_cast<long long>(a));
        BigInt p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double approx = static_cast<double>(Rational(p1, q1));
        if (std::fabs(approx - v) <= 1e-15 * std::max(1.0, v)) break;
        double frac = r - a;
        if (frac <= 0) break;
        r = 1.0 / frac;
    }
    Rational out(p1, q1);
    return neg ? Rational(-out) : out;
}

double log_big(const BigInt& v) {
    if (v <= 0) throw InputError("log of non-positive count");
    if (v < (BigInt(1) << 53)) return std::log(v.convert_to<double>());
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, v.backend().data());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

std::string to_string(const Rational& r) { return r.str(); }

SpacePtr Space::interval(int m) {
    if (m < 1) throw InputError("interval grid_size must be >= 1");
    auto s = std::shared_ptr<Space>(new Space());
    s->kind_ = SpaceKind::Interval;
    s->m_ = m;
    s->n_ = m + 1;
    return s;
}

SpacePtr Space::circle(int m) {
    if (m < 1) throw InputError("circle grid_size must be >= 1");
    auto s = std::shared_ptr<Space>(new Space());
    s->kind_ = SpaceKind::Circle;
    s->m_ = m;
    s->n_ = m;
    return s;
}

SpacePtr Space::finite(std::vector<std::vector<double>> matrix) {
    int n = static_cast<int>(matrix.size());
    if (n == 0) throw InputError("finite space needs at least one point");
    auto s = std::shared_ptr<Space>(new Space());
    s->kind_ = SpaceKind::Finite;
    s->n_ = n;
    s->matrix_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(matrix[i].size()) != n)
            throw InputError("distance_matrix row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j) {
            double v = matrix[i][j];
            if (!std::isfinite(v) || v < 0)
                throw InputError("distance_matrix entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not a nonnegative real");
            s->matrix_[i * n + j] = v;
        }
    }
    for (int i = 0; i < n; ++i) {
        if (s->matrix_[i * n + i] != 0) throw InputError("distance_matrix diagonal must be zero");
        for (int j = 0; j < i; ++j)
            if (s->matrix_[i * n + j] != s->matrix_[j * n + i])
                throw InputError("distance_matrix must be symmetric");
    }
    return s;
}

double Space::distance(int x, int y) const {
    if (x < 0 || y < 0 || x >= n_ || y >= n_)
        throw InputError("unknown point index " + std::to_string(x < 0 || x >= n_ ? x : y));
    switch (kind_) {
    case SpaceKind::Interval:
        return std::abs(x - y) / static_cast<double>(m_);
    case SpaceKind::Circle: {
        int d = std::abs(x - y);
        return std::min(d, m_ - d) / static_cast<double>(m_);
    }
    case SpaceKind::Finite:
        return matrix_[static_cast<std::size_t>(x) * n_ + y];
    }
    return 0;
}

double Space::diameter() const {
    switch (kind_) {
    case SpaceKind::Interval: return 1.0;
    case SpaceKind::Circle: return (m_ / 2) / static_cast<double>(m_);
    case SpaceKind::Finite: return *std::max_element(matrix_.begin(), matrix_.end());
    }
    return 0;
}

Rational Space::coordinate(int i) const {
    if (i < 0 || i >= n_) throw InputError("unknown point index " + std::to_string(i));
    if (kind_ == SpaceKind::Finite) return Rational(i);
    return Rational(i, m_);
}

std::optional<int> Space::index_of(const Rational& x) const {
    Rational scaled = kind_ == SpaceKind::Finite ? x : Rational(x * m_);
    if (denominator(scaled) != 1) return std::nullopt;
    BigInt v = numerator(scaled);
    if (kind_ == SpaceKind::Circle) {
        v %= m_;
        if (v < 0) v += m_;
    }
    if (v < 0 || v >= n_) return std::nullopt;
    return static_cast<int>(v);
}

std::vector<int> Space::nearest(const Rational& x) const {
    if (kind_ == SpaceKind::Finite) {
        auto i = index_of(x);
        if (!i) throw InputError("finite-space point " + to_string(x) + " is not an index");
        return {*i};
    }
    Rational scaled = x * m_;
    BigInt fl = numerator(scaled) / denominator(scaled);
    if (Rational(fl) > scaled) fl -= 1;
    Rational frac = scaled - Rational(fl);
    std::vector<BigInt> picks;
    if (frac == 0) picks = {fl};
    else if (frac * 2 < 1) picks = {fl};
    else if (frac * 2 > 1) picks = {fl + 1};
    else picks = {fl, fl + 1};
    std::vector<int> out;
    for (auto& p : picks) {
        BigInt v = p;
        if (kind_ == SpaceKind::Circle) {
            v %= m_;
            if (v < 0) v += m_;
        } else {
            v = std::clamp<BigInt>(v, 0, m_);
        }
        out.push_back(static_cast<int>(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Space::same_as(const Space& o) const {
    return kind_ == o.kind_ && m_ == o.m_ && n_ == o.n_ && matrix_ == o.matrix_;
}

std::string Space::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case SpaceKind::Interval: os << "interval(m=" << m_ << ")"; break;
    case SpaceKind::Circle: os << "circle(m=" << m_ << ")"; break;
    case SpaceKind::Finite: os << "finite(" << n_ << " points)"; break;
    }
    return os.str();
}

double distance(const Space& space, int x, int y) { return space.distance(x, y); }

double TupleMetric::operator()(std::span<const int> xs, std::span<const int> ys) const {
    return tuple_distance(*this, xs, ys);
}

double tuple_distance(const TupleMetric& metric, std::span<const int> xs, std::span<const int> ys) {
    if (static_cast<int>(xs.size()) != metric.arity || static_cast<int>(ys.size()) != metric.arity)
        throw InputError("tuple arity mismatch");
    double d = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) d = std::max(d, metric.base->distance(xs[i], ys[i]));
    return d;
}

double hausdorff_distance(const std::vector<std::vector<int>>& a,
                          const std::vector<std::vector<int>>& b,
                          const TupleMetric& metric) {
    return hausdorff_indexed(a.size(), b.size(),
                             [&](std::size_t i, std::size_t j) { return tuple_distance(metric, a[i], b[j]); });
}

namespace {

BigInt ceil_div(const Rational& x) {
    BigInt q = numerator(x) / denominator(x);
    if (Rational(q) < x) q += 1;
    return q;
}

BigInt floor_of(const Rational& x) {
    BigInt q = numerator(x) / denominator(x);
    if (Rational(q) > x) q -= 1;
    return q;
}

}  // namespace

CellPartition::CellPartition(SpacePtr space, const Rational& mesh) : space_(std::move(space)), mesh_(mesh) {
    if (mesh <= 0) throw InputError("cell mesh must be positive");
    int n = space_->size();
    cell_of_point_.resize(n);
    if (space_->kind() == SpaceKind::Finite) {
        cells_ = n;
        for (int i = 0; i < n; ++i) cell_of_point_[i] = i;
        return;
    }
    if (mesh < Rational(1, space_->grid_size()))
        throw InputError("cell mesh " + to_string(mesh) + " is finer than the grid spacing 1/" +
                         std::to_string(space_->grid_size()));
    cells_ = static_cast<int>(ceil_div(Rational(1) / mesh));
    for (int i = 0; i < n; ++i) cell_of_point_[i] = cell_of(space_->coordinate(i));
}

int CellPartition::cell_of(const Rational& x) const {
    if (space_->kind() == SpaceKind::Finite) {
        auto i = space_->index_of(x);
        if (!i) throw InputError("point " + to_string(x) + " outside finite space");
        return *i;
    }
    if (space_->kind() == SpaceKind::Interval) {
        if (x <= 0) return 0;
        BigInt c = ceil_div(x / mesh_) - 1;
        return static_cast<int>(std::clamp<BigInt>(c, 0, cells_ - 1));
    }
    BigInt c = floor_of(x / mesh_);
    return static_cast<int>(std::clamp<BigInt>(c, 0, cells_ - 1));
}

Rational CellPartition::lower(int c) const { return mesh_ * c; }

Rational CellPartition::upper(int c) const {
    Rational u = mesh_ * (c + 1);
    return u > 1 ? Rational(1) : u;
}

int CellPartition::first_cell_after(const Rational& x) const {
    // smallest c with upper(c) > x
    BigInt c = floor_of(x / mesh_);
    return static_cast<int>(std::clamp<BigInt>(c, 0, cells_ - 1));
}

int CellPartition::last_cell_before(const Rational& x) const {
    // largest c with lower(c) < x
    BigInt c = ceil_div(x / mesh_) - 1;
    return static_cast<int>(std::clamp<BigInt>(c, 0, cells_ - 1));
}

CellPartition partition(SpacePtr space, const Rational& mesh) { return CellPartition(std::move(space), mesh); }

CellPartition partition(SpacePtr space, double mesh) {
    if (!(mesh > 0)) throw InputError("cell mesh must be positive");
    return CellPartition(std::move(space), to_rational(mesh));
}

}  // namespace orbitropy
