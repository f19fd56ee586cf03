#pragma once

#include "orbitropy/region.hpp"

#include <memory>
#include <vector>

namespace orbitropy {

enum class Rounding { Strict, Exact, Nearest };

using Table = std::vector<std::vector<int>>;

// Continuum description of a map, used by the symbolic engine and by
// sampling. Compose parts are in mathematical order: parts[0] is applied last.
struct Formula {
    enum class Kind { Tent, Degree, Constant, Identity, Table, Inverse, Compose, Pair };
    Kind kind = Kind::Identity;
    long param = 0;
    Rational value;
    std::shared_ptr<const Table> table;
    std::vector<std::shared_ptr<const Formula>> parts;
    SpacePtr domain, codomain;
};
using FormulaPtr = std::shared_ptr<const Formula>;

Region image(const Formula& f, const Region& r);
Region preimage(const Formula& f, const Region& r);
bool single_valued(const Formula& f);
// True when some primitive acts only on grid points (tables).
bool grid_bound(const Formula& f);

FormulaPtr tent_formula(SpacePtr dom, SpacePtr cod, int k);
FormulaPtr degree_formula(SpacePtr dom, SpacePtr cod, int d);
FormulaPtr constant_formula(SpacePtr dom, SpacePtr cod, const Rational& value);
FormulaPtr identity_formula(SpacePtr dom, SpacePtr cod);
FormulaPtr inverse_formula(FormulaPtr f);
FormulaPtr compose_formula(std::vector<FormulaPtr> parts);
FormulaPtr pair_formula(FormulaPtr r, FormulaPtr q);

class MultiMap {
public:
    MultiMap(SpacePtr domain, SpacePtr codomain, Table images, FormulaPtr formula = nullptr);

    const Space& domain() const { return *domain_; }
    const Space& codomain() const { return *codomain_; }
    const SpacePtr& domain_ptr() const { return domain_; }
    const SpacePtr& codomain_ptr() const { return codomain_; }
    const std::vector<int>& image(int x) const { return (*images_)[x]; }
    const Table& table() const { return *images_; }
    const FormulaPtr& formula() const { return formula_; }
    bool has_formula() const { return formula_->kind != Formula::Kind::Table; }

    bool single_valued() const;
    int apply(int x) const;
    bool surjective() const;
    std::size_t max_branching() const;

    bool operator==(const MultiMap& o) const;

    static MultiMap sample(FormulaPtr f, Rounding rounding);

private:
    SpacePtr domain_, codomain_;
    std::shared_ptr<const Table> images_;
    FormulaPtr formula_;
};

MultiMap tent_map(SpacePtr space, int k);
MultiMap tent_map(SpacePtr domain, SpacePtr codomain, int k);
MultiMap circle_degree_map(SpacePtr space, int d);
MultiMap constant_map(SpacePtr domain, SpacePtr codomain, int point);
MultiMap identity_map(SpacePtr space);
MultiMap table_map(SpacePtr domain, SpacePtr codomain, Table images);

// Strict rounding transposes the table (f must be onto the grid); Exact or
// Nearest resample the continuum inverse of f's formula.
MultiMap inverse(const MultiMap& f, Rounding rounding = Rounding::Strict);
MultiMap compose(const MultiMap& g, const MultiMap& f);
MultiMap from_pair(const MultiMap& r, const MultiMap& q, Rounding rounding = Rounding::Strict);

class MapSequence {
public:
    MapSequence(std::vector<MultiMap> prefix, std::vector<MultiMap> period);

    const MultiMap& at(std::size_t j) const;
    bool defined(std::size_t j) const { return !period_.empty() || j < prefix_.size(); }
    bool periodic() const { return !period_.empty(); }
    const std::vector<MultiMap>& prefix() const { return prefix_; }
    const std::vector<MultiMap>& period() const { return period_; }
    const SpacePtr& space() const { return space_; }
    // Number of distinct steps before the sequence repeats (prefix + period).
    std::size_t distinct_steps() const { return prefix_.size() + period_.size(); }
    bool grid_bound() const;
    std::size_t max_branching() const;

private:
    std::vector<MultiMap> prefix_, period_;
    SpacePtr space_;
};

MapSequence autonomous(const MultiMap& f);
MapSequence iterate(const MapSequence& seq, int k);

struct SelectedPair {
    MultiMap r, q;
};

class SelectedPairSequence {
public:
    SelectedPairSequence(std::vector<SelectedPair> prefix, std::vector<SelectedPair> period);

    const SelectedPair& at(std::size_t j) const;
    bool defined(std::size_t j) const { return !period_.empty() || j < prefix_.size(); }
    bool periodic() const { return !period_.empty(); }
    const SpacePtr& z_space() const { return z_; }
    const SpacePtr& x_space() const { return x_; }
    const std::vector<SelectedPair>& prefix() const { return prefix_; }
    const std::vector<SelectedPair>& period() const { return period_; }

    // φ_j = q_j ∘ r_j⁻¹ on X.
    MapSequence phi() const;
    // ψ_j = r_{j+1}⁻¹ ∘ q_j on Z; coincidence orbits are exactly ψ-orbits.
    MapSequence psi() const;

private:
    std::vector<SelectedPair> prefix_, period_;
    SpacePtr z_, x_;
};

bool check_strong_commutativity(const MultiMap& q, const MultiMap& r);

// f[j] : X → Y; a single f is reused at every index.
bool check_semi_conjugacy(const MapSequence& phi, const MapSequence& psi,
                          const std::vector<MultiMap>& f, int horizon);

}  // namespace orbitropy
