#pragma once

#include "orbitropy/orbits.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace orbitropy {

// Finite pseudometric space of items: either rows of base-space points under
// the max metric, or an explicit distance matrix.
class ItemMetric {
public:
    static ItemMetric rows(SpacePtr base, int width, std::vector<int> coords);
    static ItemMetric matrix(std::size_t n, std::vector<double> dist);

    std::size_t size() const { return n_; }
    double distance(std::size_t a, std::size_t b) const;
    // distance(a, b) <= eps up to the global tolerance
    bool close(std::size_t a, std::size_t b, double eps) const;
    bool has_rows() const { return base_ != nullptr; }
    int width() const { return width_; }
    const int* row(std::size_t i) const { return coords_.data() + i * width_; }
    const Space& base() const { return *base_; }

private:
    SpacePtr base_;
    int width_ = 0;
    std::size_t n_ = 0;
    std::vector<int> coords_;
    std::vector<double> dist_;
};

ItemMetric orbit_metric(const OrbitSet& orbits, SpacePtr base);
ItemMetric pair_metric(const SelectedPairSequence& pairs, const OrbitSet& coin);

std::vector<std::size_t> greedy_separated(const ItemMetric& m, double eps);
std::vector<std::size_t> greedy_separated(const OrbitSet& tuples, const TupleMetric& metric, double eps);
std::vector<std::size_t> greedy_spanning(const ItemMetric& m, double eps);
std::vector<std::size_t> greedy_spanning(const OrbitSet& tuples, const TupleMetric& metric, double eps);
bool is_separated(const ItemMetric& m, const std::vector<std::size_t>& set, double eps);
bool is_spanning(const ItemMetric& m, const std::vector<std::size_t>& set, double eps);

inline constexpr std::size_t kCliqueLimit = 5000;
inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

struct FarGraph {
    std::size_t n = 0;
    std::size_t words = 0;
    std::vector<std::uint64_t> bits;  // row-major adjacency bitsets
    bool adjacent(std::size_t a, std::size_t b) const { return (bits[a * words + b / 64] >> (b % 64)) & 1u; }
};

FarGraph far_graph(const ItemMetric& m, double eps);

struct CliqueResult {
    std::size_t size = 0;
    bool exact = true;
    std::uint64_t nodes = 0;
    std::vector<std::size_t> members;
};

CliqueResult max_clique(const FarGraph& g, std::uint64_t node_budget = kDefaultNodeBudget);
// Zero-distance twins are collapsed first; the 5000 limit applies afterwards.
CliqueResult exact_max_separated(const ItemMetric& m, double eps, std::uint64_t node_budget = kDefaultNodeBudget);
CliqueResult exact_max_separated(const OrbitSet& tuples, const TupleMetric& metric, double eps,
                                 std::uint64_t node_budget = kDefaultNodeBudget);

struct TransitionMatrix {
    int cells = 0;
    std::size_t step = 0;
    std::vector<char> a;  // a[to * cells + from]
    bool at(int to, int from) const { return a[static_cast<std::size_t>(to) * cells + from] != 0; }
};

TransitionMatrix transition_matrix(const MultiMap& map, const CellPartition& part, std::size_t step = 0);
// 1ᵀ A_{n-2} ... A_0 1: paths of the cell relation, an upper bound for cover_count.
BigInt relaxed_cover_count(const MapSequence& seq, const CellPartition& part, int n);

struct SymbolicOptions {
    std::size_t state_cap = 250'000;
    bool allow_backward = true;
};

struct SymbolicSeries {
    std::vector<BigInt> counts;  // counts[i] is the count at n = i + 1
    std::size_t peak_states = 0;
    int forward_reach = 0;
};

// Number of cell words (c_0..c_{n-1}) realized by an orbit of the continuum maps
// (through open cell interiors; grid-bound maps act on grid points).
SymbolicSeries realized_counts(const MapSequence& seq, const CellPartition& part, int nmax,
                               const SymbolicOptions& opt = {});
SymbolicSeries realized_counts_forward(const MapSequence& seq, const CellPartition& part, int nmax,
                                       const SymbolicOptions& opt = {});
// Backward propagation for a single n; empty optional when the state cap is hit.
std::optional<BigInt> realized_count_backward(const MapSequence& seq, const CellPartition& part, int n,
                                              const SymbolicOptions& opt = {});
bool backward_capable(const MapSequence& seq);

BigInt cover_count(const MapSequence& seq, const CellPartition& part, int n, const SymbolicOptions& opt = {});

SymbolicSeries pointwise_counts(const MapSequence& seq, const CellPartition& part, int nmax, int x,
                                const SymbolicOptions& opt = {});
BigInt pointwise_cover_count(const MapSequence& seq, const CellPartition& part, int n, int x,
                             const SymbolicOptions& opt = {});

// Brute-force oracle: depth-first over cell words, each prefix checked by
// pulling the cell sets back to step 0.
BigInt enumerate_realized_words(const MapSequence& seq, const CellPartition& part, int n,
                                std::size_t word_limit);
// Same oracle for every n <= nmax in one pass; counts[i] is the count at n = i + 1.
std::vector<BigInt> enumerate_realized_word_counts(const MapSequence& seq, const CellPartition& part, int nmax,
                                                   std::size_t word_limit);
// Cell words of grid orbits (tables only).
BigInt grid_orbit_words(const MapSequence& seq, const CellPartition& part, int n, std::size_t cap = kDefaultCap);

// Branch pseudometric p_n^b between all points of the space.
std::vector<double> branch_distance_matrix(const MapSequence& seq, int n, std::size_t cap = kDefaultCap);

enum class Engine { Exact, Symbolic };
std::string engine_name(Engine e);

struct CountEntry {
    int n;
    BigInt count;
    bool exact;
};

struct CountSeries {
    double epsilon = 0;
    Engine engine = Engine::Exact;
    std::vector<CountEntry> entries;
};

struct CoincidenceCounts {
    CountSeries pair;  // under p*_n
    CountSeries z;     // under p_n on Z
};

CoincidenceCounts coincidence_counts(const SelectedPairSequence& pairs, const CellPartition& part_z,
                                     const CellPartition& part_x, double eps, int nmax, Engine engine,
                                     std::size_t cap = kDefaultCap, const SymbolicOptions& opt = {});

}  // namespace orbitropy
