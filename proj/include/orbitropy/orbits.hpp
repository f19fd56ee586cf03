#pragma once

#include "orbitropy/maps.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orbitropy {

inline constexpr std::size_t kDefaultCap = 10'000'000;

// Tuples stored row-major; sorted lexicographically and distinct.
struct OrbitSet {
    int arity = 0;
    std::vector<int> data;
    std::string source;
    bool truncated = false;

    std::size_t size() const { return arity == 0 ? 0 : data.size() / arity; }
    std::span<const int> tuple(std::size_t i) const { return {data.data() + i * arity, static_cast<std::size_t>(arity)}; }
    std::optional<std::size_t> find(std::span<const int> t) const;
};

OrbitSet enumerate_orbits(const MapSequence& seq, int n, std::size_t cap = kDefaultCap);
OrbitSet enumerate_orbits_from(const MapSequence& seq, int n, int x, std::size_t cap = kDefaultCap);
OrbitSet enumerate_coincidences(const SelectedPairSequence& pairs, int n, std::size_t cap = kDefaultCap);
OrbitSet enumerate_coincidences_from(const SelectedPairSequence& pairs, int n, int z, std::size_t cap = kDefaultCap);

struct ProjectionWitness {
    OrbitSet coincidences;           // Coin_n
    OrbitSet orbits;                 // Orb_{n+1} of q∘r⁻¹
    std::vector<std::size_t> image;  // index into orbits for each coincidence tuple
};

ProjectionWitness orbit_to_coincidence_projection(const SelectedPairSequence& pairs, int n,
                                                  std::size_t cap = kDefaultCap);

// Images (r_0 z_0, q_0 z_0, ..., r_{n-1} z_{n-1}, q_{n-1} z_{n-1}) of each
// coincidence tuple; the p*_n distance is the max metric on these rows.
std::vector<int> pair_images(const SelectedPairSequence& pairs, const OrbitSet& coin);

double pair_tuple_distance(const SelectedPairSequence& pairs, int n, std::span<const int> zs,
                           std::span<const int> zs2);

}  // namespace orbitropy
