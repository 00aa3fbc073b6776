#pragma once

#include "pqm/complex.hpp"
#include "pqm/pmod.hpp"
#include "pqm/pposet.hpp"

#include <cstdint>
#include <random>

namespace pqm {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);
bool chance(Rng& rng, double p);

/// Dims in [0, max_dim], uniformly random transition matrices.
PersistenceModule random_module(Rng& rng, const PrimeField& field, std::size_t max_index, std::size_t max_dim);

/// At most `max_bars` bars with births in [0, T]. Finite deaths are at most T;
/// a bar is essential with probability `essential`, and a bar born at T is
/// essential unless `essential` is 0, in which case it is dropped.
Barcode random_barcode(Rng& rng, std::size_t max_index, std::size_t max_bars, double essential = 0.25);

Matrix random_invertible(Rng& rng, const PrimeField& field, std::size_t n);

/// Interval module of `bars` seen through a random basis change at each index.
PersistenceModule random_module_with_barcode(Rng& rng, const PrimeField& field, std::size_t max_index,
                                             const Barcode& bars);

/// Random complex on at most `max_vertices` vertices with at most
/// `max_simplices` simplices in total. Vertex names carry `prefix`.
SimplicialComplex random_complex(Rng& rng, std::size_t max_vertices, std::size_t max_simplices,
                                 const std::string& prefix = "v");

struct GeneratorLimits {
    std::size_t max_index = 3;
    std::size_t max_slice = 6;
    std::size_t max_tracks = 4;
    /// Give every target element a maximal preimage so that all fibers are cones.
    bool shadow = false;
};

PersistencePoset random_persistence_poset(Rng& rng, std::size_t max_index, std::size_t max_slice,
                                          std::size_t max_tracks);

/// Target with at most max_tracks tracks, source built over it slice by slice.
PersistenceMap random_persistence_map(Rng& rng, const GeneratorLimits& limits);

} // namespace pqm
