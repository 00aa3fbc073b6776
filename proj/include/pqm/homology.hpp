#pragma once

#include "pqm/complex.hpp"
#include "pqm/field.hpp"
#include "pqm/pmod.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace pqm {

/// Sparse chain: (simplex index within its dimension, coefficient), sorted by index.
using Chain = std::vector<std::pair<std::size_t, Scalar>>;

/// A basis of H_k (or reduced H_k) given by representative cycles, together
/// with the reduction data needed to express any cycle in that basis.
class HomologyBasis {
public:
    std::size_t degree() const noexcept { return degree_; }
    std::size_t dimension() const noexcept { return reps_.size(); }
    const std::vector<Chain>& representatives() const noexcept { return reps_; }
    const PrimeField& field() const noexcept { return field_; }

    /// Coordinates of the class of `cycle`. Throws NotACycle when the chain is
    /// not a cycle (or, for reduced bases, not in the augmentation kernel).
    std::vector<Scalar> coordinates(const Chain& cycle) const;

private:
    friend std::vector<HomologyBasis> homology_all(const SimplicialComplex&, std::size_t, const PrimeField&, bool);

    PrimeField field_;
    std::size_t degree_ = 0;
    std::vector<Chain> reps_;
    std::vector<Chain> boundaries_;
    std::vector<std::ptrdiff_t> boundary_pivot_; // row -> column in boundaries_, or -1
    std::vector<std::ptrdiff_t> rep_pivot_;      // row -> index in reps_, or -1
};

/// Column j of the boundary map from dimension k to k-1 (k >= 1), entries
/// (-1)^position over F_p.
Chain boundary_column(const SimplicialComplex& k, std::size_t dim, std::size_t j, const PrimeField& field);

/// Dense boundary matrix d_k: rows are (k-1)-simplices, columns k-simplices,
/// both in lexicographic order. d_0 has no rows.
Matrix boundary_matrix(const SimplicialComplex& k, std::size_t dim, const PrimeField& field);

HomologyBasis homology(const SimplicialComplex& k, std::size_t degree, const PrimeField& field, bool reduced);

/// Bases for degrees 0..max_degree in one pass.
std::vector<HomologyBasis> homology_all(const SimplicialComplex& k, std::size_t max_degree, const PrimeField& field,
                                        bool reduced);

/// Image of a k-chain under a vertex map; degenerate simplices map to 0.
Chain push_forward(const SimplicialComplex& source, const SimplicialComplex& target,
                   const std::vector<std::size_t>& vertex_map, std::size_t dim, const Chain& chain,
                   const PrimeField& field);

/// Matrix (target.dimension() x source.dimension()) of the induced map.
Matrix induced_on_homology(const SimplicialComplex& source, const SimplicialComplex& target,
                           const std::vector<std::size_t>& vertex_map, const HomologyBasis& source_basis,
                           const HomologyBasis& target_basis);

Matrix induced_on_homology(const SimplicialMap& sm, const HomologyBasis& source_basis, const HomologyBasis& target_basis);

/// Per-slice bases (bases[i][k]) and the resulting modules for degrees 0..max_degree.
struct TowerHomology {
    std::vector<std::vector<HomologyBasis>> bases;
    std::vector<PersistenceModule> modules;
};

TowerHomology tower_homology(const ComplexTower& tower, std::size_t max_degree, const PrimeField& field, bool reduced);

/// Reduced Betti numbers of K in degrees -1..top; entry 0 is degree -1, which
/// is 1 exactly for the empty complex.
std::vector<std::size_t> reduced_betti(const SimplicialComplex& k, const PrimeField& field);

PersistenceModule homology_tower(const ComplexTower& tower, std::size_t degree, const PrimeField& field, bool reduced);

/// Modules for degrees 0..max_degree.
std::vector<PersistenceModule> homology_towers(const ComplexTower& tower, std::size_t max_degree,
                                               const PrimeField& field, bool reduced);

} // namespace pqm
