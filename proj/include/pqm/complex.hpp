#pragma once

#include "pqm/poset.hpp"
#include "pqm/pposet.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pqm {

/// Sorted vertex indices.
using Simplex = std::vector<std::size_t>;

/// Finite abstract simplicial complex stored as its full set of simplices.
///
/// Vertices are sorted identifiers; a simplex is a sorted list of vertex
/// indices. Simplices of each dimension are kept in lexicographic order, which
/// fixes the basis used for chains and boundary matrices.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Downward closure of `generators` (simplices given by vertex identifier).
    /// Every vertex appears as a 0-simplex. Throws UnknownVertex or DuplicateElement.
    SimplicialComplex(std::vector<std::string> vertices, const std::vector<std::vector<std::string>>& generators);

    /// Same, with generators given by vertex index.
    static SimplicialComplex from_indices(std::vector<std::string> vertices, const std::vector<Simplex>& generators);

    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::optional<std::size_t> vertex_index(std::string_view id) const;

    /// Number of dimensions present (top dimension + 1); 0 for the empty complex.
    std::size_t dimension_count() const noexcept { return by_dim_.size(); }
    const std::vector<Simplex>& simplices(std::size_t dim) const;
    std::size_t count(std::size_t dim) const { return simplices(dim).size(); }
    std::size_t size() const;
    bool empty() const noexcept { return vertices_.empty(); }

    /// Position of a simplex within its dimension, or nullopt.
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    /// Every simplex as a sorted list of identifiers; handy for set comparisons.
    std::vector<std::vector<std::string>> named_simplices() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.vertices_ == b.vertices_ && a.by_dim_ == b.by_dim_;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::map<Simplex, std::size_t>> lookup_;
};

/// Vertex assignment that sends simplices to simplices (collapses allowed).
struct SimplicialMap {
    SimplicialComplex source;
    SimplicialComplex target;
    std::vector<std::size_t> vertex_map;

    /// Throws NotSimplicial when some simplex image is missing from target.
    SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::vector<std::size_t> vertex_map);
};

/// Sorted, de-duplicated image of a simplex.
Simplex image_of(const Simplex& s, const std::vector<std::size_t>& vertex_map);

/// Complex tower over {0..T}, constant past T.
struct ComplexTower {
    std::vector<SimplicialComplex> complexes;
    std::vector<std::vector<std::size_t>> maps; // maps[i]: vertices of i -> vertices of i+1

    std::size_t max_index() const noexcept { return complexes.size() - 1; }
    std::size_t top_dimension() const;
};

/// Simplices are the nonempty chains of P; vertex i is element i.
SimplicialComplex order_complex(const FinitePoset& p);

SimplicialMap induced_map(const MonotoneMap& f);

SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l);

/// Copy with every vertex identifier prefixed.
SimplicialComplex relabel(const SimplicialComplex& k, std::string_view prefix);

/// Closed star and link of a vertex. Throw UnknownVertex.
SimplicialComplex star(const SimplicialComplex& k, std::string_view v);
SimplicialComplex link(const SimplicialComplex& k, std::string_view v);

/// Subcomplex spanned by the simplices avoiding a vertex.
SimplicialComplex deletion(const SimplicialComplex& k, std::string_view v);

ComplexTower order_complex_tower(const PersistencePoset& pp);

/// Slicewise join of two towers with equal T; vertices are tagged "A:" and "B:".
ComplexTower join_towers(const ComplexTower& a, const ComplexTower& b);

} // namespace pqm
