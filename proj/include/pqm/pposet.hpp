#pragma once

#include "pqm/poset.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pqm {

using IndexMap = std::vector<std::size_t>;

/// A functor {0..T} -> finite posets, extended constantly beyond T.
///
/// slices[i] is the poset at index i and maps[i] sends slices[i] into
/// slices[i+1]. Once a slice is nonempty every later slice is nonempty.
class PersistencePoset {
public:
    /// Single empty slice.
    PersistencePoset();

    /// Validates and stores; see validate_persistence_poset for the errors.
    PersistencePoset(std::vector<FinitePoset> slices, std::vector<IndexMap> maps);

    static PersistencePoset constant(const FinitePoset& p, std::size_t max_index);

    std::size_t max_index() const noexcept { return slices_.size() - 1; }
    std::size_t slice_count() const noexcept { return slices_.size(); }

    /// Slice i; indices past T return slice T.
    const FinitePoset& slice(std::size_t i) const { return slices_[std::min(i, max_index())]; }
    const std::vector<FinitePoset>& slices() const noexcept { return slices_; }
    const std::vector<IndexMap>& maps() const noexcept { return maps_; }

    /// Structure map i -> i+1 applied to x; identity for i >= T.
    std::size_t apply(std::size_t i, std::size_t x) const { return i < maps_.size() ? maps_[i][x] : x; }

    MonotoneMap structure_map(std::size_t i) const;

    /// Longest chain over all slices.
    std::size_t height() const;

    friend bool operator==(const PersistencePoset&, const PersistencePoset&) = default;

private:
    std::vector<FinitePoset> slices_;
    std::vector<IndexMap> maps_;
};

/// Throws ShapeMismatch, EmptyAfterNonempty, PartialStructureMap or
/// NonMonotoneStructureMap (message names the offending index).
void validate_persistence_poset(const std::vector<FinitePoset>& slices, const std::vector<IndexMap>& maps);

/// An element of a persistence poset: a fresh element and its images.
struct ElementTrack {
    std::size_t birth = 0;
    std::size_t initial = 0;
    /// trajectory[j - birth] is the image at index j, for birth <= j <= T.
    std::vector<std::size_t> trajectory;

    /// Image at index j (nullopt before birth, constant past T).
    std::optional<std::size_t> at(std::size_t j) const;

    friend bool operator==(const ElementTrack&, const ElementTrack&) = default;
};

/// One track per fresh element, ordered by birth and then by rank in the
/// persistent linear extension of the birth slice.
std::vector<ElementTrack> tracks(const PersistencePoset& pp);

/// Natural family of monotone maps between persistence posets with equal T.
class PersistenceMap {
public:
    /// Throws ShapeMismatch, PartialStructureMap, NotMonotone or NotNatural.
    PersistenceMap(PersistencePoset source, PersistencePoset target, std::vector<IndexMap> slices);

    static PersistenceMap identity(const PersistencePoset& pp);

    const PersistencePoset& source() const noexcept { return source_; }
    const PersistencePoset& target() const noexcept { return target_; }
    const std::vector<IndexMap>& slices() const noexcept { return slices_; }
    std::size_t max_index() const noexcept { return source_.max_index(); }

    std::size_t apply(std::size_t i, std::size_t x) const { return slices_[std::min(i, max_index())][x]; }
    MonotoneMap slice_map(std::size_t i) const;

private:
    PersistencePoset source_;
    PersistencePoset target_;
    std::vector<IndexMap> slices_;
};

/// Persistence subposet together with the ambient index of each element.
struct Subposet {
    PersistencePoset poset;
    std::vector<IndexMap> ambient;
};

/// Keeps the marked elements of every slice. Throws NotASubposet when a kept
/// element maps outside the kept set.
Subposet restrict_to(const PersistencePoset& pp, const std::vector<std::vector<char>>& keep);

/// Componentwise elements comparable with the track (strictly or weakly,
/// below or above); empty before the track is born. Throws NotASubposet when
/// a strictly comparable element merges into the track.
PersistencePoset sub_downset(const PersistencePoset& pp, const ElementTrack& y, bool strict, Direction direction);

/// Componentwise preimage of the weak down-set of y in the target.
PersistencePoset fiber(const PersistenceMap& f, const ElementTrack& y);

/// Total orders (element indices, least first) for every slice such that each
/// structure map is monotone for them. Built right to left: the last slice is
/// extended directly, earlier slices inherit the order of their images.
std::vector<std::vector<std::size_t>> persistence_linear_extension(const PersistencePoset& pp);

struct PersistenceCylinder {
    PersistencePoset poset;
    PersistenceMap include_source;
    PersistenceMap include_target;
};

PersistenceCylinder persistence_mapping_cylinder(const PersistenceMap& f);

/// At most one removed element per slice.
using Removal = std::vector<std::optional<std::size_t>>;

/// Removes the marked elements. Throws NotClosed when a surviving element maps
/// into the removed set.
PersistencePoset puncture(const PersistencePoset& pp, const Removal& removal);

/// Both sides of the link of a removed element run.
///
/// The removal must be a contiguous run along one trajectory: it starts at
/// some index b, follows the structure maps, and stops at some q. The sides
/// are taken against the full trajectory, strictly while the element is
/// removed and weakly from q on (where the removed run has merged into a
/// surviving element). Throws InvalidRemoval or NotClosed.
struct PunctureSides {
    PersistencePoset below;
    PersistencePoset above;
};
PunctureSides puncture_sides(const PersistencePoset& pp, const Removal& removal);

struct ChainStep {
    std::size_t track = 0;     // position of the track in its enumeration
    PersistencePoset larger;   // before removal
    PersistencePoset smaller;  // after removal
    Removal removal;           // indices into `larger`
    PersistencePoset below;
    PersistencePoset above;
};

/// The two interpolation chains inside the persistence mapping cylinder.
///
/// y_chain[r] is Y together with the first r tracks of X, so y_chain.front()
/// is Y and y_chain.back() is M(f). x_chain[r] is X together with the tracks
/// of Y after the r-th, so x_chain.front() is M(f) and x_chain.back() is X.
/// Each step removes whatever part of one track is not covered by the tracks
/// that remain, which is a prefix of its trajectory.
struct ChainFiltrations {
    PersistenceCylinder cylinder;
    std::vector<PersistencePoset> y_chain;
    std::vector<PersistencePoset> x_chain;
    std::vector<ChainStep> y_steps;
    std::vector<ChainStep> x_steps;
};

ChainFiltrations chain_filtrations(const PersistenceMap& f);

} // namespace pqm
