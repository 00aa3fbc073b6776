#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pqm {

/// A finite partial order on string identifiers.
///
/// Elements are kept sorted by identifier, so element index order is the
/// lexicographic identifier order. The strict relation is stored transitively
/// closed as an n x n table.
class FinitePoset {
public:
    FinitePoset() = default;

    /// Builds the poset generated by `strict_pairs` (a, b) meaning a < b.
    /// Throws DuplicateElement, UnknownElement or CycleError.
    FinitePoset(std::vector<std::string> elements,
                const std::vector<std::pair<std::string, std::string>>& strict_pairs);

    /// Index-based constructor. `elements` must already be sorted and distinct;
    /// `less` is an n*n row-major table that gets transitively closed.
    static FinitePoset from_table(std::vector<std::string> elements, std::vector<char> less);

    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    const std::vector<std::string>& elements() const noexcept { return elements_; }
    const std::string& name(std::size_t i) const { return elements_[i]; }
    std::optional<std::size_t> index_of(std::string_view id) const;
    std::size_t require(std::string_view id) const;

    bool less(std::size_t a, std::size_t b) const { return less_[a * size() + b] != 0; }
    bool less_equal(std::size_t a, std::size_t b) const { return a == b || less(a, b); }
    bool comparable(std::size_t a, std::size_t b) const { return less_equal(a, b) || less(b, a); }

    /// All pairs (a, b) with a < b, in lexicographic index order.
    std::vector<std::pair<std::size_t, std::size_t>> relation() const;

    /// Induced subposet on the given (sorted, distinct) indices.
    FinitePoset induced(std::span<const std::size_t> subset) const;

    /// Length of the longest chain (number of elements).
    std::size_t height() const;

    friend bool operator==(const FinitePoset&, const FinitePoset&) = default;

private:
    std::vector<std::string> elements_;
    std::vector<char> less_;
};

/// Total assignment between two finite posets. Monotonicity is not enforced
/// on construction; see is_monotone.
struct MonotoneMap {
    FinitePoset source;
    FinitePoset target;
    std::vector<std::size_t> image;

    /// Throws PartialStructureMap unless `image` is total with values in target.
    MonotoneMap(FinitePoset source, FinitePoset target, std::vector<std::size_t> image);

    static MonotoneMap identity(const FinitePoset& p);

    std::size_t operator()(std::size_t x) const { return image[x]; }
};

bool is_monotone(const MonotoneMap& f);

/// True when `image` (a total assignment) preserves order from source to target.
bool is_monotone(const FinitePoset& source, const FinitePoset& target, std::span<const std::size_t> image);

enum class Direction { Below, Above };

/// Induced subposet of elements strictly (or weakly) below/above x.
FinitePoset downset(const FinitePoset& p, std::string_view x, bool strict, Direction direction);

/// Indices of the elements compared by `downset`, ascending.
std::vector<std::size_t> downset_indices(const FinitePoset& p, std::size_t x, bool strict, Direction direction);

/// Stable topological sort: repeatedly takes the available minimal element
/// with the smallest identifier. Returns element indices.
std::vector<std::size_t> linear_extension(const FinitePoset& p);

struct PosetCylinder {
    FinitePoset poset;
    MonotoneMap include_source;
    MonotoneMap include_target;
};

/// Poset on X ⊔ Y (identifiers prefixed "X:" and "Y:") with x < y whenever f(x) <= y.
PosetCylinder mapping_cylinder(const MonotoneMap& f);

inline constexpr std::string_view kSourceTag = "X:";
inline constexpr std::string_view kTargetTag = "Y:";

} // namespace pqm
