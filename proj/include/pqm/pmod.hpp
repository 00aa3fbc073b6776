#pragma once

#include "pqm/field.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace pqm {

/// A non-negative integer or infinity.
class ExtNat {
public:
    constexpr ExtNat() = default;
    constexpr ExtNat(std::uint64_t v) : value_(v) {} // NOLINT(google-explicit-constructor)

    static constexpr ExtNat infinity() { return ExtNat(kInf); }

    constexpr bool is_infinite() const noexcept { return value_ == kInf; }
    constexpr bool is_finite() const noexcept { return value_ != kInf; }
    std::uint64_t value() const;

    friend constexpr auto operator<=>(ExtNat, ExtNat) = default;

    friend constexpr ExtNat operator+(ExtNat a, ExtNat b)
    {
        return a.is_infinite() || b.is_infinite() ? infinity() : ExtNat(a.value_ + b.value_);
    }
    /// 0 * inf = 0.
    friend constexpr ExtNat operator*(std::uint64_t k, ExtNat a)
    {
        if (k == 0)
            return ExtNat(0);
        return a.is_infinite() ? infinity() : ExtNat(k * a.value_);
    }

    std::string to_string() const;

private:
    static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t value_ = 0;
};

/// Half-open interval [birth, death); death is infinite for essential classes.
struct Bar {
    std::size_t birth = 0;
    ExtNat death;

    ExtNat length() const { return death.is_infinite() ? ExtNat::infinity() : ExtNat(death.value() - birth); }
    bool contains(std::size_t i) const { return birth <= i && ExtNat(i) < death; }

    friend auto operator<=>(const Bar&, const Bar&) = default;
};

/// Multiset of bars, kept sorted.
using Barcode = std::vector<Bar>;

void normalize(Barcode& b);
std::string to_string(const Barcode& b);

/// Vector spaces over F_p indexed by 0..T with transition matrices;
/// identity transitions past T.
class PersistenceModule {
public:
    PersistenceModule(PrimeField field, std::vector<std::size_t> dims, std::vector<Matrix> transitions);

    static PersistenceModule zero(PrimeField field, std::size_t max_index);

    /// Direct sum of interval modules.
    static PersistenceModule from_barcode(PrimeField field, std::size_t max_index, const Barcode& bars);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t max_index() const noexcept { return dims_.size() - 1; }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t dim(std::size_t i) const { return dims_[std::min(i, max_index())]; }
    const std::vector<Matrix>& transitions() const noexcept { return transitions_; }

    /// Composite transition M_i -> M_j for i <= j (any j; identity past T).
    Matrix composite(std::size_t i, std::size_t j) const;

    /// Same module with the basis at each index changed by an invertible matrix.
    PersistenceModule change_basis(const std::vector<Matrix>& bases) const;

private:
    PrimeField field_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> transitions_;
};

/// r[i][j] = rank(M_i -> M_j) for 0 <= i <= j <= T+1; entries with i > j are 0.
std::vector<std::vector<std::size_t>> rank_invariant(const PersistenceModule& m);

/// Interval decomposition read off the rank invariant. Throws
/// NegativeMultiplicity if the inclusion-exclusion produces a negative count.
Barcode barcode(const PersistenceModule& m);

/// Every bar has length <= 2*eps.
bool eps_trivial(const Barcode& b, std::uint64_t eps);
bool eps_trivial(const PersistenceModule& m, std::uint64_t eps);

/// Same question answered by checking that every (2*eps)-fold composite is zero.
bool eps_trivial_by_nilpotency(const PersistenceModule& m, std::uint64_t eps);

/// Least eps with eps_trivial; infinite when an essential bar exists.
ExtNat triviality_defect(const Barcode& b);
ExtNat triviality_defect(const PersistenceModule& m);

PersistenceModule direct_sum(const PersistenceModule& a, const PersistenceModule& b);

/// True when a matching of the two barcodes exists where matched bars have
/// endpoints within eps and every unmatched bar has length <= 2*eps.
bool bottleneck_feasible(const Barcode& a, const Barcode& b, std::uint64_t eps);

/// Least integer eps with bottleneck_feasible; infinite when the essential
/// bar counts differ.
ExtNat bottleneck_distance(const Barcode& a, const Barcode& b);

/// Exhaustive search for an eps-interleaving. Throws TooLarge when either
/// morphism family has more than 2^20 candidates.
bool interleaving_bruteforce(const PersistenceModule& m, const PersistenceModule& n, std::uint64_t eps);

/// Least eps accepted by interleaving_bruteforce, searching up to T + 1.
ExtNat interleaving_distance_bruteforce(const PersistenceModule& m, const PersistenceModule& n);

/// Bottleneck distance to the constant module of a point, {[0, inf)}.
ExtNat point_comparison_defect(const Barcode& b);
ExtNat point_comparison_defect(const PersistenceModule& m);

} // namespace pqm
