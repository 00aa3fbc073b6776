#pragma once

#include "pqm/homology.hpp"
#include "pqm/pmod.hpp"
#include "pqm/pposet.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pqm {

/// Degrees 0..kmax: point comparison for H_0, triviality above.
ExtNat acyclicity_defect(const std::vector<PersistenceModule>& homology);
ExtNat acyclicity_defect(const PersistencePoset& pp, const PrimeField& field, std::size_t kmax);

/// Top simplicial dimension of the order complexes (longest chain minus one).
std::size_t default_kmax(const PersistencePoset& pp);

struct TrackDefect {
    ElementTrack track;
    std::string label;  // name at birth, "@", birth index
    ExtNat epsilon;
    std::vector<ExtNat> per_degree;
};

std::vector<TrackDefect> fiber_defects(const PersistenceMap& f, const PrimeField& field, std::size_t kmax);

enum class Verdict { Holds, Violated, Vacuous };
std::string to_string(Verdict v);

struct TheoremCertificate {
    std::uint32_t field = 2;
    std::size_t kmax = 0;
    std::size_t m = 0;
    std::vector<TrackDefect> tracks;
    ExtNat epsilon;
    ExtNat bound;
    std::vector<ExtNat> distances;
    std::vector<Barcode> source_barcodes;
    std::vector<Barcode> target_barcodes;
    /// induced_ranks[k][i]: rank of H_k(Bf) at index i (diagnostic only).
    std::vector<std::vector<std::size_t>> induced_ranks;
    Verdict verdict = Verdict::Vacuous;
    /// max_k d_k / bound when the bound is finite and positive.
    std::optional<double> ratio;
};

/// kmax defaults to the top order-complex dimension over both posets.
TheoremCertificate verify_theorem(const PersistenceMap& f, const PrimeField& field,
                                  std::optional<std::size_t> kmax = std::nullopt);

struct PunctureReport {
    ExtNat below_defect;
    ExtNat above_defect;
    ExtNat epsilon;
    ExtNat bound;
    std::vector<ExtNat> distances;
    bool holds = true;
};

/// Throws HypothesisUnmet when both sides have infinite defect.
PunctureReport verify_puncture_lemma(const PersistencePoset& pp, const Removal& removal, const PrimeField& field,
                                     std::size_t kmax);

/// Same check on precomputed sides.
PunctureReport check_puncture(const PersistencePoset& larger, const PersistencePoset& smaller,
                              const PersistencePoset& below, const PersistencePoset& above, const PrimeField& field,
                              std::size_t kmax);

struct ChainSweepReport {
    std::size_t steps = 0;
    std::size_t unmet = 0;  // steps where both sides have infinite defect
    std::size_t violations = 0;
    std::vector<std::string> failures;
};

/// Puncture bound at every step of both chain filtrations.
ChainSweepReport verify_chain_steps(const PersistenceMap& f, const PrimeField& field, std::size_t kmax);

struct JoinReport {
    ExtNat defect_a;
    ExtNat defect_b;
    ExtNat defect_join;
    bool acyclicity_holds = true;
    bool kunneth_holds = true;
    std::vector<std::string> failures;
};

/// Slicewise field Kunneth identity for reduced homology of a join,
/// degrees -1 and up. Empty result means it holds.
std::vector<std::string> check_join_kunneth(const SimplicialComplex& a, const SimplicialComplex& b,
                                            const PrimeField& field);

JoinReport verify_join_acyclicity(const PersistencePoset& a, const PersistencePoset& b, const PrimeField& field,
                                  std::optional<std::size_t> kmax = std::nullopt);

struct CylinderReport {
    std::vector<ExtNat> distances;
    bool retraction_holds = true;
    std::size_t upsets_checked = 0;
    std::size_t upset_failures = 0;
};

CylinderReport verify_cylinder_retraction(const PersistenceMap& f, const PrimeField& field,
                                          std::optional<std::size_t> kmax = std::nullopt);

struct SesReport {
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::vector<std::string> failures;
};

SesReport verify_split_ses_properties(std::uint64_t seed, std::size_t count);

} // namespace pqm
