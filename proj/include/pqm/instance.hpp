#pragma once

#include "pqm/pposet.hpp"
#include "pqm/random.hpp"
#include "pqm/verifier.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace pqm {

using Json = nlohmann::json;

/// Affine index-to-time scale t = origin + step * i.
struct TimeScale {
    double origin = 0.0;
    double step = 1.0;

    double at(std::size_t i) const { return origin + step * static_cast<double>(i); }
    /// Durations (distances, defects) scale by step only.
    double span(std::uint64_t n) const { return step * static_cast<double>(n); }
};

struct InstanceDocument {
    PersistenceMap map;
    std::optional<TimeScale> scale;
};

inline constexpr std::string_view kInstanceFormat = "pqm-instance";
inline constexpr std::string_view kPosetFormat = "pqm-poset";
inline constexpr std::string_view kCoverFormat = "pqm-cover";
inline constexpr std::string_view kCertificateFormat = "pqm-certificate";
inline constexpr int kFormatVersion = 1;

/// Throws SchemaError (malformed document) or ValidationError (well-formed
/// but invalid; the message names the poset, slice or map at fault).
InstanceDocument parse_instance(std::string_view text);
InstanceDocument instance_from_json(const Json& doc);

/// Canonical form: sorted elements, closed relations as sorted pairs, sorted
/// map tables. serialize(parse(serialize(x))) == serialize(x).
std::string serialize_instance(const InstanceDocument& doc);
Json instance_to_json(const InstanceDocument& doc);

Json poset_to_json(const PersistencePoset& pp);
PersistencePoset poset_from_json(const Json& j, const std::string& where);

/// Standalone persistence poset document ("pqm-poset").
std::string serialize_poset(const PersistencePoset& pp);
PersistencePoset parse_poset(std::string_view text);

/// Named cover sets, each a list of point-id sets indexed 0..T.
struct CoverTower {
    std::map<std::string, std::vector<std::set<std::string>>> sets;

    std::size_t max_index() const;
};

CoverTower parse_cover(std::string_view text);
std::string serialize_cover(const CoverTower& cover);

/// Intersection poset of the cover at every index. Elements are the label
/// sets S (names joined by '+') with nonempty intersection at that index;
/// larger label sets sit lower. max_arity 0 means no limit. Throws NotNested.
PersistencePoset cover_to_pposet(const CoverTower& cover, std::size_t max_arity = 0);

InstanceDocument random_instance(std::uint64_t seed, const GeneratorLimits& limits);

Json to_json(ExtNat v);
Json to_json(const Barcode& b);
Json certificate_to_json(const TheoremCertificate& c, const std::optional<TimeScale>& scale);

} // namespace pqm
