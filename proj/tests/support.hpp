#pragma once

#include "pqm/error.hpp"
#include "pqm/pposet.hpp"
#include "pqm/random.hpp"

#include <doctest.h>

#include <algorithm>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace support {

using Pairs = std::vector<std::pair<std::string, std::string>>;

inline pqm::FinitePoset poset(std::vector<std::string> elements, Pairs less = {})
{
    return pqm::FinitePoset(std::move(elements), less);
}

/// Index map from a name table.
inline pqm::IndexMap table(const pqm::FinitePoset& from, const pqm::FinitePoset& to,
                           const std::map<std::string, std::string>& t)
{
    pqm::IndexMap m(from.size());
    for (const auto& [a, b] : t)
        m[from.require(a)] = to.require(b);
    return m;
}

inline pqm::PersistencePoset pposet(std::vector<pqm::FinitePoset> slices,
                                    const std::vector<std::map<std::string, std::string>>& maps = {})
{
    std::vector<pqm::IndexMap> ms;
    for (std::size_t i = 0; i < maps.size(); ++i)
        ms.push_back(table(slices[i], slices[i + 1], maps[i]));
    return pqm::PersistencePoset(std::move(slices), std::move(ms));
}

/// Random poset on n elements "e0".."e{n-1}" with forward pairs in a shuffled order.
inline pqm::FinitePoset random_poset(pqm::Rng& rng, std::size_t n, double density)
{
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k)
        names.push_back("e" + std::to_string(k));
    std::vector<std::string> order = names;
    std::shuffle(order.begin(), order.end(), rng);
    Pairs pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (pqm::chance(rng, density))
                pairs.emplace_back(order[a], order[b]);
    return pqm::FinitePoset(names, pairs);
}

template <class Fn>
pqm::ErrorCode code_of(Fn&& fn)
{
    try {
        fn();
    } catch (const pqm::Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return pqm::ErrorCode::SchemaError;
}

/// The "circle poset": two minima below two maxima.
inline pqm::FinitePoset circle()
{
    return poset({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

} // namespace support
