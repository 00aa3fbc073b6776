#include "support.hpp"

#include "pqm/instance.hpp"

#include <bit>

using namespace pqm;

namespace {

const char* kMinimal = R"({
  "format": "pqm-instance", "version": 1,
  "X": {"slices": [{"elements": ["p"], "less": []}], "maps": []},
  "Y": {"slices": [{"elements": ["q"], "less": []}], "maps": []},
  "f": [{"p": "q"}]
})";

// X is a two-element chain mapped onto a two-element chain; slice 1 flips it.
const char* kFlipped = R"({
  "format": "pqm-instance", "version": 1,
  "X": {"slices": [{"elements": ["a", "b"], "less": [["a", "b"]]},
                   {"elements": ["a", "b"], "less": [["a", "b"]]}],
        "maps": [{"a": "a", "b": "b"}]},
  "Y": {"slices": [{"elements": ["u", "v"], "less": [["u", "v"]]},
                   {"elements": ["u", "v"], "less": [["u", "v"]]}],
        "maps": [{"u": "u", "v": "v"}]},
  "f": [{"a": "u", "b": "v"}, {"a": "v", "b": "u"}]
})";

CoverTower cover(std::map<std::string, std::vector<std::set<std::string>>> sets)
{
    return CoverTower{std::move(sets)};
}

} // namespace

TEST_CASE("instance parsing")
{
    const auto doc = parse_instance(kMinimal);
    CHECK(doc.map.max_index() == 0);
    CHECK(doc.map.source().slice(0).elements() == std::vector<std::string>{"p"});
    CHECK_FALSE(doc.scale.has_value());

    try {
        parse_instance(kFlipped);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ValidationError);
        CHECK(std::string(e.what()).find("f[1]") != std::string::npos);
    }

    CHECK(support::code_of([] { parse_instance("{"); }) == ErrorCode::SchemaError);
    CHECK(support::code_of([] { parse_instance(R"({"format": "pqm-poset", "version": 1})"); }) ==
          ErrorCode::SchemaError);
    CHECK(support::code_of([] { parse_instance(R"({"format": "pqm-instance", "version": 7})"); }) ==
          ErrorCode::SchemaError);

    // Y map sends u to a missing element.
    std::string partial = kMinimal;
    partial.replace(partial.find("\"f\": [{\"p\": \"q\"}]"), 18, "\"f\": [{\"p\": \"z\"}]");
    CHECK(support::code_of([&] { parse_instance(partial); }) == ErrorCode::ValidationError);

    std::string scaled = kMinimal;
    scaled.insert(scaled.rfind('}'), R"(, "scale": {"origin": 1.5, "step": 0.5})");
    const auto s = parse_instance(scaled);
    REQUIRE(s.scale.has_value());
    CHECK(s.scale->at(2) == doctest::Approx(2.5));
    std::string zero_step = kMinimal;
    zero_step.insert(zero_step.rfind('}'), R"(, "scale": {"origin": 0, "step": 0})");
    CHECK(support::code_of([&] { parse_instance(zero_step); }) == ErrorCode::ValidationError);
}

TEST_CASE("canonical round trip is bit exact")
{
    const auto once = serialize_instance(parse_instance(kMinimal));
    CHECK(serialize_instance(parse_instance(once)) == once);

    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        GeneratorLimits lim;
        lim.max_index = seed % 4;
        lim.shadow = seed % 3 == 0;
        auto doc = random_instance(seed, lim);
        if (seed % 2)
            doc.scale = TimeScale{0.25 * double(seed), 0.125};
        const auto text = serialize_instance(doc);
        const auto back = parse_instance(text);
        CHECK(serialize_instance(back) == text);
        CHECK(back.map.source() == doc.map.source());
        CHECK(back.map.target() == doc.map.target());
        CHECK(back.map.slices() == doc.map.slices());
        CHECK(parse_poset(serialize_poset(doc.map.target())) == doc.map.target());
    }
}

TEST_CASE("random instances")
{
    GeneratorLimits lim;
    CHECK(serialize_instance(random_instance(42, lim)) == serialize_instance(random_instance(42, lim)));

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        lim.max_index = seed % 6;
        const auto text = serialize_instance(random_instance(seed, lim));
        CHECK_NOTHROW(parse_instance(text));
        const auto m = parse_instance(text).map;
        for (std::size_t i = 0; i <= m.max_index(); ++i) {
            CHECK(m.target().slice(i).size() <= lim.max_slice);
            CHECK(m.source().slice(i).size() <= lim.max_slice);
        }
    }

    lim.max_index = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK(random_instance(seed, lim).map.max_index() == 0);
}

TEST_CASE("cover ingestion examples")
{
    const auto two = cover_to_pposet(cover({{"U1", {{"1"}, {"1", "2"}}}, {"U2", {{"3"}, {"2", "3"}}}}));
    CHECK(two.slice(0).elements() == std::vector<std::string>{"U1", "U2"});
    CHECK(two.slice(0).relation().empty());
    const auto& s1 = two.slice(1);
    CHECK(s1.elements() == std::vector<std::string>{"U1", "U1+U2", "U2"});
    CHECK(s1.less(s1.require("U1+U2"), s1.require("U1")));
    CHECK(s1.less(s1.require("U1+U2"), s1.require("U2")));
    CHECK(s1.relation().size() == 2);

    const auto one = cover_to_pposet(cover({{"U", {{"a"}, {"a"}, {"a", "b"}}}}));
    CHECK(one == PersistencePoset::constant(support::poset({"U"}), 2));

    CHECK(support::code_of([] { cover_to_pposet(cover({{"U", {{"a", "b"}, {"a"}}}})); }) ==
          ErrorCode::NotNested);

    // Arity cap drops the pairwise intersection.
    const auto capped = cover_to_pposet(cover({{"U1", {{"1", "2"}}}, {"U2", {{"2"}}}}), 1);
    CHECK(capped.slice(0).elements() == std::vector<std::string>{"U1", "U2"});

    const auto c = cover({{"A", {{}, {"x"}}}, {"B", {{"x"}, {"x"}}}});
    CHECK(parse_cover(serialize_cover(c)).sets == c.sets);
    const auto late = cover_to_pposet(c);
    CHECK(late.slice(0).size() == 1);
    CHECK(late.slice(1).size() == 3);
}

TEST_CASE("cover ingestion matches brute force over label subsets")
{
    Rng rng(11);
    for (int t = 0; t < 150; ++t) {
        const std::size_t n = uniform(rng, 1, 4), T = uniform(rng, 0, 3), points = uniform(rng, 1, 5);
        CoverTower c;
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::set<std::string>> seq;
            std::set<std::string> u;
            for (std::size_t i = 0; i <= T; ++i) {
                for (std::size_t p = 0; p < points; ++p)
                    if (chance(rng, 0.3))
                        u.insert(std::to_string(p));
                seq.push_back(u);
            }
            c.sets["S" + std::to_string(s)] = seq;
        }
        const std::size_t arity = uniform(rng, 0, 3);
        const auto pp = cover_to_pposet(c, arity);
        std::vector<std::string> names;
        for (const auto& [k, v] : c.sets)
            names.push_back(k);
        for (std::size_t i = 0; i <= T; ++i) {
            // Every nonempty label subset with nonempty intersection, by bitmask.
            std::map<std::string, unsigned> expected;
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
                if (arity && std::popcount(mask) > int(arity))
                    continue;
                std::map<std::string, std::size_t> hits;
                std::string label;
                for (std::size_t s = 0; s < n; ++s)
                    if (mask >> s & 1) {
                        label += (label.empty() ? "" : "+") + names[s];
                        for (const auto& p : c.sets[names[s]][i])
                            ++hits[p];
                    }
                for (const auto& [p, h] : hits)
                    if (h == std::size_t(std::popcount(mask))) {
                        expected[label] = mask;
                        break;
                    }
            }
            const auto& slice = pp.slice(i);
            REQUIRE(slice.size() == expected.size());
            for (std::size_t a = 0; a < slice.size(); ++a) {
                REQUIRE(expected.count(slice.name(a)));
                for (std::size_t b = 0; b < slice.size(); ++b) {
                    const unsigned ma = expected[slice.name(a)], mb = expected[slice.name(b)];
                    CHECK(slice.less(a, b) == (ma != mb && (ma & mb) == mb));
                }
            }
        }
    }
}

TEST_CASE("certificate json")
{
    const auto doc = parse_instance(kMinimal);
    const auto c = verify_theorem(doc.map, PrimeField(2));
    const auto j = certificate_to_json(c, TimeScale{10.0, 2.0});
    CHECK(j["format"] == "pqm-certificate");
    CHECK(j["verdict"] == "holds");
    CHECK(j.contains("scale"));
    CHECK(to_json(ExtNat::infinity()) == "inf");
    CHECK(to_json(ExtNat(3)) == 3);
}
