#include "support.hpp"

#include "pqm/pposet.hpp"

using namespace pqm;
using support::poset;
using support::pposet;

namespace {

std::vector<std::string> slice_names(const PersistencePoset& pp, std::size_t i)
{
    return pp.slice(i).elements();
}

std::vector<std::string> ordered(const PersistencePoset& pp, std::size_t i, const std::vector<std::size_t>& order)
{
    std::vector<std::string> out;
    for (auto x : order)
        out.push_back(pp.slice(i).name(x));
    return out;
}

ElementTrack track_named(const std::vector<ElementTrack>& ts, const PersistencePoset& pp, const std::string& n)
{
    for (const auto& t : ts)
        if (pp.slice(t.birth).name(t.initial) == n)
            return t;
    FAIL("no track named " << n);
    return ts.front();
}

// X_0 = {a, b}, X_1 = {z}, both map to z.
PersistencePoset merge_pair()
{
    return pposet({poset({"a", "b"}), poset({"z"})}, {{{"a", "z"}, {"b", "z"}}});
}

} // namespace

TEST_CASE("validation")
{
    CHECK_NOTHROW(pposet({support::circle()}));
    CHECK_NOTHROW(pposet({poset({"a", "b"}), poset({"u", "v"}, {{"u", "v"}})}, {{{"a", "v"}, {"b", "u"}}}));
    CHECK(support::code_of([] { PersistencePoset({poset({"a"}), poset({})}, {IndexMap{0}}); }) ==
          ErrorCode::EmptyAfterNonempty);
    CHECK(support::code_of([] { PersistencePoset({poset({"a", "b"}), poset({"u"})}, {IndexMap{0}}); }) ==
          ErrorCode::PartialStructureMap);
    CHECK(support::code_of([] {
              PersistencePoset({poset({"a", "b"}, {{"a", "b"}}), poset({"u", "v"}, {{"u", "v"}})}, {IndexMap{1, 0}});
          }) == ErrorCode::NonMonotoneStructureMap);
    CHECK(support::code_of([] { PersistencePoset({poset({"a"}), poset({"u"})}, {}); }) == ErrorCode::ShapeMismatch);
    // Empty slices may precede nonempty ones.
    CHECK_NOTHROW(PersistencePoset({poset({}), poset({"a"})}, {IndexMap{}}));
}

TEST_CASE("constant extension beyond the last index")
{
    const auto pp = pposet({poset({"a"}), poset({"a", "b"})}, {{{"a", "a"}}});
    CHECK(pp.slice(7).elements() == pp.slice(1).elements());
    CHECK(pp.apply(5, 1) == 1);
}

TEST_CASE("tracks")
{
    const auto pp = pposet({poset({"a"}), poset({"a", "b"})}, {{{"a", "a"}}});
    const auto ts = tracks(pp);
    REQUIRE(ts.size() == 2);
    CHECK(ts[0].birth == 0);
    CHECK(pp.slice(0).name(ts[0].initial) == "a");
    CHECK(ts[1].birth == 1);
    CHECK(pp.slice(1).name(ts[1].initial) == "b");

    CHECK(tracks(PersistencePoset::constant(support::circle(), 3)).size() == 4);

    const auto merged = merge_pair();
    const auto mt = tracks(merged);
    REQUIRE(mt.size() == 2);
    CHECK(merged.slice(0).name(mt[0].initial) == "a");
    CHECK(merged.slice(0).name(mt[1].initial) == "b");
    CHECK(*mt[0].at(1) == *mt[1].at(1));
    CHECK(merged.slice(1).name(*mt[0].at(1)) == "z");
}

TEST_CASE("tracks cover every element and follow the structure maps")
{
    Rng rng(21);
    for (int t = 0; t < 200; ++t) {
        const auto pp = random_persistence_poset(rng, uniform(rng, 0, 5), 6, 6);
        const auto ts = tracks(pp);
        for (std::size_t i = 0; i <= pp.max_index(); ++i) {
            std::vector<char> seen(pp.slice(i).size(), 0);
            for (const auto& tr : ts)
                if (auto x = tr.at(i))
                    seen[*x] = 1;
            CHECK(std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }));
        }
        for (const auto& tr : ts) {
            for (std::size_t j = tr.birth; j < pp.max_index(); ++j)
                CHECK(*tr.at(j + 1) == pp.apply(j, *tr.at(j)));
            if (tr.birth > 0)
                for (std::size_t x = 0; x < pp.slice(tr.birth - 1).size(); ++x)
                    CHECK(pp.apply(tr.birth - 1, x) != tr.initial);
        }
    }
}

TEST_CASE("sub_downset")
{
    const auto chain = PersistencePoset::constant(poset({"a", "b"}, {{"a", "b"}}), 2);
    const auto below_b = sub_downset(chain, track_named(tracks(chain), chain, "b"), true, Direction::Below);
    for (std::size_t i = 0; i <= 2; ++i)
        CHECK(slice_names(below_b, i) == std::vector<std::string>{"a"});

    const auto s = PersistencePoset::constant(support::circle(), 1);
    const auto weak = sub_downset(s, track_named(tracks(s), s, "c"), false, Direction::Below);
    CHECK(slice_names(weak, 1) == std::vector<std::string>{"a", "b", "c"});
    CHECK(weak.slice(1).relation().size() == 2);

    const auto late = pposet({poset({"a"}), poset({"a"}), poset({"a", "y"}, {{"a", "y"}})},
                             {{{"a", "a"}}, {{"a", "a"}}});
    const auto d = sub_downset(late, track_named(tracks(late), late, "y"), false, Direction::Below);
    CHECK(d.slice(0).empty());
    CHECK(d.slice(1).empty());
    CHECK(slice_names(d, 2) == std::vector<std::string>{"a", "y"});
}

TEST_CASE("sub_downset refuses strict sides that merge into the track")
{
    // a < b at index 0 and both merge into z: strictly below b is {a} at 0 but
    // nothing at 1, so the strict down-set is not closed.
    const auto pp = pposet({poset({"a", "b"}, {{"a", "b"}}), poset({"z"})}, {{{"a", "z"}, {"b", "z"}}});
    const auto& tb = track_named(tracks(pp), pp, "b");
    CHECK(support::code_of([&] { sub_downset(pp, tb, true, Direction::Below); }) == ErrorCode::NotASubposet);
    CHECK_NOTHROW(sub_downset(pp, tb, false, Direction::Below));
}

TEST_CASE("fibers")
{
    const auto y = PersistencePoset::constant(poset({"u", "v"}, {{"u", "v"}}), 1);
    const auto x = PersistencePoset::constant(poset({"p", "q"}), 1);
    const PersistenceMap f(x, y, {IndexMap{0, 1}, IndexMap{0, 1}});
    const auto yt = tracks(y);
    CHECK(slice_names(fiber(f, track_named(yt, y, "u")), 0) == std::vector<std::string>{"p"});
    CHECK(slice_names(fiber(f, track_named(yt, y, "v")), 1) == std::vector<std::string>{"p", "q"});

    const auto pp = pposet({poset({"a"}), poset({"a", "b"}, {{"a", "b"}})}, {{{"a", "a"}}});
    const auto id = PersistenceMap::identity(pp);
    for (const auto& t : tracks(pp))
        CHECK(fiber(id, t) == sub_downset(pp, t, false, Direction::Below));

    const auto pt = PersistencePoset::constant(poset({"*"}), 1);
    const PersistenceMap c(x, pt, {IndexMap{0, 0}, IndexMap{0, 0}});
    CHECK(fiber(c, tracks(pt)[0]) == x);
}

TEST_CASE("persistence map checks")
{
    const auto y = PersistencePoset::constant(poset({"u", "v"}), 1);
    const auto x = PersistencePoset::constant(poset({"p"}), 1);
    CHECK(support::code_of([&] { PersistenceMap(x, y, {IndexMap{0}, IndexMap{1}}); }) == ErrorCode::NotNatural);
    CHECK(support::code_of([&] { PersistenceMap(x, y, {IndexMap{0}}); }) == ErrorCode::ShapeMismatch);
    const auto chain = PersistencePoset::constant(poset({"a", "b"}, {{"a", "b"}}), 0);
    const auto anti = PersistencePoset::constant(poset({"u", "v"}), 0);
    CHECK(support::code_of([&] { PersistenceMap(chain, anti, {IndexMap{0, 1}}); }) == ErrorCode::NotMonotone);
}

TEST_CASE("persistent linear extension")
{
    const auto pp = pposet({poset({"a", "b"}), poset({"u", "v"}, {{"u", "v"}})}, {{{"a", "v"}, {"b", "u"}}});
    const auto orders = persistence_linear_extension(pp);
    CHECK(ordered(pp, 0, orders[0]) == std::vector<std::string>{"b", "a"});
    CHECK(ordered(pp, 1, orders[1]) == std::vector<std::string>{"u", "v"});

    const auto m = merge_pair();
    const auto mo = persistence_linear_extension(m);
    CHECK(ordered(m, 0, mo[0]) == std::vector<std::string>{"a", "b"});
    CHECK(ordered(m, 1, mo[1]) == std::vector<std::string>{"z"});

    const auto chain = PersistencePoset::constant(poset({"a", "b", "c"}, {{"b", "a"}, {"a", "c"}}), 0);
    CHECK(ordered(chain, 0, persistence_linear_extension(chain)[0]) == std::vector<std::string>{"b", "a", "c"});
}

TEST_CASE("mapping cylinder of persistence posets")
{
    const auto x = pposet({poset({"a"}), poset({"a"})}, {{{"a", "a"}}});
    const auto y = PersistencePoset::constant(poset({"b"}), 1);
    const PersistenceMap f(x, y, {IndexMap{0}, IndexMap{0}});
    const auto cyl = persistence_mapping_cylinder(f);
    for (std::size_t i = 0; i <= 1; ++i) {
        CHECK(slice_names(cyl.poset, i) == std::vector<std::string>{"X:a", "Y:b"});
        CHECK(cyl.poset.slice(i).less(0, 1));
    }

    const auto empty = PersistencePoset::constant(FinitePoset{}, 1);
    const PersistenceMap g(empty, y, {IndexMap{}, IndexMap{}});
    const auto c2 = persistence_mapping_cylinder(g);
    CHECK(slice_names(c2.poset, 0) == std::vector<std::string>{"Y:b"});
}

TEST_CASE("cylinder contains Y and puts each x below f(x)")
{
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        GeneratorLimits lim;
        lim.max_index = uniform(rng, 0, 4);
        const auto f = random_persistence_map(rng, lim);
        const auto cyl = persistence_mapping_cylinder(f);
        for (std::size_t i = 0; i <= f.max_index(); ++i) {
            const auto& ys = f.target().slice(i);
            const auto& cs = cyl.poset.slice(i);
            for (std::size_t a = 0; a < ys.size(); ++a)
                for (std::size_t b = 0; b < ys.size(); ++b)
                    CHECK(cs.less(cyl.include_target.apply(i, a), cyl.include_target.apply(i, b)) == ys.less(a, b));
            for (std::size_t x = 0; x < f.source().slice(i).size(); ++x)
                CHECK(cs.less(cyl.include_source.apply(i, x), cyl.include_target.apply(i, f.apply(i, x))));
        }
    }
}

TEST_CASE("puncture")
{
    const auto chain = PersistencePoset::constant(poset({"a", "t"}, {{"a", "t"}}), 1);
    const auto p = puncture(chain, {std::size_t{1}, std::size_t{1}});
    CHECK(slice_names(p, 0) == std::vector<std::string>{"a"});
    CHECK(slice_names(p, 1) == std::vector<std::string>{"a"});

    const auto m = merge_pair();
    CHECK(support::code_of([&] { puncture(m, {std::size_t{0}, std::size_t{0}}); }) == ErrorCode::NotClosed);
    const auto ok = puncture(m, {std::size_t{1}, std::nullopt});
    CHECK(slice_names(ok, 0) == std::vector<std::string>{"a"});
    CHECK(slice_names(ok, 1) == std::vector<std::string>{"z"});
}

TEST_CASE("puncture sides")
{
    const auto chain = PersistencePoset::constant(poset({"a", "t"}, {{"a", "t"}}), 1);
    const auto sides = puncture_sides(chain, {std::size_t{1}, std::size_t{1}});
    CHECK(slice_names(sides.below, 0) == std::vector<std::string>{"a"});
    CHECK(sides.above.slice(1).empty());

    // Truncated removal: b is removed at 0 only and merges into z at 1; the
    // sides are strict at 0 and weak at 1.
    const auto m = merge_pair();
    const auto s2 = puncture_sides(m, {std::size_t{1}, std::nullopt});
    CHECK(s2.below.slice(0).empty());
    CHECK(slice_names(s2.below, 1) == std::vector<std::string>{"z"});

    CHECK(support::code_of([&] { puncture_sides(chain, {std::nullopt, std::nullopt}); }) == ErrorCode::InvalidRemoval);
    // A fresh element n appears at index 2 (index 1 in the shorter poset).
    const auto late = support::pposet({poset({"a"}), poset({"a"}), poset({"a", "n"})}, {{{"a", "a"}}, {{"a", "a"}}});
    CHECK(support::code_of([&] { puncture_sides(late, {std::size_t{0}, std::nullopt, std::size_t{1}}); }) ==
          ErrorCode::InvalidRemoval);
    const auto jump = support::pposet({poset({"a"}), poset({"a", "n"})}, {{{"a", "a"}}});
    CHECK(support::code_of([&] { puncture_sides(jump, {std::size_t{0}, std::size_t{1}}); }) ==
          ErrorCode::InvalidRemoval);
    // Closure is checked first.
    const auto two = PersistencePoset::constant(poset({"a", "b"}), 2);
    CHECK(support::code_of([&] { puncture_sides(two, {std::size_t{0}, std::nullopt, std::size_t{0}}); }) ==
          ErrorCode::NotClosed);
}

TEST_CASE("chain filtrations")
{
    SUBCASE("empty source")
    {
        const auto y = PersistencePoset::constant(poset({"b"}), 1);
        const auto x = PersistencePoset::constant(FinitePoset{}, 1);
        const auto cf = chain_filtrations(PersistenceMap(x, y, {IndexMap{}, IndexMap{}}));
        CHECK(cf.y_chain.size() == 1);
        CHECK(cf.y_chain.front() == cf.cylinder.poset);
        CHECK(cf.x_chain.size() == 2);
        CHECK(cf.x_chain.back().slice(0).empty());
    }
    SUBCASE("one track over one track")
    {
        const auto y = PersistencePoset::constant(poset({"b"}), 1);
        const auto x = PersistencePoset::constant(poset({"a"}), 1);
        const auto cf = chain_filtrations(PersistenceMap(x, y, {IndexMap{0}, IndexMap{0}}));
        CHECK(cf.y_chain.size() == 2);
        CHECK(cf.x_chain.size() == 2);
        CHECK(cf.y_chain.back() == cf.cylinder.poset);
        CHECK(cf.x_chain.front() == cf.cylinder.poset);
        CHECK(slice_names(cf.x_chain.back(), 1) == std::vector<std::string>{"X:a"});
    }
    SUBCASE("merging source tracks remove truncated trajectories")
    {
        const auto x = merge_pair();
        const auto y = PersistencePoset::constant(poset({"w"}), 1);
        const auto cf = chain_filtrations(PersistenceMap(x, y, {IndexMap{0, 0}, IndexMap{0}}));
        REQUIRE(cf.y_steps.size() == 2);
        const auto& second = cf.y_steps[1];
        CHECK(second.removal[0].has_value());
        CHECK_FALSE(second.removal[1].has_value());
        CHECK_NOTHROW(puncture(second.larger, second.removal));
        CHECK(puncture(second.larger, second.removal) == second.smaller);
    }
}

TEST_CASE("chain steps are closed punctures on random instances")
{
    Rng rng(8);
    for (int t = 0; t < 150; ++t) {
        GeneratorLimits lim;
        lim.max_index = uniform(rng, 0, 5);
        const auto f = random_persistence_map(rng, lim);
        const auto cf = chain_filtrations(f);
        CHECK(cf.y_chain.size() == tracks(f.source()).size() + 1);
        CHECK(cf.x_chain.size() == tracks(f.target()).size() + 1);
        for (std::size_t i = 0; i <= f.max_index(); ++i)
            CHECK(cf.y_chain.front().slice(i).size() == f.target().slice(i).size());
        for (const auto* steps : {&cf.y_steps, &cf.x_steps})
            for (const auto& s : *steps)
                CHECK(puncture(s.larger, s.removal) == s.smaller);
    }
}

TEST_CASE("persistent linear extension is total, respects order and maps, and is deterministic")
{
    Rng rng(13);
    for (int t = 0; t < 300; ++t) {
        const auto pp = random_persistence_poset(rng, uniform(rng, 0, 5), 6, 6);
        const auto orders = persistence_linear_extension(pp);
        std::vector<std::vector<std::size_t>> pos;
        for (std::size_t i = 0; i <= pp.max_index(); ++i) {
            REQUIRE(orders[i].size() == pp.slice(i).size());
            std::vector<std::size_t> p(orders[i].size());
            for (std::size_t k = 0; k < orders[i].size(); ++k)
                p[orders[i][k]] = k;
            for (auto [a, b] : pp.slice(i).relation())
                CHECK(p[a] < p[b]);
            pos.push_back(p);
        }
        for (std::size_t i = 0; i < pp.max_index(); ++i)
            for (std::size_t a = 0; a < pp.slice(i).size(); ++a)
                for (std::size_t b = 0; b < pp.slice(i).size(); ++b)
                    if (pos[i][a] < pos[i][b])
                        CHECK(pos[i + 1][pp.apply(i, a)] <= pos[i + 1][pp.apply(i, b)]);
        CHECK(persistence_linear_extension(pp) == orders);
    }
}
