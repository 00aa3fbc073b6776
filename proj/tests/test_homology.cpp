#include "oracles.hpp"
#include "support.hpp"

#include "pqm/homology.hpp"
#include "pqm/verifier.hpp"

using namespace pqm;
using support::poset;

namespace {

FinitePoset cone_over_circle()
{
    return poset({"a", "b", "c", "d", "top"},
                 {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "top"}, {"d", "top"}});
}

std::vector<std::size_t> dims(const SimplicialComplex& k, const PrimeField& f, bool reduced, std::size_t top)
{
    std::vector<std::size_t> out;
    for (const auto& h : homology_all(k, top, f, reduced))
        out.push_back(h.dimension());
    return out;
}

} // namespace

TEST_CASE("boundary matrices")
{
    const PrimeField f3(3);
    const auto edge = order_complex(poset({"a", "b"}, {{"a", "b"}}));
    const auto d1 = boundary_matrix(edge, 1, f3);
    REQUIRE(d1.rows() == 2);
    REQUIRE(d1.cols() == 1);
    CHECK(d1(0, 0) == 2);
    CHECK(d1(1, 0) == 1);

    const auto c4 = order_complex(support::circle());
    const auto m = boundary_matrix(c4, 1, PrimeField(2));
    CHECK(m.rows() == 4);
    CHECK(m.cols() == 4);
    CHECK(rank(PrimeField(2), m) == 3);

    const auto e = boundary_matrix(SimplicialComplex{}, 1, PrimeField(2));
    CHECK(e.rows() == 0);
    CHECK(e.cols() == 0);
}

TEST_CASE("boundary of a boundary vanishes")
{
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        const PrimeField f(t % 2 ? 3 : 5);
        const auto k = order_complex(support::random_poset(rng, uniform(rng, 0, 7), 0.5));
        for (std::size_t d = 1; d + 1 < k.dimension_count(); ++d)
            CHECK(multiply(f, boundary_matrix(k, d, f), boundary_matrix(k, d + 1, f)).is_zero());
    }
}

TEST_CASE("homology of small complexes")
{
    const PrimeField f(2);
    const auto pt = order_complex(poset({"*"}));
    CHECK(dims(pt, f, false, 2) == std::vector<std::size_t>{1, 0, 0});
    CHECK(dims(pt, f, true, 2) == std::vector<std::size_t>{0, 0, 0});

    const auto c4 = order_complex(support::circle());
    CHECK(homology(c4, 1, f, true).dimension() == 1);
    CHECK(homology(c4, 0, f, true).dimension() == 0);

    const auto cone = order_complex(cone_over_circle());
    CHECK(dims(cone, f, true, 3) == std::vector<std::size_t>{0, 0, 0, 0});

    // Two points: one reduced class in degree 0.
    CHECK(homology(order_complex(poset({"p", "q"})), 0, f, true).dimension() == 1);
    CHECK(homology(SimplicialComplex{}, 0, f, true).dimension() == 0);
    CHECK(reduced_betti(SimplicialComplex{}, f) == std::vector<std::size_t>{1});
}

TEST_CASE("Betti numbers match the dense oracle and the Euler characteristic")
{
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        const std::uint32_t p = t % 2 ? 3 : 2;
        const PrimeField f(p);
        const auto k = t % 3 == 0 ? random_complex(rng, 6, 12) : order_complex(support::random_poset(rng, uniform(rng, 0, 7), 0.4));
        const std::size_t top = k.dimension_count() == 0 ? 0 : k.dimension_count() - 1;
        const auto got = dims(k, f, false, top);
        const auto want = oracle::betti(k, p);
        for (std::size_t d = 0; d < want.size(); ++d)
            CHECK(got[d] == want[d]);
        long euler_h = 0, euler_s = 0;
        for (std::size_t d = 0; d < want.size(); ++d) {
            euler_h += (d % 2 ? -1L : 1L) * static_cast<long>(got[d]);
            euler_s += (d % 2 ? -1L : 1L) * static_cast<long>(k.count(d));
        }
        CHECK(euler_h == euler_s);
        // Reduced differs only in degree 0.
        if (!k.empty()) {
            const auto red = dims(k, f, true, top);
            CHECK(red[0] + 1 == got[0]);
            for (std::size_t d = 1; d < red.size(); ++d)
                CHECK(red[d] == got[d]);
        }
    }
}

TEST_CASE("representatives are cycles and coordinates recover them")
{
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        const PrimeField f(3);
        const auto k = order_complex(support::random_poset(rng, uniform(rng, 1, 7), 0.35));
        for (const auto& h : homology_all(k, k.dimension_count() - 1, f, false)) {
            for (std::size_t r = 0; r < h.dimension(); ++r) {
                const auto& z = h.representatives()[r];
                if (h.degree() > 0) {
                    const auto d = boundary_matrix(k, h.degree(), f);
                    Matrix col(k.count(h.degree()), 1);
                    for (auto [i, c] : z)
                        col(i, 0) = c;
                    CHECK(multiply(f, d, col).is_zero());
                }
                auto coords = h.coordinates(z);
                for (std::size_t s = 0; s < coords.size(); ++s)
                    CHECK(coords[s] == (s == r ? 1u : 0u));
            }
        }
    }
}

TEST_CASE("coordinates reject non-cycles")
{
    const auto edge = order_complex(poset({"a", "b"}, {{"a", "b"}}));
    const auto h1 = homology(edge, 1, PrimeField(2), false);
    CHECK(support::code_of([&] { h1.coordinates({{0, 1}}); }) == ErrorCode::NotACycle);
    const auto h0 = homology(edge, 0, PrimeField(2), true);
    CHECK(support::code_of([&] { h0.coordinates({{0, 1}}); }) == ErrorCode::NotACycle);
}

TEST_CASE("induced maps on homology")
{
    const PrimeField f(2);
    const auto c4 = order_complex(support::circle());
    const auto h1 = homology(c4, 1, f, false);
    CHECK(induced_on_homology(induced_map(MonotoneMap::identity(support::circle())), h1, h1) ==
          Matrix::identity(1));

    const auto cone = cone_over_circle();
    const auto inc = induced_map(MonotoneMap(support::circle(), cone, {0, 1, 2, 3}));
    const auto target = homology(inc.target, 1, f, false);
    const auto m = induced_on_homology(inc, h1, target);
    CHECK(m.rows() == 0);
    CHECK(m.cols() == 1);

    const auto ab = poset({"a", "b"}, {{"a", "b"}});
    const auto pt = poset({"*"});
    const auto collapse = induced_map(MonotoneMap(ab, pt, {0, 0}));
    const auto m0 = induced_on_homology(collapse, homology(collapse.source, 0, f, false),
                                        homology(collapse.target, 0, f, false));
    CHECK(m0 == Matrix::identity(1));
}

TEST_CASE("induced maps compose")
{
    Rng rng(41);
    for (int t = 0; t < 80; ++t) {
        const PrimeField f(t % 2 ? 3 : 2);
        const auto pp = random_persistence_poset(rng, 2, 6, 6);
        const auto tower = order_complex_tower(pp);
        const std::size_t top = std::max<std::size_t>(1, tower.top_dimension());
        std::vector<std::vector<HomologyBasis>> b;
        for (const auto& k : tower.complexes)
            b.push_back(homology_all(k, top, f, false));
        std::vector<std::size_t> composed;
        for (auto v : tower.maps[0])
            composed.push_back(tower.maps[1][v]);
        for (std::size_t d = 0; d <= top; ++d) {
            const auto m01 = induced_on_homology(tower.complexes[0], tower.complexes[1], tower.maps[0], b[0][d], b[1][d]);
            const auto m12 = induced_on_homology(tower.complexes[1], tower.complexes[2], tower.maps[1], b[1][d], b[2][d]);
            const auto m02 = induced_on_homology(tower.complexes[0], tower.complexes[2], composed, b[0][d], b[2][d]);
            CHECK(multiply(f, m12, m01) == m02);
        }
    }
}

TEST_CASE("homology towers")
{
    const PrimeField f(2);
    const auto pt = homology_tower(order_complex_tower(PersistencePoset::constant(poset({"*"}), 2)), 0, f, false);
    CHECK(pt.dims() == std::vector<std::size_t>{1, 1, 1});
    CHECK(pt.transitions()[0] == Matrix::identity(1));

    const auto grow = order_complex_tower(support::pposet(
        {support::circle(), cone_over_circle()}, {{{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}}}));
    const auto h1 = homology_tower(grow, 1, f, false);
    CHECK(h1.dims() == std::vector<std::size_t>{1, 0});
    CHECK(barcode(h1) == Barcode{{0, ExtNat(1)}});

    const auto late = order_complex_tower(
        support::pposet({poset({}), poset({}), poset({"a"}), poset({"a"})}, {{}, {}, {{"a", "a"}}}));
    CHECK(homology_tower(late, 0, f, false).dims() == std::vector<std::size_t>{0, 0, 1, 1});
}

TEST_CASE("field product formula for joins")
{
    Rng rng(51);
    for (int t = 0; t < 150; ++t) {
        const PrimeField f(t % 2 ? 3 : 2);
        const auto a = random_complex(rng, 5, 8, "a");
        const auto b = random_complex(rng, 5, 8, "b");
        CHECK(check_join_kunneth(a, b, f).empty());
    }
    const auto s0 = order_complex(poset({"p", "q"}));
    const auto j = join(relabel(s0, "A:"), relabel(s0, "B:"));
    CHECK(reduced_betti(j, PrimeField(2)) == std::vector<std::size_t>{0, 0, 1});
}
