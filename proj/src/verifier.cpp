#include "pqm/verifier.hpp"

#include "pqm/complex.hpp"
#include "pqm/error.hpp"
#include "pqm/random.hpp"

#include <algorithm>

namespace pqm {

namespace {

std::vector<PersistenceModule> poset_homology(const PersistencePoset& pp, const PrimeField& field, std::size_t kmax)
{
    return homology_towers(order_complex_tower(pp), kmax, field, false);
}

std::vector<Barcode> barcodes(const std::vector<PersistenceModule>& mods)
{
    std::vector<Barcode> out;
    for (const auto& m : mods)
        out.push_back(barcode(m));
    return out;
}

std::vector<ExtNat> distances(const std::vector<Barcode>& a, const std::vector<Barcode>& b)
{
    std::vector<ExtNat> out;
    for (std::size_t k = 0; k < a.size(); ++k)
        out.push_back(bottleneck_distance(a[k], b[k]));
    return out;
}

ExtNat max_of(const std::vector<ExtNat>& v)
{
    ExtNat m(0);
    for (auto x : v)
        m = std::max(m, x);
    return m;
}

// Index i of each vector is degree i - 1.
std::vector<std::string> kunneth_mismatch(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                                          const std::vector<std::size_t>& j)
{
    std::vector<std::string> out;
    const std::size_t top = std::max(j.size(), a.size() + b.size());
    for (std::size_t idx = 0; idx < top; ++idx) {
        std::size_t expected = 0;
        for (std::size_t ia = 0; ia <= idx && ia < a.size(); ++ia)
            if (idx - ia < b.size())
                expected += a[ia] * b[idx - ia];
        const std::size_t actual = idx < j.size() ? j[idx] : 0;
        if (expected != actual)
            out.push_back("degree " + std::to_string(static_cast<long>(idx) - 1) + ": join has " +
                          std::to_string(actual) + ", product formula gives " + std::to_string(expected));
    }
    return out;
}

} // namespace

ExtNat acyclicity_defect(const std::vector<PersistenceModule>& homology)
{
    ExtNat d(0);
    for (std::size_t k = 0; k < homology.size(); ++k)
        d = std::max(d, k == 0 ? point_comparison_defect(homology[k]) : triviality_defect(homology[k]));
    return d;
}

ExtNat acyclicity_defect(const PersistencePoset& pp, const PrimeField& field, std::size_t kmax)
{
    return acyclicity_defect(poset_homology(pp, field, kmax));
}

std::size_t default_kmax(const PersistencePoset& pp)
{
    const std::size_t h = pp.height();
    return h == 0 ? 0 : h - 1;
}

std::vector<TrackDefect> fiber_defects(const PersistenceMap& f, const PrimeField& field, std::size_t kmax)
{
    std::vector<TrackDefect> out;
    for (const auto& y : tracks(f.target())) {
        TrackDefect d;
        d.track = y;
        d.label = f.target().slice(y.birth).name(y.initial) + "@" + std::to_string(y.birth);
        const auto mods = poset_homology(fiber(f, y), field, kmax);
        for (std::size_t k = 0; k < mods.size(); ++k)
            d.per_degree.push_back(k == 0 ? point_comparison_defect(mods[k]) : triviality_defect(mods[k]));
        d.epsilon = max_of(d.per_degree);
        out.push_back(std::move(d));
    }
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Vacuous: return "vacuous";
    }
    return "unknown";
}

TheoremCertificate verify_theorem(const PersistenceMap& f, const PrimeField& field, std::optional<std::size_t> kmax)
{
    TheoremCertificate c;
    c.field = field.characteristic();
    c.kmax = kmax.value_or(std::max(default_kmax(f.source()), default_kmax(f.target())));
    c.tracks = fiber_defects(f, field, c.kmax);
    c.m = c.tracks.size();
    c.epsilon = ExtNat(0);
    for (const auto& t : c.tracks)
        c.epsilon = std::max(c.epsilon, t.epsilon);
    c.bound = (4 * static_cast<std::uint64_t>(c.m)) * c.epsilon;

    const auto tx = order_complex_tower(f.source());
    const auto ty = order_complex_tower(f.target());
    const auto hx = tower_homology(tx, c.kmax, field, false);
    const auto hy = tower_homology(ty, c.kmax, field, false);
    c.source_barcodes = barcodes(hx.modules);
    c.target_barcodes = barcodes(hy.modules);
    c.distances = distances(c.source_barcodes, c.target_barcodes);

    for (std::size_t k = 0; k <= c.kmax; ++k) {
        std::vector<std::size_t> ranks;
        for (std::size_t i = 0; i <= f.max_index(); ++i)
            ranks.push_back(rank(field, induced_on_homology(tx.complexes[i], ty.complexes[i], f.slices()[i],
                                                            hx.bases[i][k], hy.bases[i][k])));
        c.induced_ranks.push_back(std::move(ranks));
    }

    const ExtNat worst = max_of(c.distances);
    if (c.epsilon.is_infinite())
        c.verdict = Verdict::Vacuous;
    else
        c.verdict = worst <= c.bound ? Verdict::Holds : Verdict::Violated;
    if (c.bound.is_finite() && c.bound.value() > 0 && worst.is_finite())
        c.ratio = static_cast<double>(worst.value()) / static_cast<double>(c.bound.value());
    return c;
}

PunctureReport check_puncture(const PersistencePoset& larger, const PersistencePoset& smaller,
                              const PersistencePoset& below, const PersistencePoset& above, const PrimeField& field,
                              std::size_t kmax)
{
    PunctureReport r;
    r.below_defect = acyclicity_defect(below, field, kmax);
    r.above_defect = acyclicity_defect(above, field, kmax);
    r.epsilon = std::min(r.below_defect, r.above_defect);
    if (r.epsilon.is_infinite())
        throw Error(ErrorCode::HypothesisUnmet, "both sides of the removed element have infinite defect");
    r.bound = 4 * r.epsilon;
    r.distances = distances(barcodes(poset_homology(smaller, field, kmax)),
                            barcodes(poset_homology(larger, field, kmax)));
    r.holds = max_of(r.distances) <= r.bound;
    return r;
}

PunctureReport verify_puncture_lemma(const PersistencePoset& pp, const Removal& removal, const PrimeField& field,
                                     std::size_t kmax)
{
    const auto sides = puncture_sides(pp, removal);
    return check_puncture(pp, puncture(pp, removal), sides.below, sides.above, field, kmax);
}

ChainSweepReport verify_chain_steps(const PersistenceMap& f, const PrimeField& field, std::size_t kmax)
{
    ChainSweepReport r;
    const auto cf = chain_filtrations(f);
    auto run = [&](const std::vector<ChainStep>& steps, const char* which) {
        for (const auto& s : steps) {
            ++r.steps;
            try {
                auto p = check_puncture(s.larger, s.smaller, s.below, s.above, field, kmax);
                if (!p.holds) {
                    ++r.violations;
                    r.failures.push_back(std::string(which) + " step " + std::to_string(s.track) + ": distance " +
                                         max_of(p.distances).to_string() + " exceeds " + p.bound.to_string());
                }
            } catch (const Error& e) {
                if (e.code() != ErrorCode::HypothesisUnmet)
                    throw;
                ++r.unmet;
            }
        }
    };
    run(cf.y_steps, "Y-chain");
    run(cf.x_steps, "X-chain");
    return r;
}

std::vector<std::string> check_join_kunneth(const SimplicialComplex& a, const SimplicialComplex& b,
                                            const PrimeField& field)
{
    const auto j = join(relabel(a, "A:"), relabel(b, "B:"));
    return kunneth_mismatch(reduced_betti(a, field), reduced_betti(b, field), reduced_betti(j, field));
}

JoinReport verify_join_acyclicity(const PersistencePoset& a, const PersistencePoset& b, const PrimeField& field,
                                  std::optional<std::size_t> kmax)
{
    JoinReport r;
    const auto ta = order_complex_tower(a);
    const auto tb = order_complex_tower(b);
    const auto tj = join_towers(ta, tb);
    auto cap = [&](std::size_t top) { return kmax ? std::min(*kmax, top) : top; };
    r.defect_a = acyclicity_defect(homology_towers(ta, cap(ta.top_dimension()), field, false));
    r.defect_b = acyclicity_defect(homology_towers(tb, cap(tb.top_dimension()), field, false));
    r.defect_join = acyclicity_defect(homology_towers(tj, cap(tj.top_dimension()), field, false));
    r.acyclicity_holds = r.defect_join <= std::min(r.defect_a, r.defect_b);
    if (!r.acyclicity_holds)
        r.failures.push_back("join defect " + r.defect_join.to_string() + " exceeds " +
                             std::min(r.defect_a, r.defect_b).to_string());
    for (std::size_t i = 0; i < tj.complexes.size(); ++i)
        for (auto& m : kunneth_mismatch(reduced_betti(ta.complexes[i], field), reduced_betti(tb.complexes[i], field),
                                        reduced_betti(tj.complexes[i], field))) {
            r.kunneth_holds = false;
            r.failures.push_back("slice " + std::to_string(i) + ", " + m);
        }
    return r;
}

CylinderReport verify_cylinder_retraction(const PersistenceMap& f, const PrimeField& field,
                                          std::optional<std::size_t> kmax)
{
    CylinderReport r;
    const auto cyl = persistence_mapping_cylinder(f);
    const std::size_t k = kmax.value_or(std::max(default_kmax(cyl.poset), default_kmax(f.target())));
    r.distances = distances(barcodes(poset_homology(cyl.poset, field, k)),
                            barcodes(poset_homology(f.target(), field, k)));
    r.retraction_holds = max_of(r.distances) == ExtNat(0);

    const auto& y = f.target();
    for (const auto& x : tracks(f.source()))
        for (std::size_t j = x.birth; j <= f.max_index(); ++j) {
            const auto& slice = y.slice(j);
            const auto up = downset_indices(slice, f.apply(j, *x.at(j)), false, Direction::Above);
            const auto betti = reduced_betti(order_complex(slice.induced(up)), field);
            ++r.upsets_checked;
            if (std::any_of(betti.begin(), betti.end(), [](std::size_t b) { return b != 0; }))
                ++r.upset_failures;
        }
    return r;
}

SesReport verify_split_ses_properties(std::uint64_t seed, std::size_t count)
{
    SesReport r;
    Rng rng(seed);
    auto fail = [&](std::size_t c, const std::string& what) {
        ++r.violations;
        r.failures.push_back("case " + std::to_string(c) + ": " + what);
    };
    for (std::size_t c = 0; c < count; ++c) {
        ++r.cases;
        const PrimeField field(c % 2 == 0 ? 2 : 3);
        const std::size_t T = uniform(rng, 0, 4);
        auto module = [&](double essential) {
            return random_module_with_barcode(rng, field, T, random_barcode(rng, T, 3, essential));
        };

        // Split sequence 0 -> M -> L -> N -> 0 with L = M + N.
        const auto m = module(0.15);
        const auto n = module(0.15);
        const auto l = direct_sum(m, n);
        const auto e1 = triviality_defect(m);
        const auto e2 = triviality_defect(n);
        const auto el = triviality_defect(l);
        const auto bm = barcode(m), bn = barcode(n), bl = barcode(l);
        if (!(el <= e1 + e2))
            fail(c, "defect of the sum exceeds e1 + e2");
        if (!(e1 <= el) || !(e2 <= el))
            fail(c, "defect of a summand exceeds that of the sum");
        if (!(bottleneck_distance(bl, bn) <= 2 * e1))
            fail(c, "d(L, N) exceeds 2 e1");
        if (!(bottleneck_distance(bm, bl) <= 2 * e2))
            fail(c, "d(M, L) exceeds 2 e2");

        // Exact A -> B -> C -> D with A = K and D = I eps-trivial,
        // B = K + C', C = C' + I, middle map projection then inclusion.
        const auto k = module(0.0);
        const auto i = module(0.0);
        const auto cprime = module(0.25);
        const auto eps = std::max(triviality_defect(k), triviality_defect(i));
        const auto b = direct_sum(k, cprime);
        const auto cc = direct_sum(cprime, i);
        if (!(bottleneck_distance(barcode(b), barcode(cc)) <= 4 * eps))
            fail(c, "d(B, C) exceeds 4 eps");
    }
    return r;
}

} // namespace pqm
