#include "pqm/random.hpp"

#include <algorithm>
#include <numeric>

namespace pqm {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

namespace {

Matrix random_matrix(Rng& rng, const PrimeField& field, std::size_t rows, std::size_t cols)
{
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = static_cast<Scalar>(uniform(rng, 0, field.characteristic() - 1));
    return m;
}

std::string numbered(const std::string& prefix, std::size_t k)
{
    std::string digits = std::to_string(k);
    if (digits.size() < 2)
        digits.insert(0, "0");
    return prefix + digits;
}

void close(std::vector<std::vector<char>>& lt)
{
    const std::size_t n = lt.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (lt[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (lt[k][j])
                        lt[i][j] = 1;
}

// A slice under construction. Position order is a linear extension of `lt`.
struct Layer {
    std::vector<std::string> names;
    std::vector<std::vector<char>> lt;
    std::vector<std::size_t> image;  // position in the target layer (source side only)
    std::vector<char> shadow;        // source side only

    std::size_t size() const { return names.size(); }
    bool le(std::size_t a, std::size_t b) const { return a == b || lt[a][b]; }
};

std::vector<std::vector<char>> empty_table(std::size_t n)
{
    return std::vector<std::vector<char>>(n, std::vector<char>(n, 0));
}

FinitePoset to_poset(const Layer& l)
{
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t a = 0; a < l.size(); ++a)
        for (std::size_t b = 0; b < l.size(); ++b)
            if (l.lt[a][b])
                pairs.emplace_back(l.names[a], l.names[b]);
    return FinitePoset(l.names, pairs);
}

// Position map between layers to an index map between the sorted posets.
IndexMap to_index_map(const Layer& from, const Layer& to, const std::vector<std::size_t>& pos_map,
                      const FinitePoset& pf, const FinitePoset& pt)
{
    IndexMap m(pf.size());
    for (std::size_t a = 0; a < from.size(); ++a)
        m[pf.require(from.names[a])] = pt.require(to.names[pos_map[a]]);
    return m;
}

struct TargetGen {
    std::vector<Layer> layers;
    std::vector<std::vector<std::size_t>> maps;  // positions
    std::vector<std::vector<char>> fresh;       // fresh[i][pos]
};

constexpr double kRelation = 0.35;
constexpr double kMerge = 0.2;
constexpr double kSourceRelation = 0.6;

TargetGen generate_target(Rng& rng, std::size_t T, std::size_t max_slice, std::size_t max_tracks)
{
    TargetGen g;
    std::size_t counter = 0;
    std::size_t budget = max_tracks;
    const std::size_t cap = std::min(max_slice, max_tracks);

    Layer first;
    std::size_t n0 = (T > 0 && chance(rng, 0.2)) || cap == 0 ? 0 : uniform(rng, 1, cap);
    for (std::size_t k = 0; k < n0; ++k)
        first.names.push_back(numbered("y", counter++));
    budget -= n0;
    first.lt = empty_table(n0);
    for (std::size_t a = 0; a < n0; ++a)
        for (std::size_t b = a + 1; b < n0; ++b)
            first.lt[a][b] = chance(rng, kRelation);
    close(first.lt);
    g.layers.push_back(first);
    g.fresh.emplace_back(n0, 1);

    for (std::size_t i = 0; i < T; ++i) {
        const Layer& prev = g.layers.back();
        // Consecutive runs of the current order collapse to one element.
        std::vector<std::size_t> run(prev.size());
        std::size_t runs = 0;
        for (std::size_t a = 0; a < prev.size(); ++a) {
            if (a > 0 && !chance(rng, kMerge))
                ++runs;
            run[a] = runs;
        }
        if (prev.size() > 0)
            ++runs;

        std::size_t room = std::min(budget, cap > runs ? cap - runs : 0);
        std::size_t fresh = room == 0 ? 0 : uniform(rng, 0, std::min<std::size_t>(room, 2));
        if (runs == 0 && fresh == 0 && room > 0 && chance(rng, 0.5))
            fresh = 1;
        budget -= fresh;

        // Slots: run r or a fresh element, in new order.
        std::vector<std::ptrdiff_t> slots;
        for (std::size_t r = 0; r < runs; ++r)
            slots.push_back(static_cast<std::ptrdiff_t>(r));
        for (std::size_t k = 0; k < fresh; ++k)
            slots.insert(slots.begin() + static_cast<std::ptrdiff_t>(uniform(rng, 0, slots.size())), -1);

        Layer next;
        std::vector<std::size_t> run_pos(runs);
        std::vector<char> is_fresh;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if (slots[s] < 0) {
                next.names.push_back(numbered("y", counter++));
                is_fresh.push_back(1);
            } else {
                const auto r = static_cast<std::size_t>(slots[s]);
                run_pos[r] = s;
                std::size_t firstmember = 0;
                while (run[firstmember] != r)
                    ++firstmember;
                next.names.push_back(prev.names[firstmember]);
                is_fresh.push_back(0);
            }
        }
        std::vector<std::size_t> pos_map(prev.size());
        for (std::size_t a = 0; a < prev.size(); ++a)
            pos_map[a] = run_pos[run[a]];

        next.lt = empty_table(next.size());
        for (std::size_t a = 0; a < prev.size(); ++a)
            for (std::size_t b = 0; b < prev.size(); ++b)
                if (prev.lt[a][b] && pos_map[a] != pos_map[b])
                    next.lt[pos_map[a]][pos_map[b]] = 1;
        for (std::size_t a = 0; a < next.size(); ++a)
            for (std::size_t b = a + 1; b < next.size(); ++b)
                if (chance(rng, kRelation / 2))
                    next.lt[a][b] = 1;
        close(next.lt);
        g.layers.push_back(std::move(next));
        g.maps.push_back(std::move(pos_map));
        g.fresh.push_back(std::move(is_fresh));
    }
    return g;
}

// Orders source elements by (target position, extras before shadows, current order).
void sort_layer(Layer& l, const std::vector<std::size_t>& carried_order_key)
{
    std::vector<std::size_t> perm(l.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(l.image[a], l.shadow[a], carried_order_key[a]) <
               std::tie(l.image[b], l.shadow[b], carried_order_key[b]);
    });
    Layer out;
    out.lt = empty_table(l.size());
    for (std::size_t p = 0; p < perm.size(); ++p) {
        out.names.push_back(l.names[perm[p]]);
        out.image.push_back(l.image[perm[p]]);
        out.shadow.push_back(l.shadow[perm[p]]);
        for (std::size_t q = 0; q < perm.size(); ++q)
            out.lt[p][q] = l.lt[perm[p]][perm[q]];
    }
    l = std::move(out);
}

void add_source_relations(Rng& rng, Layer& x, const Layer& y, bool shadow_mode)
{
    const std::size_t n = x.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b)
                continue;
            if (x.shadow[a] && x.shadow[b]) {
                if (y.lt[x.image[a]][x.image[b]])
                    x.lt[a][b] = 1;
            } else if (!x.shadow[a] && (!shadow_mode || !x.shadow[b]) && a < b && y.le(x.image[a], x.image[b])) {
                if (chance(rng, kSourceRelation))
                    x.lt[a][b] = 1;
            } else if (!x.shadow[a] && x.shadow[b] && y.le(x.image[a], x.image[b])) {
                if (x.image[a] == x.image[b] || chance(rng, kSourceRelation))
                    x.lt[a][b] = 1;
            }
        }
    close(x.lt);
}

} // namespace

PersistenceModule random_module(Rng& rng, const PrimeField& field, std::size_t max_index, std::size_t max_dim)
{
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i <= max_index; ++i)
        dims.push_back(uniform(rng, 0, max_dim));
    std::vector<Matrix> transitions;
    for (std::size_t i = 0; i < max_index; ++i)
        transitions.push_back(random_matrix(rng, field, dims[i + 1], dims[i]));
    return PersistenceModule(field, std::move(dims), std::move(transitions));
}

Barcode random_barcode(Rng& rng, std::size_t max_index, std::size_t max_bars, double essential)
{
    Barcode bars;
    const std::size_t count = uniform(rng, 0, max_bars);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t birth = uniform(rng, 0, max_index);
        // Finite bars must die by T; past T the module is constant.
        if (birth == max_index) {
            if (essential > 0)
                bars.push_back({birth, ExtNat::infinity()});
        } else if (chance(rng, essential)) {
            bars.push_back({birth, ExtNat::infinity()});
        } else {
            bars.push_back({birth, ExtNat(uniform(rng, birth + 1, max_index))});
        }
    }
    normalize(bars);
    return bars;
}

Matrix random_invertible(Rng& rng, const PrimeField& field, std::size_t n)
{
    for (;;) {
        Matrix m = random_matrix(rng, field, n, n);
        if (rank(field, m) == n)
            return m;
    }
}

PersistenceModule random_module_with_barcode(Rng& rng, const PrimeField& field, std::size_t max_index,
                                             const Barcode& bars)
{
    auto m = PersistenceModule::from_barcode(field, max_index, bars);
    std::vector<Matrix> bases;
    for (std::size_t i = 0; i <= max_index; ++i)
        bases.push_back(random_invertible(rng, field, m.dim(i)));
    return m.change_basis(bases);
}

SimplicialComplex random_complex(Rng& rng, std::size_t max_vertices, std::size_t max_simplices,
                                 const std::string& prefix)
{
    const std::size_t n = uniform(rng, 0, std::min(max_vertices, max_simplices));
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v)
        names.push_back(prefix + std::to_string(v));
    std::vector<Simplex> gens;
    SimplicialComplex k = SimplicialComplex::from_indices(names, gens);
    const std::size_t attempts = uniform(rng, 0, 6);
    for (std::size_t t = 0; t < attempts && n >= 2; ++t) {
        Simplex s;
        for (std::size_t v = 0; v < n; ++v)
            if (chance(rng, 0.5))
                s.push_back(v);
        if (s.size() < 2 || s.size() > 3)
            continue;
        gens.push_back(s);
        auto candidate = SimplicialComplex::from_indices(names, gens);
        if (candidate.size() > max_simplices)
            gens.pop_back();
        else
            k = std::move(candidate);
    }
    return k;
}

PersistencePoset random_persistence_poset(Rng& rng, std::size_t max_index, std::size_t max_slice,
                                          std::size_t max_tracks)
{
    auto g = generate_target(rng, max_index, max_slice, max_tracks);
    std::vector<FinitePoset> slices;
    for (const auto& l : g.layers)
        slices.push_back(to_poset(l));
    std::vector<IndexMap> maps;
    for (std::size_t i = 0; i < max_index; ++i)
        maps.push_back(to_index_map(g.layers[i], g.layers[i + 1], g.maps[i], slices[i], slices[i + 1]));
    return PersistencePoset(std::move(slices), std::move(maps));
}

PersistenceMap random_persistence_map(Rng& rng, const GeneratorLimits& limits)
{
    const std::size_t T = limits.max_index;
    const std::size_t S = limits.max_slice;
    auto y = generate_target(rng, T, S, limits.max_tracks);
    std::size_t counter = 0;

    std::vector<Layer> xs;
    std::vector<std::vector<std::size_t>> xmaps;

    // Fresh source elements over a target layer; `fresh_targets` get priority.
    auto add_fresh = [&](Layer& x, const Layer& ty, const std::vector<char>& fresh_targets,
                         std::vector<std::size_t>& key, std::size_t key_base) {
        auto push = [&](std::size_t img, bool shadow) {
            x.names.push_back(numbered("x", counter++));
            x.image.push_back(img);
            x.shadow.push_back(shadow ? 1 : 0);
            key.push_back(key_base + uniform(rng, 0, 1000));
        };
        for (std::size_t t = 0; t < ty.size(); ++t) {
            if (!fresh_targets[t] || x.size() >= S)
                continue;
            if (limits.shadow)
                push(t, true);
            else if (chance(rng, 0.85))
                push(t, false);
        }
        if (ty.size() == 0)
            return;
        const std::size_t extra = uniform(rng, 0, 2);
        for (std::size_t k = 0; k < extra && x.size() < S; ++k)
            push(uniform(rng, 0, ty.size() - 1), false);
    };

    {
        Layer x;
        std::vector<std::size_t> key;
        add_fresh(x, y.layers[0], y.fresh[0], key, 0);
        x.lt = empty_table(x.size());
        sort_layer(x, key);
        add_source_relations(rng, x, y.layers[0], limits.shadow);
        xs.push_back(std::move(x));
    }

    for (std::size_t i = 0; i < T; ++i) {
        const Layer& prev = xs.back();
        const Layer& ty = y.layers[i + 1];
        const auto& ymap = y.maps[i];

        // Sequence ordered by (target image, shadow flag, position): a linear
        // extension of prev in which equal-target runs are contiguous.
        std::vector<std::size_t> seq(prev.size());
        std::iota(seq.begin(), seq.end(), 0);
        std::stable_sort(seq.begin(), seq.end(), [&](std::size_t a, std::size_t b) {
            return std::tie(ymap[prev.image[a]], prev.shadow[a]) < std::tie(ymap[prev.image[b]], prev.shadow[b]);
        });

        Layer next;
        std::vector<std::size_t> key;
        std::vector<std::size_t> pos_map(prev.size());
        for (std::size_t s = 0; s < seq.size(); ++s) {
            const std::size_t a = seq[s];
            const bool same_group = s > 0 && ymap[prev.image[seq[s - 1]]] == ymap[prev.image[a]] &&
                                    prev.shadow[seq[s - 1]] == prev.shadow[a];
            if (same_group && (prev.shadow[a] || chance(rng, kMerge))) {
                pos_map[a] = next.size() - 1;
                continue;
            }
            pos_map[a] = next.size();
            next.names.push_back(prev.names[a]);
            next.image.push_back(ymap[prev.image[a]]);
            next.shadow.push_back(prev.shadow[a]);
            key.push_back(s * 1001);
        }
        add_fresh(next, ty, y.fresh[i + 1], key, 0);

        // Provisional relation on the unsorted layer: images of prev's relation.
        next.lt = empty_table(next.size());
        for (std::size_t a = 0; a < prev.size(); ++a)
            for (std::size_t b = 0; b < prev.size(); ++b)
                if (prev.lt[a][b] && pos_map[a] != pos_map[b])
                    next.lt[pos_map[a]][pos_map[b]] = 1;

        // Sorting permutes positions; track where each slot went.
        std::vector<std::string> before = next.names;
        sort_layer(next, key);
        std::vector<std::size_t> where(before.size());
        for (std::size_t p = 0; p < next.size(); ++p)
            where[static_cast<std::size_t>(std::find(before.begin(), before.end(), next.names[p]) - before.begin())] = p;
        for (auto& p : pos_map)
            p = where[p];

        add_source_relations(rng, next, ty, limits.shadow);
        xs.push_back(std::move(next));
        xmaps.push_back(std::move(pos_map));
    }

    std::vector<FinitePoset> xslices, yslices;
    for (const auto& l : xs)
        xslices.push_back(to_poset(l));
    for (const auto& l : y.layers)
        yslices.push_back(to_poset(l));
    std::vector<IndexMap> xm, ym, fm;
    for (std::size_t i = 0; i < T; ++i) {
        xm.push_back(to_index_map(xs[i], xs[i + 1], xmaps[i], xslices[i], xslices[i + 1]));
        ym.push_back(to_index_map(y.layers[i], y.layers[i + 1], y.maps[i], yslices[i], yslices[i + 1]));
    }
    for (std::size_t i = 0; i <= T; ++i)
        fm.push_back(to_index_map(xs[i], y.layers[i], xs[i].image, xslices[i], yslices[i]));
    PersistencePoset px(std::move(xslices), std::move(xm));
    PersistencePoset py(std::move(yslices), std::move(ym));
    return PersistenceMap(std::move(px), std::move(py), std::move(fm));
}

} // namespace pqm
