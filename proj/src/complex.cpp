#include "pqm/complex.hpp"

#include "pqm/error.hpp"

#include <algorithm>
#include <set>

namespace pqm {

namespace {

void add_faces(std::set<Simplex>& out, const Simplex& s)
{
    if (s.empty() || !out.insert(s).second)
        return;
    if (s.size() == 1)
        return;
    for (std::size_t skip = 0; skip < s.size(); ++skip) {
        Simplex face;
        face.reserve(s.size() - 1);
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != skip)
                face.push_back(s[i]);
        add_faces(out, face);
    }
}

const std::vector<Simplex> kNoSimplices;

} // namespace

SimplicialComplex SimplicialComplex::from_indices(std::vector<std::string> vertices, const std::vector<Simplex>& generators)
{
    if (!std::is_sorted(vertices.begin(), vertices.end())) {
        // Re-index generators after sorting the vertex names.
        std::vector<std::size_t> order(vertices.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vertices[a] < vertices[b]; });
        std::vector<std::size_t> where(order.size());
        std::vector<std::string> sorted;
        for (std::size_t i = 0; i < order.size(); ++i) {
            where[order[i]] = i;
            sorted.push_back(vertices[order[i]]);
        }
        std::vector<Simplex> regen;
        for (const auto& g : generators) {
            Simplex s;
            for (auto v : g)
                s.push_back(where.at(v));
            regen.push_back(std::move(s));
        }
        return from_indices(std::move(sorted), regen);
    }
    if (auto dup = std::adjacent_find(vertices.begin(), vertices.end()); dup != vertices.end())
        throw Error(ErrorCode::DuplicateElement, "vertex '" + *dup + "' listed twice");

    std::set<Simplex> all;
    for (std::size_t v = 0; v < vertices.size(); ++v)
        all.insert(Simplex{v});
    for (auto g : generators) {
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        for (auto v : g)
            if (v >= vertices.size())
                throw Error(ErrorCode::UnknownVertex, "generator uses vertex index " + std::to_string(v));
        add_faces(all, g);
    }

    SimplicialComplex k;
    k.vertices_ = std::move(vertices);
    for (const auto& s : all) { // std::set order is lexicographic
        const auto d = s.size() - 1;
        if (k.by_dim_.size() <= d) {
            k.by_dim_.resize(d + 1);
            k.lookup_.resize(d + 1);
        }
        k.lookup_[d].emplace(s, k.by_dim_[d].size());
        k.by_dim_[d].push_back(s);
    }
    return k;
}

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertices,
                                     const std::vector<std::vector<std::string>>& generators)
{
    std::sort(vertices.begin(), vertices.end());
    if (auto dup = std::adjacent_find(vertices.begin(), vertices.end()); dup != vertices.end())
        throw Error(ErrorCode::DuplicateElement, "vertex '" + *dup + "' listed twice");
    std::vector<Simplex> gens;
    for (const auto& g : generators) {
        Simplex s;
        for (const auto& name : g) {
            auto it = std::lower_bound(vertices.begin(), vertices.end(), name);
            if (it == vertices.end() || *it != name)
                throw Error(ErrorCode::UnknownVertex, "generator uses unknown vertex '" + name + "'");
            s.push_back(static_cast<std::size_t>(it - vertices.begin()));
        }
        gens.push_back(std::move(s));
    }
    *this = from_indices(std::move(vertices), gens);
}

std::optional<std::size_t> SimplicialComplex::vertex_index(std::string_view id) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
    if (it == vertices_.end() || *it != id)
        return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t dim) const
{
    return dim < by_dim_.size() ? by_dim_[dim] : kNoSimplices;
}

std::size_t SimplicialComplex::size() const
{
    std::size_t n = 0;
    for (const auto& d : by_dim_)
        n += d.size();
    return n;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const
{
    if (s.empty() || s.size() > lookup_.size())
        return std::nullopt;
    const auto& table = lookup_[s.size() - 1];
    auto it = table.find(s);
    if (it == table.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::vector<std::string>> SimplicialComplex::named_simplices() const
{
    std::vector<std::vector<std::string>> out;
    for (const auto& dim : by_dim_)
        for (const auto& s : dim) {
            std::vector<std::string> names;
            for (auto v : s)
                names.push_back(vertices_[v]);
            out.push_back(std::move(names));
        }
    std::sort(out.begin(), out.end());
    return out;
}

Simplex image_of(const Simplex& s, const std::vector<std::size_t>& vertex_map)
{
    Simplex out;
    out.reserve(s.size());
    for (auto v : s)
        out.push_back(vertex_map[v]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SimplicialMap::SimplicialMap(SimplicialComplex source_, SimplicialComplex target_, std::vector<std::size_t> vertex_map_)
    : source(std::move(source_)), target(std::move(target_)), vertex_map(std::move(vertex_map_))
{
    if (vertex_map.size() != source.vertex_count())
        throw Error(ErrorCode::NotSimplicial, "vertex map is not total");
    for (auto v : vertex_map)
        if (v >= target.vertex_count())
            throw Error(ErrorCode::NotSimplicial, "vertex map leaves the target");
    for (std::size_t d = 1; d < source.dimension_count(); ++d)
        for (const auto& s : source.simplices(d))
            if (!target.contains(image_of(s, vertex_map)))
                throw Error(ErrorCode::NotSimplicial, "image of a " + std::to_string(d) + "-simplex is not a simplex");
}

std::size_t ComplexTower::top_dimension() const
{
    std::size_t top = 0;
    for (const auto& k : complexes)
        if (k.dimension_count() > 0)
            top = std::max(top, k.dimension_count() - 1);
    return top;
}

SimplicialComplex order_complex(const FinitePoset& p)
{
    // Maximal chains generate the complex; enumerate chains by extending upward.
    std::vector<Simplex> chains;
    const std::size_t n = p.size();
    std::vector<std::size_t> order = linear_extension(p);
    Simplex current;
    auto extend = [&](auto&& self, std::size_t pos) -> void {
        bool extended = false;
        for (std::size_t k = pos; k < n; ++k) {
            auto v = order[k];
            if (!current.empty() && !p.less(current.back(), v))
                continue;
            current.push_back(v);
            self(self, k + 1);
            current.pop_back();
            extended = true;
        }
        if (!extended && !current.empty())
            chains.push_back(current);
    };
    extend(extend, 0);
    return SimplicialComplex::from_indices(p.elements(), chains);
}

SimplicialMap induced_map(const MonotoneMap& f)
{
    if (!is_monotone(f))
        throw Error(ErrorCode::NotMonotone, "induced map of a non-monotone map");
    return SimplicialMap(order_complex(f.source), order_complex(f.target), f.image);
}

SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l)
{
    std::vector<std::string> vertices = k.vertices();
    vertices.insert(vertices.end(), l.vertices().begin(), l.vertices().end());
    std::vector<std::string> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
        throw Error(ErrorCode::VertexCollision, "both complexes contain vertex '" + *dup + "'");

    const std::size_t offset = k.vertex_count();
    std::vector<Simplex> ks{Simplex{}}, ls{Simplex{}};
    for (std::size_t d = 0; d < k.dimension_count(); ++d)
        ks.insert(ks.end(), k.simplices(d).begin(), k.simplices(d).end());
    for (std::size_t d = 0; d < l.dimension_count(); ++d)
        for (auto s : l.simplices(d)) {
            for (auto& v : s)
                v += offset;
            ls.push_back(std::move(s));
        }
    std::vector<Simplex> gens;
    for (const auto& a : ks)
        for (const auto& b : ls) {
            Simplex s = a;
            s.insert(s.end(), b.begin(), b.end());
            if (!s.empty())
                gens.push_back(std::move(s));
        }
    return SimplicialComplex::from_indices(std::move(vertices), gens);
}

SimplicialComplex relabel(const SimplicialComplex& k, std::string_view prefix)
{
    std::vector<std::string> vertices;
    for (const auto& v : k.vertices())
        vertices.push_back(std::string(prefix) + v);
    std::vector<Simplex> gens;
    for (std::size_t d = 0; d < k.dimension_count(); ++d)
        gens.insert(gens.end(), k.simplices(d).begin(), k.simplices(d).end());
    return SimplicialComplex::from_indices(std::move(vertices), gens);
}

namespace {

std::size_t require_vertex(const SimplicialComplex& k, std::string_view v)
{
    auto i = k.vertex_index(v);
    if (!i)
        throw Error(ErrorCode::UnknownVertex, "no vertex '" + std::string(v) + "'");
    return *i;
}

// Subcomplex generated by the selected simplices, keeping only used vertices.
SimplicialComplex generated(const SimplicialComplex& k, const std::vector<Simplex>& gens)
{
    std::vector<char> used(k.vertex_count(), 0);
    for (const auto& s : gens)
        for (auto v : s)
            used[v] = 1;
    std::vector<std::size_t> where(k.vertex_count(), 0);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < k.vertex_count(); ++v)
        if (used[v]) {
            where[v] = names.size();
            names.push_back(k.vertices()[v]);
        }
    std::vector<Simplex> local;
    for (const auto& s : gens) {
        Simplex t;
        for (auto v : s)
            t.push_back(where[v]);
        local.push_back(std::move(t));
    }
    return SimplicialComplex::from_indices(std::move(names), local);
}

} // namespace

SimplicialComplex star(const SimplicialComplex& k, std::string_view v)
{
    const auto x = require_vertex(k, v);
    std::vector<Simplex> gens;
    for (std::size_t d = 0; d < k.dimension_count(); ++d)
        for (const auto& s : k.simplices(d))
            if (std::binary_search(s.begin(), s.end(), x))
                gens.push_back(s);
    return generated(k, gens);
}

SimplicialComplex link(const SimplicialComplex& k, std::string_view v)
{
    const auto x = require_vertex(k, v);
    std::vector<Simplex> gens;
    for (std::size_t d = 1; d < k.dimension_count(); ++d)
        for (const auto& s : k.simplices(d))
            if (std::binary_search(s.begin(), s.end(), x)) {
                Simplex t;
                for (auto w : s)
                    if (w != x)
                        t.push_back(w);
                gens.push_back(std::move(t));
            }
    return generated(k, gens);
}

SimplicialComplex deletion(const SimplicialComplex& k, std::string_view v)
{
    const auto x = require_vertex(k, v);
    std::vector<Simplex> gens;
    for (std::size_t d = 0; d < k.dimension_count(); ++d)
        for (const auto& s : k.simplices(d))
            if (!std::binary_search(s.begin(), s.end(), x))
                gens.push_back(s);
    return generated(k, gens);
}

ComplexTower order_complex_tower(const PersistencePoset& pp)
{
    ComplexTower tower;
    for (const auto& s : pp.slices())
        tower.complexes.push_back(order_complex(s));
    tower.maps = pp.maps();
    return tower;
}

ComplexTower join_towers(const ComplexTower& a, const ComplexTower& b)
{
    if (a.complexes.size() != b.complexes.size())
        throw Error(ErrorCode::ShapeMismatch, "joined towers have different lengths");
    ComplexTower out;
    for (std::size_t i = 0; i < a.complexes.size(); ++i)
        out.complexes.push_back(join(relabel(a.complexes[i], "A:"), relabel(b.complexes[i], "B:")));
    // "A:" sorts before "B:" so the joined vertex list is A's vertices then B's.
    for (std::size_t i = 0; i + 1 < a.complexes.size(); ++i) {
        const std::size_t na_next = a.complexes[i + 1].vertex_count();
        std::vector<std::size_t> m = a.maps[i];
        for (auto v : b.maps[i])
            m.push_back(na_next + v);
        out.maps.push_back(std::move(m));
    }
    return out;
}

} // namespace pqm
