#include "pqm/pposet.hpp"

#include "pqm/error.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace pqm {

void validate_persistence_poset(const std::vector<FinitePoset>& slices, const std::vector<IndexMap>& maps)
{
    if (slices.empty())
        throw Error(ErrorCode::ShapeMismatch, "persistence poset needs at least one slice");
    if (maps.size() + 1 != slices.size())
        throw Error(ErrorCode::ShapeMismatch, std::to_string(slices.size()) + " slices need " +
                                                  std::to_string(slices.size() - 1) + " structure maps, got " +
                                                  std::to_string(maps.size()));
    bool seen_nonempty = false;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        if (!slices[i].empty())
            seen_nonempty = true;
        else if (seen_nonempty)
            throw Error(ErrorCode::EmptyAfterNonempty, "slice " + std::to_string(i) + " is empty after a nonempty slice");
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto& src = slices[i];
        const auto& dst = slices[i + 1];
        if (maps[i].size() != src.size())
            throw Error(ErrorCode::PartialStructureMap, "structure map " + std::to_string(i) + " covers " +
                                                            std::to_string(maps[i].size()) + " of " +
                                                            std::to_string(src.size()) + " elements");
        for (std::size_t x = 0; x < src.size(); ++x)
            if (maps[i][x] >= dst.size())
                throw Error(ErrorCode::PartialStructureMap,
                            "structure map " + std::to_string(i) + " sends '" + src.name(x) + "' outside slice " +
                                std::to_string(i + 1));
        if (!is_monotone(src, dst, maps[i]))
            throw Error(ErrorCode::NonMonotoneStructureMap, "structure map " + std::to_string(i) + " is not monotone");
    }
}

PersistencePoset::PersistencePoset() : slices_(1) {}

PersistencePoset::PersistencePoset(std::vector<FinitePoset> slices, std::vector<IndexMap> maps)
{
    validate_persistence_poset(slices, maps);
    slices_ = std::move(slices);
    maps_ = std::move(maps);
}

PersistencePoset PersistencePoset::constant(const FinitePoset& p, std::size_t max_index)
{
    IndexMap id(p.size());
    for (std::size_t i = 0; i < id.size(); ++i)
        id[i] = i;
    return PersistencePoset(std::vector<FinitePoset>(max_index + 1, p), std::vector<IndexMap>(max_index, id));
}

MonotoneMap PersistencePoset::structure_map(std::size_t i) const
{
    if (i >= maps_.size())
        return MonotoneMap::identity(slice(i));
    return MonotoneMap(slices_[i], slices_[i + 1], maps_[i]);
}

std::size_t PersistencePoset::height() const
{
    std::size_t h = 0;
    for (const auto& s : slices_)
        h = std::max(h, s.height());
    return h;
}

std::optional<std::size_t> ElementTrack::at(std::size_t j) const
{
    if (j < birth)
        return std::nullopt;
    return trajectory[std::min(j - birth, trajectory.size() - 1)];
}

std::vector<std::vector<std::size_t>> persistence_linear_extension(const PersistencePoset& pp)
{
    const std::size_t T = pp.max_index();
    std::vector<std::vector<std::size_t>> orders(T + 1);
    orders[T] = linear_extension(pp.slice(T));
    for (std::size_t i = T; i-- > 0;) {
        const auto& p = pp.slice(i);
        const std::size_t n = p.size();
        std::vector<std::size_t> rank_next(pp.slice(i + 1).size());
        for (std::size_t r = 0; r < orders[i + 1].size(); ++r)
            rank_next[orders[i + 1][r]] = r;

        std::vector<char> less(n * n, 0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                less[a * n + b] = p.less(a, b) || rank_next[pp.apply(i, a)] < rank_next[pp.apply(i, b)];
        FinitePoset extended;
        try {
            extended = FinitePoset::from_table(p.elements(), std::move(less));
        } catch (const Error& e) {
            throw Error(ErrorCode::InconsistentTransfer, "slice " + std::to_string(i) + ": " + e.what());
        }
        orders[i] = linear_extension(extended);
    }
    return orders;
}

std::vector<ElementTrack> tracks(const PersistencePoset& pp)
{
    const std::size_t T = pp.max_index();
    const auto orders = persistence_linear_extension(pp);
    std::vector<ElementTrack> out;
    for (std::size_t i = 0; i <= T; ++i) {
        std::vector<char> hit(pp.slice(i).size(), 0);
        if (i > 0)
            for (auto y : pp.maps()[i - 1])
                hit[y] = 1;
        for (auto x : orders[i]) {
            if (hit[x])
                continue;
            ElementTrack t{i, x, {x}};
            for (std::size_t j = i; j < T; ++j)
                t.trajectory.push_back(pp.apply(j, t.trajectory.back()));
            out.push_back(std::move(t));
        }
    }
    return out;
}

PersistenceMap::PersistenceMap(PersistencePoset source, PersistencePoset target, std::vector<IndexMap> slices)
    : source_(std::move(source)), target_(std::move(target)), slices_(std::move(slices))
{
    const std::size_t T = source_.max_index();
    if (target_.max_index() != T)
        throw Error(ErrorCode::ShapeMismatch, "source has T=" + std::to_string(T) + " but target has T=" +
                                                  std::to_string(target_.max_index()));
    if (slices_.size() != T + 1)
        throw Error(ErrorCode::ShapeMismatch, "map needs " + std::to_string(T + 1) + " slices, got " +
                                                  std::to_string(slices_.size()));
    for (std::size_t i = 0; i <= T; ++i) {
        const auto& src = source_.slice(i);
        const auto& dst = target_.slice(i);
        if (slices_[i].size() != src.size())
            throw Error(ErrorCode::PartialStructureMap, "slice map " + std::to_string(i) + " is not total");
        for (auto v : slices_[i])
            if (v >= dst.size())
                throw Error(ErrorCode::PartialStructureMap,
                            "slice map " + std::to_string(i) + " leaves the target slice");
        if (!is_monotone(src, dst, slices_[i]))
            throw Error(ErrorCode::NotMonotone, "slice map " + std::to_string(i) + " is not monotone");
    }
    for (std::size_t i = 0; i < T; ++i)
        for (std::size_t x = 0; x < source_.slice(i).size(); ++x)
            if (target_.apply(i, slices_[i][x]) != slices_[i + 1][source_.apply(i, x)])
                throw Error(ErrorCode::NotNatural, "slice maps " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                                       " do not commute with the structure maps at '" +
                                                       source_.slice(i).name(x) + "'");
}

PersistenceMap PersistenceMap::identity(const PersistencePoset& pp)
{
    std::vector<IndexMap> slices;
    for (const auto& s : pp.slices()) {
        IndexMap id(s.size());
        for (std::size_t i = 0; i < id.size(); ++i)
            id[i] = i;
        slices.push_back(std::move(id));
    }
    return PersistenceMap(pp, pp, std::move(slices));
}

MonotoneMap PersistenceMap::slice_map(std::size_t i) const
{
    i = std::min(i, max_index());
    return MonotoneMap(source_.slice(i), target_.slice(i), slices_[i]);
}

Subposet restrict_to(const PersistencePoset& pp, const std::vector<std::vector<char>>& keep)
{
    const std::size_t T = pp.max_index();
    std::vector<FinitePoset> slices;
    std::vector<IndexMap> ambient(T + 1);
    std::vector<IndexMap> local(T + 1);
    for (std::size_t i = 0; i <= T; ++i) {
        const auto& s = pp.slice(i);
        local[i].assign(s.size(), s.size());
        for (std::size_t x = 0; x < s.size(); ++x)
            if (keep[i][x]) {
                local[i][x] = ambient[i].size();
                ambient[i].push_back(x);
            }
        slices.push_back(s.induced(ambient[i]));
    }
    std::vector<IndexMap> maps(T);
    for (std::size_t i = 0; i < T; ++i)
        for (auto x : ambient[i]) {
            auto y = pp.apply(i, x);
            if (!keep[i + 1][y])
                throw Error(ErrorCode::NotASubposet, "'" + pp.slice(i).name(x) + "' at slice " + std::to_string(i) +
                                                         " maps outside the subset");
            maps[i].push_back(local[i + 1][y]);
        }
    return {PersistencePoset(std::move(slices), std::move(maps)), std::move(ambient)};
}

namespace {

bool related(const FinitePoset& p, std::size_t z, std::size_t x, bool strict, Direction direction)
{
    if (z == x)
        return !strict;
    return direction == Direction::Below ? p.less(z, x) : p.less(x, z);
}

std::vector<std::vector<char>> empty_masks(const PersistencePoset& pp)
{
    std::vector<std::vector<char>> keep;
    for (const auto& s : pp.slices())
        keep.emplace_back(s.size(), 0);
    return keep;
}

} // namespace

PersistencePoset sub_downset(const PersistencePoset& pp, const ElementTrack& y, bool strict, Direction direction)
{
    auto keep = empty_masks(pp);
    for (std::size_t j = y.birth; j <= pp.max_index(); ++j) {
        auto yj = *y.at(j);
        for (std::size_t z = 0; z < pp.slice(j).size(); ++z)
            keep[j][z] = related(pp.slice(j), z, yj, strict, direction);
    }
    return restrict_to(pp, keep).poset;
}

PersistencePoset fiber(const PersistenceMap& f, const ElementTrack& y)
{
    const auto& src = f.source();
    const auto& dst = f.target();
    auto keep = empty_masks(src);
    for (std::size_t j = y.birth; j <= src.max_index(); ++j) {
        auto yj = *y.at(j);
        for (std::size_t x = 0; x < src.slice(j).size(); ++x)
            keep[j][x] = dst.slice(j).less_equal(f.apply(j, x), yj);
    }
    return restrict_to(src, keep).poset;
}

PersistenceCylinder persistence_mapping_cylinder(const PersistenceMap& f)
{
    const auto& X = f.source();
    const auto& Y = f.target();
    const std::size_t T = f.max_index();
    std::vector<FinitePoset> slices;
    std::vector<IndexMap> ix(T + 1), iy(T + 1);
    for (std::size_t i = 0; i <= T; ++i) {
        auto cyl = mapping_cylinder(f.slice_map(i));
        slices.push_back(std::move(cyl.poset));
        ix[i] = std::move(cyl.include_source.image);
        iy[i] = std::move(cyl.include_target.image);
    }
    std::vector<IndexMap> maps(T);
    for (std::size_t i = 0; i < T; ++i) {
        const std::size_t nx = X.slice(i).size();
        const std::size_t nx_next = X.slice(i + 1).size();
        for (std::size_t a = 0; a < nx; ++a)
            maps[i].push_back(X.apply(i, a));
        for (std::size_t b = 0; b < Y.slice(i).size(); ++b)
            maps[i].push_back(nx_next + Y.apply(i, b));
    }
    PersistencePoset cyl(std::move(slices), std::move(maps));
    PersistenceMap inc_x(X, cyl, std::move(ix));
    PersistenceMap inc_y(Y, cyl, std::move(iy));
    return {std::move(cyl), std::move(inc_x), std::move(inc_y)};
}

PersistencePoset puncture(const PersistencePoset& pp, const Removal& removal)
{
    if (removal.size() != pp.slice_count())
        throw Error(ErrorCode::ShapeMismatch, "removal covers " + std::to_string(removal.size()) + " of " +
                                                  std::to_string(pp.slice_count()) + " slices");
    std::vector<std::vector<char>> keep;
    for (std::size_t i = 0; i <= pp.max_index(); ++i) {
        keep.emplace_back(pp.slice(i).size(), 1);
        if (removal[i]) {
            if (*removal[i] >= pp.slice(i).size())
                throw Error(ErrorCode::UnknownElement, "removal at slice " + std::to_string(i) + " is out of range");
            keep[i][*removal[i]] = 0;
        }
    }
    try {
        return restrict_to(pp, keep).poset;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotASubposet)
            throw Error(ErrorCode::NotClosed, e.what());
        throw;
    }
}

PunctureSides puncture_sides(const PersistencePoset& pp, const Removal& removal)
{
    puncture(pp, removal); // complement closure
    const std::size_t T = pp.max_index();
    std::size_t b = 0;
    while (b <= T && !removal[b])
        ++b;
    if (b > T)
        throw Error(ErrorCode::InvalidRemoval, "nothing is removed");
    std::size_t q = b + 1;
    while (q <= T && removal[q]) {
        if (*removal[q] != pp.apply(q - 1, *removal[q - 1]))
            throw Error(ErrorCode::InvalidRemoval, "removed element at slice " + std::to_string(q) +
                                                       " is not the image of the one at slice " + std::to_string(q - 1));
        ++q;
    }
    for (std::size_t j = q; j <= T; ++j)
        if (removal[j])
            throw Error(ErrorCode::InvalidRemoval, "removal resumes at slice " + std::to_string(j));

    auto below = empty_masks(pp);
    auto above = empty_masks(pp);
    std::size_t x = *removal[b];
    for (std::size_t j = b; j <= T; ++j) {
        if (j > b)
            x = pp.apply(j - 1, x);
        const bool strict = j < q;
        for (std::size_t z = 0; z < pp.slice(j).size(); ++z) {
            below[j][z] = related(pp.slice(j), z, x, strict, Direction::Below);
            above[j][z] = related(pp.slice(j), z, x, strict, Direction::Above);
        }
    }
    return {restrict_to(pp, below).poset, restrict_to(pp, above).poset};
}

namespace {

// Translate cylinder indices into a member's local indices.
std::optional<std::size_t> local_index(const IndexMap& ambient, std::size_t cyl_index)
{
    auto it = std::lower_bound(ambient.begin(), ambient.end(), cyl_index);
    if (it == ambient.end() || *it != cyl_index)
        return std::nullopt;
    return static_cast<std::size_t>(it - ambient.begin());
}

ChainStep make_step(std::size_t track, const Subposet& larger, const Subposet& smaller,
                    const std::vector<std::vector<char>>& removed_cyl)
{
    const std::size_t T = larger.poset.max_index();
    Removal removal(T + 1);
    for (std::size_t j = 0; j <= T; ++j)
        for (std::size_t c = 0; c < removed_cyl[j].size(); ++c)
            if (removed_cyl[j][c])
                removal[j] = local_index(larger.ambient[j], c);
    auto sides = puncture_sides(larger.poset, removal);
    return {track, larger.poset, smaller.poset, std::move(removal), std::move(sides.below), std::move(sides.above)};
}

} // namespace

ChainFiltrations chain_filtrations(const PersistenceMap& f)
{
    auto cyl = persistence_mapping_cylinder(f);
    const auto& M = cyl.poset;
    const std::size_t T = M.max_index();
    const auto x_tracks = tracks(f.source());
    const auto y_tracks = tracks(f.target());

    auto mark_track = [&](std::vector<std::vector<char>>& mask, const ElementTrack& t, const PersistenceMap& inc) {
        for (std::size_t j = t.birth; j <= T; ++j)
            mask[j][inc.apply(j, *t.at(j))] = 1;
    };

    ChainFiltrations out{cyl, {}, {}, {}, {}};

    // Y^r = Y plus the first r tracks of X.
    std::vector<Subposet> y_members;
    auto mask = empty_masks(M);
    for (std::size_t j = 0; j <= T; ++j)
        for (auto c : cyl.include_target.slices()[j])
            mask[j][c] = 1;
    y_members.push_back(restrict_to(M, mask));
    for (const auto& t : x_tracks) {
        mark_track(mask, t, cyl.include_source);
        y_members.push_back(restrict_to(M, mask));
    }
    for (std::size_t r = 1; r < y_members.size(); ++r) {
        auto removed = empty_masks(M);
        mark_track(removed, x_tracks[r - 1], cyl.include_source);
        for (std::size_t s = 0; s + 1 < r; ++s)
            for (std::size_t j = x_tracks[s].birth; j <= T; ++j)
                removed[j][cyl.include_source.apply(j, *x_tracks[s].at(j))] = 0;
        out.y_steps.push_back(make_step(r - 1, y_members[r], y_members[r - 1], removed));
    }

    // X^r = X plus the tracks of Y after the r-th.
    std::vector<Subposet> x_members;
    for (std::size_t r = 0; r <= y_tracks.size(); ++r) {
        auto m = empty_masks(M);
        for (std::size_t j = 0; j <= T; ++j)
            for (auto c : cyl.include_source.slices()[j])
                m[j][c] = 1;
        for (std::size_t s = r; s < y_tracks.size(); ++s)
            mark_track(m, y_tracks[s], cyl.include_target);
        x_members.push_back(restrict_to(M, m));
    }
    for (std::size_t r = 1; r < x_members.size(); ++r) {
        auto removed = empty_masks(M);
        mark_track(removed, y_tracks[r - 1], cyl.include_target);
        for (std::size_t s = r; s < y_tracks.size(); ++s)
            for (std::size_t j = y_tracks[s].birth; j <= T; ++j)
                removed[j][cyl.include_target.apply(j, *y_tracks[s].at(j))] = 0;
        out.x_steps.push_back(make_step(r - 1, x_members[r - 1], x_members[r], removed));
    }

    for (auto& m : y_members)
        out.y_chain.push_back(std::move(m.poset));
    for (auto& m : x_members)
        out.x_chain.push_back(std::move(m.poset));
    return out;
}

} // namespace pqm
