#include "pqm/homology.hpp"

#include "pqm/error.hpp"

#include <algorithm>

namespace pqm {

namespace {

// a += factor * b
void axpy(Chain& a, Scalar factor, const Chain& b, const PrimeField& field)
{
    if (factor == 0)
        return;
    Chain out;
    out.reserve(a.size() + b.size());
    auto ia = a.cbegin();
    auto ib = b.cbegin();
    while (ia != a.cend() || ib != b.cend()) {
        if (ib == b.cend() || (ia != a.cend() && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == a.cend() || ib->first < ia->first) {
            out.emplace_back(ib->first, field.mul(factor, ib->second));
            ++ib;
        } else {
            auto v = field.add(ia->second, field.mul(factor, ib->second));
            if (v != 0)
                out.emplace_back(ia->first, v);
            ++ia;
            ++ib;
        }
    }
    a = std::move(out);
}

struct Reduction {
    std::vector<Chain> columns;         // nonzero reduced columns
    std::vector<std::ptrdiff_t> pivot;  // row -> position in columns
    std::vector<Chain> cycles;          // V-columns of the columns that vanished
};

// Standard column reduction of the given columns (rows < row_count), tracking V.
Reduction reduce(std::vector<Chain> columns, std::size_t row_count, const PrimeField& field)
{
    Reduction r;
    r.pivot.assign(row_count, -1);
    std::vector<Chain> v_of_pivot;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        Chain col = std::move(columns[j]);
        Chain v{{j, 1}};
        while (!col.empty()) {
            const auto [low, value] = col.back();
            const auto p = r.pivot[low];
            if (p < 0)
                break;
            const auto& piv = r.columns[static_cast<std::size_t>(p)];
            const Scalar factor = field.neg(field.mul(value, field.inv(piv.back().second)));
            axpy(col, factor, piv, field);
            axpy(v, factor, v_of_pivot[static_cast<std::size_t>(p)], field);
        }
        if (col.empty()) {
            r.cycles.push_back(std::move(v));
        } else {
            r.pivot[col.back().first] = static_cast<std::ptrdiff_t>(r.columns.size());
            r.columns.push_back(std::move(col));
            v_of_pivot.push_back(std::move(v));
        }
    }
    return r;
}

std::vector<Chain> boundary_columns(const SimplicialComplex& k, std::size_t dim, const PrimeField& field)
{
    std::vector<Chain> cols;
    for (std::size_t j = 0; j < k.count(dim); ++j)
        cols.push_back(boundary_column(k, dim, j, field));
    return cols;
}

// Sign of the permutation sorting `v` (distinct entries).
bool odd_permutation(std::vector<std::size_t> v)
{
    bool odd = false;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j])
                odd = !odd;
    return odd;
}

} // namespace

Chain boundary_column(const SimplicialComplex& k, std::size_t dim, std::size_t j, const PrimeField& field)
{
    const auto& s = k.simplices(dim)[j];
    Chain col;
    for (std::size_t skip = 0; skip < s.size(); ++skip) {
        Simplex face;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != skip)
                face.push_back(s[i]);
        col.emplace_back(*k.index_of(face), skip % 2 == 0 ? Scalar{1} : field.neg(1));
    }
    std::sort(col.begin(), col.end());
    return col;
}

Matrix boundary_matrix(const SimplicialComplex& k, std::size_t dim, const PrimeField& field)
{
    const std::size_t rows = dim == 0 ? 0 : k.count(dim - 1);
    Matrix m(rows, k.count(dim));
    if (dim == 0)
        return m;
    for (std::size_t j = 0; j < k.count(dim); ++j)
        for (auto [row, value] : boundary_column(k, dim, j, field))
            m(row, j) = value;
    return m;
}

std::vector<Scalar> HomologyBasis::coordinates(const Chain& cycle) const
{
    std::vector<Scalar> coords(reps_.size(), 0);
    Chain c = cycle;
    while (!c.empty()) {
        const auto [low, value] = c.back();
        const Chain* column = nullptr;
        if (boundary_pivot_[low] >= 0) {
            column = &boundaries_[static_cast<std::size_t>(boundary_pivot_[low])];
        } else if (rep_pivot_[low] >= 0) {
            const auto h = static_cast<std::size_t>(rep_pivot_[low]);
            column = &reps_[h];
            coords[h] = field_.mul(value, field_.inv(column->back().second));
        } else {
            throw Error(ErrorCode::NotACycle, "chain is not a cycle in degree " + std::to_string(degree_));
        }
        axpy(c, field_.neg(field_.mul(value, field_.inv(column->back().second))), *column, field_);
    }
    return coords;
}

std::vector<HomologyBasis> homology_all(const SimplicialComplex& k, std::size_t max_degree, const PrimeField& field,
                                        bool reduced)
{
    // reductions[d] reduces d_d; d_0 is zero, or the augmentation when reduced.
    std::vector<Reduction> reductions;
    for (std::size_t d = 0; d <= max_degree + 1; ++d) {
        if (d == 0) {
            std::vector<Chain> cols(k.count(0));
            if (reduced)
                for (auto& c : cols)
                    c = {{0, 1}};
            reductions.push_back(reduce(std::move(cols), 1, field));
        } else {
            reductions.push_back(reduce(boundary_columns(k, d, field), k.count(d - 1), field));
        }
    }

    std::vector<HomologyBasis> out;
    for (std::size_t d = 0; d <= max_degree; ++d) {
        HomologyBasis h;
        h.field_ = field;
        h.degree_ = d;
        const std::size_t n = k.count(d);
        h.boundaries_ = reductions[d + 1].columns;
        h.boundary_pivot_ = reductions[d + 1].pivot;
        h.boundary_pivot_.resize(n, -1);
        h.rep_pivot_.assign(n, -1);
        for (auto z : reductions[d].cycles) {
            while (!z.empty()) {
                const auto [low, value] = z.back();
                const Chain* column = nullptr;
                if (h.boundary_pivot_[low] >= 0)
                    column = &h.boundaries_[static_cast<std::size_t>(h.boundary_pivot_[low])];
                else if (h.rep_pivot_[low] >= 0)
                    column = &h.reps_[static_cast<std::size_t>(h.rep_pivot_[low])];
                else
                    break;
                axpy(z, field.neg(field.mul(value, field.inv(column->back().second))), *column, field);
            }
            if (!z.empty()) {
                h.rep_pivot_[z.back().first] = static_cast<std::ptrdiff_t>(h.reps_.size());
                h.reps_.push_back(std::move(z));
            }
        }
        out.push_back(std::move(h));
    }
    return out;
}

HomologyBasis homology(const SimplicialComplex& k, std::size_t degree, const PrimeField& field, bool reduced)
{
    return std::move(homology_all(k, degree, field, reduced).back());
}

Chain push_forward(const SimplicialComplex& source, const SimplicialComplex& target,
                   const std::vector<std::size_t>& vertex_map, std::size_t dim, const Chain& chain,
                   const PrimeField& field)
{
    Chain image;
    for (auto [idx, coeff] : chain) {
        std::vector<std::size_t> verts;
        for (auto v : source.simplices(dim)[idx])
            verts.push_back(vertex_map[v]);
        Simplex sorted = verts;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            continue;
        auto t = target.index_of(sorted);
        if (!t)
            throw Error(ErrorCode::NotSimplicial, "vertex map does not send a simplex to a simplex");
        image.emplace_back(*t, odd_permutation(verts) ? field.neg(coeff) : coeff);
    }
    std::sort(image.begin(), image.end());
    Chain merged;
    for (auto [idx, coeff] : image) {
        if (!merged.empty() && merged.back().first == idx)
            merged.back().second = field.add(merged.back().second, coeff);
        else
            merged.emplace_back(idx, coeff);
        if (merged.back().second == 0)
            merged.pop_back();
    }
    return merged;
}

Matrix induced_on_homology(const SimplicialComplex& source, const SimplicialComplex& target,
                           const std::vector<std::size_t>& vertex_map, const HomologyBasis& source_basis,
                           const HomologyBasis& target_basis)
{
    const auto& field = source_basis.field();
    Matrix m(target_basis.dimension(), source_basis.dimension());
    for (std::size_t c = 0; c < source_basis.dimension(); ++c) {
        auto image = push_forward(source, target, vertex_map, source_basis.degree(),
                                  source_basis.representatives()[c], field);
        auto coords = target_basis.coordinates(image);
        for (std::size_t r = 0; r < coords.size(); ++r)
            m(r, c) = coords[r];
    }
    return m;
}

Matrix induced_on_homology(const SimplicialMap& sm, const HomologyBasis& source_basis, const HomologyBasis& target_basis)
{
    return induced_on_homology(sm.source, sm.target, sm.vertex_map, source_basis, target_basis);
}

TowerHomology tower_homology(const ComplexTower& tower, std::size_t max_degree, const PrimeField& field, bool reduced)
{
    const std::size_t T = tower.max_index();
    TowerHomology out;
    for (const auto& k : tower.complexes)
        out.bases.push_back(homology_all(k, max_degree, field, reduced));

    for (std::size_t d = 0; d <= max_degree; ++d) {
        std::vector<std::size_t> dims;
        std::vector<Matrix> transitions;
        for (std::size_t i = 0; i <= T; ++i)
            dims.push_back(out.bases[i][d].dimension());
        for (std::size_t i = 0; i < T; ++i)
            transitions.push_back(induced_on_homology(tower.complexes[i], tower.complexes[i + 1], tower.maps[i],
                                                      out.bases[i][d], out.bases[i + 1][d]));
        out.modules.emplace_back(field, std::move(dims), std::move(transitions));
    }
    return out;
}

std::vector<PersistenceModule> homology_towers(const ComplexTower& tower, std::size_t max_degree,
                                               const PrimeField& field, bool reduced)
{
    return tower_homology(tower, max_degree, field, reduced).modules;
}

std::vector<std::size_t> reduced_betti(const SimplicialComplex& k, const PrimeField& field)
{
    std::vector<std::size_t> betti{k.empty() ? 1u : 0u};
    if (k.dimension_count() == 0)
        return betti;
    for (const auto& h : homology_all(k, k.dimension_count() - 1, field, true))
        betti.push_back(h.dimension());
    return betti;
}

PersistenceModule homology_tower(const ComplexTower& tower, std::size_t degree, const PrimeField& field, bool reduced)
{
    return std::move(homology_towers(tower, degree, field, reduced).back());
}

} // namespace pqm
