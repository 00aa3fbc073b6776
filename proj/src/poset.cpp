#include "pqm/poset.hpp"

#include "pqm/error.hpp"

#include <algorithm>
#include <queue>

namespace pqm {

namespace {

void close_transitively(std::vector<char>& less, std::size_t n)
{
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!less[i * n + k])
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (less[k * n + j])
                    less[i * n + j] = 1;
        }
}

} // namespace

FinitePoset::FinitePoset(std::vector<std::string> elements,
                         const std::vector<std::pair<std::string, std::string>>& strict_pairs)
{
    std::sort(elements.begin(), elements.end());
    if (auto dup = std::adjacent_find(elements.begin(), elements.end()); dup != elements.end())
        throw Error(ErrorCode::DuplicateElement, "element '" + *dup + "' listed twice");
    elements_ = std::move(elements);
    const std::size_t n = elements_.size();
    std::vector<char> less(n * n, 0);
    for (const auto& [a, b] : strict_pairs) {
        auto ia = index_of(a);
        auto ib = index_of(b);
        if (!ia)
            throw Error(ErrorCode::UnknownElement, "relation references '" + a + "'");
        if (!ib)
            throw Error(ErrorCode::UnknownElement, "relation references '" + b + "'");
        less[*ia * n + *ib] = 1;
    }
    *this = from_table(std::move(elements_), std::move(less));
}

FinitePoset FinitePoset::from_table(std::vector<std::string> elements, std::vector<char> less)
{
    const std::size_t n = elements.size();
    close_transitively(less, n);
    for (std::size_t i = 0; i < n; ++i)
        if (less[i * n + i])
            throw Error(ErrorCode::CycleError, "order relation has a cycle through '" + elements[i] + "'");
    FinitePoset p;
    p.elements_ = std::move(elements);
    p.less_ = std::move(less);
    return p;
}

std::optional<std::size_t> FinitePoset::index_of(std::string_view id) const
{
    auto it = std::lower_bound(elements_.begin(), elements_.end(), id);
    if (it == elements_.end() || *it != id)
        return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t FinitePoset::require(std::string_view id) const
{
    auto i = index_of(id);
    if (!i)
        throw Error(ErrorCode::UnknownElement, "no element '" + std::string(id) + "'");
    return *i;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::relation() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = 0; b < size(); ++b)
            if (less(a, b))
                out.emplace_back(a, b);
    return out;
}

FinitePoset FinitePoset::induced(std::span<const std::size_t> subset) const
{
    const std::size_t m = subset.size();
    FinitePoset p;
    p.elements_.reserve(m);
    p.less_.assign(m * m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        p.elements_.push_back(elements_[subset[i]]);
        for (std::size_t j = 0; j < m; ++j)
            p.less_[i * m + j] = less_[subset[i] * size() + subset[j]];
    }
    return p;
}

std::size_t FinitePoset::height() const
{
    if (empty())
        return 0;
    // longest chain ending at each element, visiting in a linear extension
    std::vector<std::size_t> longest(size(), 1);
    for (auto b : linear_extension(*this))
        for (std::size_t a = 0; a < size(); ++a)
            if (less(a, b))
                longest[b] = std::max(longest[b], longest[a] + 1);
    return *std::max_element(longest.begin(), longest.end());
}

MonotoneMap::MonotoneMap(FinitePoset source_, FinitePoset target_, std::vector<std::size_t> image_)
    : source(std::move(source_)), target(std::move(target_)), image(std::move(image_))
{
    if (image.size() != source.size())
        throw Error(ErrorCode::PartialStructureMap, "map assigns " + std::to_string(image.size()) +
                                                        " images to " + std::to_string(source.size()) +
                                                        " elements");
    for (std::size_t x = 0; x < image.size(); ++x)
        if (image[x] >= target.size())
            throw Error(ErrorCode::PartialStructureMap, "image of '" + source.name(x) + "' is not in the target");
}

MonotoneMap MonotoneMap::identity(const FinitePoset& p)
{
    std::vector<std::size_t> image(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        image[i] = i;
    return MonotoneMap(p, p, std::move(image));
}

bool is_monotone(const FinitePoset& source, const FinitePoset& target, std::span<const std::size_t> image)
{
    for (std::size_t a = 0; a < source.size(); ++a)
        for (std::size_t b = 0; b < source.size(); ++b)
            if (source.less(a, b) && !target.less_equal(image[a], image[b]))
                return false;
    return true;
}

bool is_monotone(const MonotoneMap& f)
{
    return is_monotone(f.source, f.target, f.image);
}

std::vector<std::size_t> downset_indices(const FinitePoset& p, std::size_t x, bool strict, Direction direction)
{
    std::vector<std::size_t> out;
    for (std::size_t z = 0; z < p.size(); ++z) {
        if (z == x) {
            if (!strict)
                out.push_back(z);
            continue;
        }
        if (direction == Direction::Below ? p.less(z, x) : p.less(x, z))
            out.push_back(z);
    }
    return out;
}

FinitePoset downset(const FinitePoset& p, std::string_view x, bool strict, Direction direction)
{
    auto idx = downset_indices(p, p.require(x), strict, direction);
    return p.induced(idx);
}

std::vector<std::size_t> linear_extension(const FinitePoset& p)
{
    const std::size_t n = p.size();
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (p.less(a, b))
                ++indegree[b];
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indegree[v] == 0)
            ready.push(v);
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        auto v = ready.top();
        ready.pop();
        order.push_back(v);
        for (std::size_t w = 0; w < n; ++w)
            if (p.less(v, w) && --indegree[w] == 0)
                ready.push(w);
    }
    return order;
}

PosetCylinder mapping_cylinder(const MonotoneMap& f)
{
    if (!is_monotone(f))
        throw Error(ErrorCode::NotMonotone, "mapping cylinder of a non-monotone map");
    const auto& x = f.source;
    const auto& y = f.target;
    const std::size_t nx = x.size(), ny = y.size(), n = nx + ny;

    // "X:" sorts before "Y:", so source elements occupy [0, nx).
    std::vector<std::string> names;
    names.reserve(n);
    for (const auto& e : x.elements())
        names.push_back(std::string(kSourceTag) + e);
    for (const auto& e : y.elements())
        names.push_back(std::string(kTargetTag) + e);

    std::vector<char> less(n * n, 0);
    for (std::size_t a = 0; a < nx; ++a)
        for (std::size_t b = 0; b < nx; ++b)
            less[a * n + b] = x.less(a, b);
    for (std::size_t a = 0; a < ny; ++a)
        for (std::size_t b = 0; b < ny; ++b)
            less[(nx + a) * n + nx + b] = y.less(a, b);
    for (std::size_t a = 0; a < nx; ++a)
        for (std::size_t b = 0; b < ny; ++b)
            less[a * n + nx + b] = y.less_equal(f(a), b);

    auto cyl = FinitePoset::from_table(std::move(names), std::move(less));
    std::vector<std::size_t> ix(nx), iy(ny);
    for (std::size_t a = 0; a < nx; ++a)
        ix[a] = a;
    for (std::size_t b = 0; b < ny; ++b)
        iy[b] = nx + b;
    MonotoneMap inc_x(x, cyl, std::move(ix));
    MonotoneMap inc_y(y, cyl, std::move(iy));
    return {std::move(cyl), std::move(inc_x), std::move(inc_y)};
}

} // namespace pqm
