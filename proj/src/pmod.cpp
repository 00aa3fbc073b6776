#include "pqm/pmod.hpp"

#include "pqm/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace pqm {

std::uint64_t ExtNat::value() const
{
    if (is_infinite())
        throw Error(ErrorCode::ShapeMismatch, "value of infinity requested");
    return value_;
}

std::string ExtNat::to_string() const
{
    return is_infinite() ? "inf" : std::to_string(value_);
}

void normalize(Barcode& b)
{
    std::sort(b.begin(), b.end());
}

std::string to_string(const Barcode& b)
{
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < b.size(); ++i)
        os << (i ? ", " : "") << '[' << b[i].birth << ',' << b[i].death.to_string() << ')';
    os << '}';
    return os.str();
}

PersistenceModule::PersistenceModule(PrimeField field, std::vector<std::size_t> dims, std::vector<Matrix> transitions)
    : field_(field), dims_(std::move(dims)), transitions_(std::move(transitions))
{
    if (dims_.empty())
        throw Error(ErrorCode::ShapeMismatch, "module needs at least one index");
    if (transitions_.size() + 1 != dims_.size())
        throw Error(ErrorCode::ShapeMismatch, "module with " + std::to_string(dims_.size()) + " indices has " +
                                                  std::to_string(transitions_.size()) + " transitions");
    for (std::size_t i = 0; i < transitions_.size(); ++i)
        if (transitions_[i].rows() != dims_[i + 1] || transitions_[i].cols() != dims_[i])
            throw Error(ErrorCode::ShapeMismatch, "transition " + std::to_string(i) + " has the wrong shape");
}

PersistenceModule PersistenceModule::zero(PrimeField field, std::size_t max_index)
{
    return PersistenceModule(field, std::vector<std::size_t>(max_index + 1, 0),
                             std::vector<Matrix>(max_index, Matrix(0, 0)));
}

PersistenceModule PersistenceModule::from_barcode(PrimeField field, std::size_t max_index, const Barcode& bars)
{
    const std::size_t T = max_index;
    std::vector<std::vector<std::size_t>> alive(T + 1); // bar ids alive at each index
    for (std::size_t k = 0; k < bars.size(); ++k) {
        const auto& bar = bars[k];
        if (bar.birth > T || ExtNat(bar.birth) >= bar.death || (bar.death.is_finite() && bar.death.value() > T))
            throw Error(ErrorCode::ShapeMismatch, "bar does not fit in 0.." + std::to_string(T));
        for (std::size_t i = bar.birth; i <= T && bar.contains(i); ++i)
            alive[i].push_back(k);
    }
    std::vector<std::size_t> dims;
    for (const auto& a : alive)
        dims.push_back(a.size());
    std::vector<Matrix> transitions;
    for (std::size_t i = 0; i < T; ++i) {
        Matrix t(dims[i + 1], dims[i]);
        for (std::size_t c = 0; c < alive[i].size(); ++c) {
            auto it = std::find(alive[i + 1].begin(), alive[i + 1].end(), alive[i][c]);
            if (it != alive[i + 1].end())
                t(static_cast<std::size_t>(it - alive[i + 1].begin()), c) = 1;
        }
        transitions.push_back(std::move(t));
    }
    return PersistenceModule(field, std::move(dims), std::move(transitions));
}

Matrix PersistenceModule::composite(std::size_t i, std::size_t j) const
{
    const std::size_t T = max_index();
    Matrix m = Matrix::identity(dim(i));
    for (std::size_t k = i; k < std::min(j, T); ++k)
        m = multiply(field_, transitions_[k], m);
    return m;
}

PersistenceModule PersistenceModule::change_basis(const std::vector<Matrix>& bases) const
{
    if (bases.size() != dims_.size())
        throw Error(ErrorCode::ShapeMismatch, "one basis change per index required");
    std::vector<Matrix> t;
    for (std::size_t i = 0; i < transitions_.size(); ++i)
        t.push_back(multiply(field_, multiply(field_, bases[i + 1], transitions_[i]), inverse(field_, bases[i])));
    return PersistenceModule(field_, dims_, std::move(t));
}

std::vector<std::vector<std::size_t>> rank_invariant(const PersistenceModule& m)
{
    const std::size_t T = m.max_index();
    std::vector<std::vector<std::size_t>> r(T + 2, std::vector<std::size_t>(T + 2, 0));
    for (std::size_t i = 0; i <= T + 1; ++i) {
        Matrix running = Matrix::identity(m.dim(i));
        r[i][i] = m.dim(i);
        for (std::size_t j = i + 1; j <= T + 1; ++j) {
            if (j - 1 < T)
                running = multiply(m.field(), m.transitions()[j - 1], running);
            r[i][j] = rank(m.field(), running);
        }
    }
    return r;
}

Barcode barcode(const PersistenceModule& m)
{
    const std::size_t T = m.max_index();
    const auto r = rank_invariant(m);
    auto at = [&](std::ptrdiff_t i, std::size_t j) -> long long { return i < 0 ? 0 : static_cast<long long>(r[i][j]); };
    Barcode out;
    auto emit = [&](std::size_t b, ExtNat d, long long mult) {
        if (mult < 0)
            throw Error(ErrorCode::NegativeMultiplicity,
                        "multiplicity " + std::to_string(mult) + " for [" + std::to_string(b) + "," + d.to_string() + ")");
        for (long long k = 0; k < mult; ++k)
            out.push_back({b, d});
    };
    for (std::size_t b = 0; b <= T; ++b) {
        const auto pb = static_cast<std::ptrdiff_t>(b);
        for (std::size_t d = b + 1; d <= T; ++d)
            emit(b, d, (at(pb, d - 1) - at(pb, d)) - (at(pb - 1, d - 1) - at(pb - 1, d)));
        emit(b, ExtNat::infinity(), at(pb, T) - at(pb - 1, T));
    }
    normalize(out);
    return out;
}

bool eps_trivial(const Barcode& b, std::uint64_t eps)
{
    return std::all_of(b.begin(), b.end(), [&](const Bar& bar) { return bar.length() <= ExtNat(2 * eps); });
}

bool eps_trivial(const PersistenceModule& m, std::uint64_t eps)
{
    return eps_trivial(barcode(m), eps);
}

bool eps_trivial_by_nilpotency(const PersistenceModule& m, std::uint64_t eps)
{
    for (std::size_t i = 0; i <= m.max_index(); ++i)
        if (!m.composite(i, i + 2 * eps).is_zero())
            return false;
    return true;
}

ExtNat triviality_defect(const Barcode& b)
{
    std::uint64_t eps = 0;
    for (const auto& bar : b) {
        if (bar.death.is_infinite())
            return ExtNat::infinity();
        eps = std::max<std::uint64_t>(eps, (bar.length().value() + 1) / 2);
    }
    return eps;
}

ExtNat triviality_defect(const PersistenceModule& m)
{
    return triviality_defect(barcode(m));
}

PersistenceModule direct_sum(const PersistenceModule& a, const PersistenceModule& b)
{
    if (a.max_index() != b.max_index() || !(a.field() == b.field()))
        throw Error(ErrorCode::ShapeMismatch, "direct sum of modules over different index ranges or fields");
    std::vector<std::size_t> dims;
    std::vector<Matrix> t;
    for (std::size_t i = 0; i <= a.max_index(); ++i)
        dims.push_back(a.dims()[i] + b.dims()[i]);
    for (std::size_t i = 0; i < a.max_index(); ++i)
        t.push_back(block_diagonal(a.transitions()[i], b.transitions()[i]));
    return PersistenceModule(a.field(), std::move(dims), std::move(t));
}

namespace {

std::uint64_t gap(std::uint64_t x, std::uint64_t y)
{
    return x > y ? x - y : y - x;
}

bool close(const Bar& a, const Bar& b, std::uint64_t eps)
{
    if (a.death.is_infinite() != b.death.is_infinite())
        return false;
    if (gap(a.birth, b.birth) > eps)
        return false;
    return a.death.is_infinite() || gap(a.death.value(), b.death.value()) <= eps;
}

bool short_bar(const Bar& a, std::uint64_t eps)
{
    return a.death.is_finite() && a.length().value() <= 2 * eps;
}

// Kuhn's augmenting-path matching; returns true if every left vertex is matched.
bool perfect_matching(std::size_t n, const std::vector<std::vector<std::size_t>>& adj)
{
    std::vector<std::size_t> match_right(n, n);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t u) {
        for (auto v : adj[u]) {
            if (seen[v])
                continue;
            seen[v] = 1;
            if (match_right[v] == n || augment(match_right[v])) {
                match_right[v] = u;
                return true;
            }
        }
        return false;
    };
    for (std::size_t u = 0; u < n; ++u) {
        seen.assign(n, 0);
        if (!augment(u))
            return false;
    }
    return true;
}

} // namespace

bool bottleneck_feasible(const Barcode& a, const Barcode& b, std::uint64_t eps)
{
    // Left: bars of a, then diagonal slots for bars of b.
    // Right: bars of b, then diagonal slots for bars of a.
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j)
            if (close(a[i], b[j], eps))
                adj[i].push_back(j);
        if (short_bar(a[i], eps))
            adj[i].push_back(nb + i);
    }
    for (std::size_t j = 0; j < nb; ++j) {
        if (short_bar(b[j], eps))
            adj[na + j].push_back(j);
        for (std::size_t i = 0; i < na; ++i)
            adj[na + j].push_back(nb + i);
    }
    return perfect_matching(n, adj);
}

ExtNat bottleneck_distance(const Barcode& a, const Barcode& b)
{
    auto essential = [](const Barcode& c) {
        return std::count_if(c.begin(), c.end(), [](const Bar& bar) { return bar.death.is_infinite(); });
    };
    if (essential(a) != essential(b))
        return ExtNat::infinity();
    std::uint64_t hi = 0;
    for (const auto* c : {&a, &b})
        for (const auto& bar : *c)
            hi = std::max<std::uint64_t>(hi, bar.death.is_finite() ? bar.death.value() : bar.birth);
    std::uint64_t lo = 0;
    while (lo < hi) {
        const auto mid = lo + (hi - lo) / 2;
        if (bottleneck_feasible(a, b, mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

namespace {

// Calls visit(matrix) for every rows x cols matrix over F_p.
bool for_each_matrix(const PrimeField& field, std::size_t rows, std::size_t cols,
                     const std::function<bool(const Matrix&)>& visit)
{
    Matrix m(rows, cols);
    const std::size_t n = rows * cols;
    const auto p = field.characteristic();
    while (true) {
        if (visit(m))
            return true;
        std::size_t k = 0;
        for (; k < n; ++k) {
            auto& v = m(k / cols, k % cols);
            if (++v < p)
                break;
            v = 0;
        }
        if (k == n)
            return false;
    }
}

// Backtracking search for an eps-morphism family src -> dst (maps src_i -> dst_{i+eps}),
// calling accept(family) for every complete family; stops early when accept returns true.
// `check(i, family)` is called once family[i] is fixed and may prune.
bool search_morphisms(const PersistenceModule& src, const PersistenceModule& dst, std::uint64_t eps,
                      const std::function<bool(std::size_t, const std::vector<Matrix>&)>& check,
                      const std::function<bool(const std::vector<Matrix>&)>& accept)
{
    const std::size_t T = src.max_index();
    const auto& field = src.field();
    std::vector<Matrix> family(T + 1);
    std::function<bool(std::size_t)> step = [&](std::size_t i) -> bool {
        if (i > T)
            return accept(family);
        const std::size_t rows = dst.dim(i + eps), cols = src.dim(i);
        return for_each_matrix(field, rows, cols, [&](const Matrix& phi) {
            if (i > 0) {
                // naturality: phi_i * M_{i-1 -> i} == N_{i-1+eps -> i+eps} * phi_{i-1}
                auto lhs = multiply(field, phi, src.composite(i - 1, i));
                auto rhs = multiply(field, dst.composite(i - 1 + eps, i + eps), family[i - 1]);
                if (!(lhs == rhs))
                    return false;
            }
            family[i] = phi;
            if (!check(i, family))
                return false;
            return step(i + 1);
        });
    };
    return step(0);
}

double log2_candidates(const PersistenceModule& src, const PersistenceModule& dst, std::uint64_t eps)
{
    double bits = 0;
    const double lp = std::log2(static_cast<double>(src.field().characteristic()));
    for (std::size_t i = 0; i <= src.max_index(); ++i)
        bits += lp * static_cast<double>(dst.dim(i + eps) * src.dim(i));
    return bits;
}

} // namespace

bool interleaving_bruteforce(const PersistenceModule& m, const PersistenceModule& n, std::uint64_t eps)
{
    if (m.max_index() != n.max_index() || !(m.field() == n.field()))
        throw Error(ErrorCode::ShapeMismatch, "modules over different index ranges or fields");
    if (log2_candidates(m, n, eps) > 20 || log2_candidates(n, m, eps) > 20)
        throw Error(ErrorCode::TooLarge, "interleaving search space exceeds 2^20 per morphism");
    const std::size_t T = m.max_index();
    const auto& field = m.field();
    const auto shift = 2 * eps;

    auto no_check = [](std::size_t, const std::vector<Matrix>&) { return true; };
    return search_morphisms(m, n, eps, no_check, [&](const std::vector<Matrix>& phi) {
        auto phi_at = [&](std::size_t i) -> const Matrix& { return phi[std::min(i, T)]; };
        // psi_k is fixed at step k; test every composite that only needs psi_0..psi_k.
        auto check = [&](std::size_t k, const std::vector<Matrix>& psi) {
            // phi_{k+eps} psi_k == N_{k -> k+2eps}
            if (!(multiply(field, phi_at(k + eps), psi[k]) == n.composite(k, k + shift)))
                return false;
            // psi_{i+eps} phi_i == M_{i -> i+2eps} for every i with min(i+eps, T) == k
            for (std::size_t i = 0; i <= T; ++i) {
                if (std::min<std::size_t>(i + eps, T) != k)
                    continue;
                if (!(multiply(field, psi[k], phi[i]) == m.composite(i, i + shift)))
                    return false;
            }
            return true;
        };
        return search_morphisms(n, m, eps, check, [](const std::vector<Matrix>&) { return true; });
    });
}

ExtNat interleaving_distance_bruteforce(const PersistenceModule& m, const PersistenceModule& n)
{
    for (std::uint64_t eps = 0; eps <= m.max_index() + 1; ++eps)
        if (interleaving_bruteforce(m, n, eps))
            return eps;
    return ExtNat::infinity();
}

ExtNat point_comparison_defect(const Barcode& b)
{
    return bottleneck_distance(b, Barcode{{0, ExtNat::infinity()}});
}

ExtNat point_comparison_defect(const PersistenceModule& m)
{
    return point_comparison_defect(barcode(m));
}

} // namespace pqm
