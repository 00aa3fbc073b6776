#include "pqm/field.hpp"

#include "pqm/error.hpp"

#include <string>
#include <utility>

namespace pqm {

bool is_prime(std::uint32_t n) noexcept
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p)
{
    if (!is_prime(p))
        throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
}

Scalar PrimeField::inv(Scalar a) const
{
    if (a % p_ == 0)
        throw Error(ErrorCode::ShapeMismatch, "inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p_;
    for (std::uint32_t e = p_ - 2; e > 0; e >>= 1) {
        if (e & 1u)
            result = result * base % p_;
        base = base * base % p_;
    }
    return static_cast<Scalar>(result);
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

bool Matrix::is_zero() const noexcept
{
    for (auto v : data_)
        if (v != 0)
            return false;
    return true;
}

Matrix multiply(const PrimeField& field, const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorCode::ShapeMismatch, "matrix product " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + " * " + std::to_string(b.rows()) +
                                                  "x" + std::to_string(b.cols()));
    Matrix c(a.rows(), b.cols());
    const std::uint64_t p = field.characteristic();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::uint64_t aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) = static_cast<Scalar>((c(i, j) + aik * b(k, j)) % p);
        }
    return c;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b)
{
    Matrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

namespace {

// Reduces m to row echelon form in place; returns the pivot columns.
std::vector<std::size_t> echelon(const PrimeField& field, Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col) == 0)
            ++pivot;
        if (pivot == m.rows())
            continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(pivot, j), m(row, j));
        const Scalar scale = field.inv(m(row, col));
        for (std::size_t j = col; j < m.cols(); ++j)
            m(row, j) = field.mul(m(row, j), scale);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0)
                continue;
            const Scalar factor = m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(r, j) = field.sub(m(r, j), field.mul(factor, m(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(const PrimeField& field, Matrix m)
{
    return echelon(field, m).size();
}

Matrix inverse(const PrimeField& field, const Matrix& m)
{
    if (m.rows() != m.cols())
        throw Error(ErrorCode::ShapeMismatch, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = echelon(field, aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n))
        throw Error(ErrorCode::ShapeMismatch, "matrix is singular");
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = aug(i, n + j);
    return out;
}

} // namespace pqm
