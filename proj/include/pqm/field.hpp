#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pqm {

using Scalar = std::uint32_t;

/// Arithmetic in Z/pZ for a prime p. Values are kept in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p = 2);

    std::uint32_t characteristic() const noexcept { return p_; }

    Scalar reduce(std::int64_t v) const noexcept
    {
        auto r = v % static_cast<std::int64_t>(p_);
        return static_cast<Scalar>(r < 0 ? r + p_ : r);
    }
    Scalar add(Scalar a, Scalar b) const noexcept { return static_cast<Scalar>((std::uint64_t{a} + b) % p_); }
    Scalar sub(Scalar a, Scalar b) const noexcept { return static_cast<Scalar>((std::uint64_t{a} + p_ - b) % p_); }
    Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const noexcept { return static_cast<Scalar>((std::uint64_t{a} * b) % p_); }
    Scalar inv(Scalar a) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

/// Dense row-major matrix over a prime field.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix multiply(const PrimeField& field, const Matrix& a, const Matrix& b);

/// Block-diagonal sum [a 0; 0 b].
Matrix block_diagonal(const Matrix& a, const Matrix& b);

/// Rank by Gaussian elimination with first-nonzero pivoting.
std::size_t rank(const PrimeField& field, Matrix m);

/// Inverse of a square matrix; throws ShapeMismatch when singular or not square.
Matrix inverse(const PrimeField& field, const Matrix& m);

} // namespace pqm
