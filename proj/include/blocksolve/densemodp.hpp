#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "blocksolve/arith.hpp"

namespace blocksolve {

// Row-major dense matrix over Z_p.
class DenseModMatrix {
public:
    DenseModMatrix(PrimeField F, std::size_t rows, std::size_t cols);
    DenseModMatrix(PrimeField F, std::size_t rows, std::size_t cols, std::vector<u64> data);

    static DenseModMatrix identity(PrimeField F, std::size_t n);
    // Entries are reduced into [0, p).
    static DenseModMatrix from_rows(PrimeField F, const std::vector<std::vector<long>>& rows);

    const PrimeField& field() const noexcept { return F_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    u64& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    u64 operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<u64> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const u64> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const u64> data() const noexcept { return data_; }

    bool is_zero() const noexcept;
    DenseModMatrix transpose() const;

    friend bool operator==(const DenseModMatrix& a, const DenseModMatrix& b) {
        return a.F_ == b.F_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    PrimeField F_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<u64> data_;
};

DenseModMatrix mat_mul(const DenseModMatrix& A, const DenseModMatrix& B);
DenseModMatrix mat_add(const DenseModMatrix& A, const DenseModMatrix& B);
DenseModMatrix mat_sub(const DenseModMatrix& A, const DenseModMatrix& B);
DenseModMatrix mat_scale(const DenseModMatrix& A, u64 c);
std::vector<u64> mat_vec(const DenseModMatrix& A, std::span<const u64> x);

// Gauss-Jordan inversion; throws SingularMod.
DenseModMatrix mat_inverse(const DenseModMatrix& A);

// Solves A x = b by Gaussian elimination; throws SingularMod.
std::vector<u64> lu_solve(const DenseModMatrix& A, std::span<const u64> b);

std::size_t rank_mod(DenseModMatrix A);

// Evaluation at the points 1, 2, ..., t and interpolation back, both as
// products with a precomputed t x t Vandermonde matrix or its inverse.
class VandermondeContext {
public:
    VandermondeContext(PrimeField F, std::size_t t);

    std::size_t size() const noexcept { return t_; }
    std::span<const u64> points() const noexcept { return points_; }
    const DenseModMatrix& forward() const noexcept { return forward_; }
    const DenseModMatrix& inverse() const noexcept { return inverse_; }

private:
    std::size_t t_;
    std::vector<u64> points_;
    DenseModMatrix forward_;
    DenseModMatrix inverse_;
};

// coeffs: one row per coefficient (row j multiplies z^j), at most t rows.
// Returns t rows, row k holding the value at points()[k].
DenseModMatrix vand_eval(const DenseModMatrix& coeffs, const VandermondeContext& ctx);

// values: exactly t rows. Returns the t coefficient rows.
DenseModMatrix vand_interp(const DenseModMatrix& values, const VandermondeContext& ctx);

}  // namespace blocksolve
