#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "blocksolve/arith.hpp"
#include "blocksolve/counter.hpp"

namespace blocksolve {

struct Triplet {
    std::size_t row;
    std::size_t col;
    BigInt value;
};

// Square integer matrix in CSR layout. Column indices are strictly increasing
// within a row and no stored value is zero.
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t n, std::vector<std::size_t> row_ptr,
                    std::vector<std::size_t> col_idx, std::vector<BigInt> values);

    // Accepts unsorted input; duplicate positions are summed and zeros dropped.
    static SparseIntMatrix from_triplets(std::size_t n, std::vector<Triplet> entries);
    static SparseIntMatrix from_dense(const std::vector<std::vector<long>>& rows);
    static SparseIntMatrix identity(std::size_t n);

    std::size_t dim() const noexcept { return n_; }
    std::size_t nnz() const noexcept { return values_.size(); }
    std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
    std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
    std::span<const BigInt> values() const noexcept { return values_; }

    std::vector<BigInt> apply(std::span<const BigInt> w) const;
    std::vector<BigInt> apply_transpose(std::span<const BigInt> w) const;

    // Incremented once per apply / apply_transpose call.
    const OpCounter& matvecs() const noexcept { return matvecs_; }

    std::vector<std::vector<BigInt>> to_dense() const;

    // Embeds this matrix in the top-left corner of an identity of size new_n.
    SparseIntMatrix padded(std::size_t new_n) const;

    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        return a.n_ == b.n_ && a.row_ptr_ == b.row_ptr_ && a.col_idx_ == b.col_idx_ &&
               a.values_ == b.values_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<BigInt> values_;
    OpCounter matvecs_;
};

// CSR matrix over Z_p with the same sparsity rules as SparseIntMatrix.
class SparseModMatrix {
public:
    SparseModMatrix(PrimeField F, std::size_t n, std::vector<std::size_t> row_ptr,
                    std::vector<std::size_t> col_idx, std::vector<u64> values);

    const PrimeField& field() const noexcept { return F_; }
    std::size_t dim() const noexcept { return n_; }
    std::size_t nnz() const noexcept { return values_.size(); }
    std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
    std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
    std::span<const u64> values() const noexcept { return values_; }

    std::vector<u64> apply(std::span<const u64> w) const;
    void apply_into(std::span<const u64> w, std::span<u64> out) const;
    std::vector<u64> apply_transpose(std::span<const u64> w) const;

    const OpCounter& matvecs() const noexcept { return matvecs_; }

    // Returns this * diag(r); every r[j] must be nonzero so sparsity is kept.
    SparseModMatrix scale_columns(std::span<const u64> r) const;

    // Row-major n*n copy.
    std::vector<u64> to_dense() const;

private:
    PrimeField F_;
    std::size_t n_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> col_idx_;
    std::vector<u64> values_;
    OpCounter matvecs_;
};

SparseModMatrix reduce_mod(const SparseIntMatrix& A, const PrimeField& F);

// Random test matrix: per row, nnz_per_row distinct positions with values
// uniform in [-entry_bound, entry_bound] \ {0}; a zero diagonal slot is then
// filled with a value uniform in [1, entry_bound].
SparseIntMatrix gen_random_sparse(std::size_t n, std::size_t nnz_per_row, long entry_bound,
                                  u64 seed);

// Vector with entries uniform in [-bound, bound].
std::vector<BigInt> gen_random_vector(std::size_t n, long bound, u64 seed);

BigInt norm_inf(const SparseIntMatrix& A);
BigInt norm_inf_vec(std::span<const BigInt> b);

std::vector<u64> reduce_vec(std::span<const BigInt> b, const PrimeField& F);

}  // namespace blocksolve
