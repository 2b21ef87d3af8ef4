#include "blocksolve/sparsemat.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "blocksolve/random.hpp"

namespace blocksolve {

namespace {

void check_csr(std::size_t n, const std::vector<std::size_t>& row_ptr,
               const std::vector<std::size_t>& col_idx, std::size_t nvalues) {
    if (row_ptr.size() != n + 1 || row_ptr.front() != 0 || row_ptr.back() != nvalues ||
        col_idx.size() != nvalues) {
        throw InvalidParams("CSR arrays inconsistent with dimension");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (row_ptr[i] > row_ptr[i + 1]) throw InvalidParams("CSR row_ptr not monotone");
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            if (col_idx[k] >= n) throw InvalidParams("CSR column index out of range");
            if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1]) {
                throw InvalidParams("CSR columns not strictly increasing in row " +
                                    std::to_string(i));
            }
        }
    }
}

}  // namespace

SparseIntMatrix::SparseIntMatrix(std::size_t n, std::vector<std::size_t> row_ptr,
                                 std::vector<std::size_t> col_idx, std::vector<BigInt> values)
    : n_(n), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), values_(std::move(values)) {
    check_csr(n_, row_ptr_, col_idx_, values_.size());
    for (const auto& v : values_) {
        if (v == 0) throw InvalidParams("SparseIntMatrix: explicit zero stored");
    }
}

SparseIntMatrix SparseIntMatrix::from_triplets(std::size_t n, std::vector<Triplet> entries) {
    for (const auto& t : entries) {
        if (t.row >= n || t.col >= n) throw InvalidParams("triplet index out of range");
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::size_t> cols;
    std::vector<BigInt> vals;
    for (std::size_t k = 0; k < entries.size();) {
        std::size_t r = entries[k].row, c = entries[k].col;
        BigInt sum = 0;
        while (k < entries.size() && entries[k].row == r && entries[k].col == c) {
            sum += entries[k].value;
            ++k;
        }
        if (sum != 0) {
            cols.push_back(c);
            vals.push_back(std::move(sum));
            ++row_ptr[r + 1];
        }
    }
    std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
    return SparseIntMatrix(n, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<long>>& rows) {
    const std::size_t n = rows.size();
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw DimensionMismatch("from_dense: matrix is not square");
        for (std::size_t j = 0; j < n; ++j) {
            if (rows[i][j] != 0) t.push_back({i, j, BigInt(rows[i][j])});
        }
    }
    return from_triplets(n, std::move(t));
}

SparseIntMatrix SparseIntMatrix::identity(std::size_t n) {
    std::vector<std::size_t> row_ptr(n + 1), cols(n);
    std::iota(row_ptr.begin(), row_ptr.end(), std::size_t{0});
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    return SparseIntMatrix(n, std::move(row_ptr), std::move(cols), std::vector<BigInt>(n, 1));
}

std::vector<BigInt> SparseIntMatrix::apply(std::span<const BigInt> w) const {
    if (w.size() != n_) throw DimensionMismatch("SparseIntMatrix::apply: vector length");
    matvecs_.add();
    std::vector<BigInt> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        mpz_ptr acc = out[i].get_mpz_t();
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            mpz_addmul(acc, values_[k].get_mpz_t(), w[col_idx_[k]].get_mpz_t());
        }
    }
    return out;
}

std::vector<BigInt> SparseIntMatrix::apply_transpose(std::span<const BigInt> w) const {
    if (w.size() != n_) throw DimensionMismatch("SparseIntMatrix::apply_transpose: vector length");
    matvecs_.add();
    std::vector<BigInt> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            mpz_addmul(out[col_idx_[k]].get_mpz_t(), values_[k].get_mpz_t(), w[i].get_mpz_t());
        }
    }
    return out;
}

std::vector<std::vector<BigInt>> SparseIntMatrix::to_dense() const {
    std::vector<std::vector<BigInt>> d(n_, std::vector<BigInt>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d[i][col_idx_[k]] = values_[k];
    }
    return d;
}

SparseIntMatrix SparseIntMatrix::padded(std::size_t new_n) const {
    if (new_n < n_) throw InvalidParams("padded: new dimension smaller than current");
    if (new_n == n_) return *this;
    std::vector<std::size_t> row_ptr = row_ptr_;
    std::vector<std::size_t> cols = col_idx_;
    std::vector<BigInt> vals = values_;
    for (std::size_t i = n_; i < new_n; ++i) {
        cols.push_back(i);
        vals.emplace_back(1);
        row_ptr.push_back(vals.size());
    }
    return SparseIntMatrix(new_n, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseModMatrix::SparseModMatrix(PrimeField F, std::size_t n, std::vector<std::size_t> row_ptr,
                                 std::vector<std::size_t> col_idx, std::vector<u64> values)
    : F_(F), n_(n), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
    check_csr(n_, row_ptr_, col_idx_, values_.size());
    for (u64 v : values_) {
        if (v == 0 || v >= F_.modulus()) throw InvalidParams("SparseModMatrix: value not in [1, p)");
    }
}

void SparseModMatrix::apply_into(std::span<const u64> w, std::span<u64> out) const {
    if (w.size() != n_ || out.size() != n_) {
        throw DimensionMismatch("SparseModMatrix::apply: vector length");
    }
    matvecs_.add();
    const std::size_t lazy = F_.lazy_terms();
    for (std::size_t i = 0; i < n_; ++i) {
        u128 acc = 0;
        std::size_t pending = 0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            acc += static_cast<u128>(values_[k]) * w[col_idx_[k]];
            if (++pending == lazy) {
                acc = F_.reduce128(acc);
                pending = 0;
            }
        }
        out[i] = F_.reduce128(acc);
    }
}

std::vector<u64> SparseModMatrix::apply(std::span<const u64> w) const {
    std::vector<u64> out(n_);
    apply_into(w, out);
    return out;
}

std::vector<u64> SparseModMatrix::apply_transpose(std::span<const u64> w) const {
    if (w.size() != n_) throw DimensionMismatch("SparseModMatrix::apply_transpose: vector length");
    matvecs_.add();
    std::vector<u64> out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            u64& o = out[col_idx_[k]];
            o = F_.add(o, F_.mul(values_[k], w[i]));
        }
    }
    return out;
}

SparseModMatrix SparseModMatrix::scale_columns(std::span<const u64> r) const {
    if (r.size() != n_) throw DimensionMismatch("scale_columns: diagonal length");
    std::vector<u64> vals(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (r[col_idx_[k]] == 0) throw InvalidParams("scale_columns: zero scaling factor");
        vals[k] = F_.mul(values_[k], r[col_idx_[k]]);
    }
    return SparseModMatrix(F_, n_, row_ptr_, col_idx_, std::move(vals));
}

std::vector<u64> SparseModMatrix::to_dense() const {
    std::vector<u64> d(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d[i * n_ + col_idx_[k]] = values_[k];
    }
    return d;
}

SparseModMatrix reduce_mod(const SparseIntMatrix& A, const PrimeField& F) {
    const std::size_t n = A.dim();
    std::vector<std::size_t> row_ptr(n + 1, 0), cols;
    std::vector<u64> vals;
    cols.reserve(A.nnz());
    vals.reserve(A.nnz());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k) {
            u64 v = F.reduce(A.values()[k]);
            if (v != 0) {
                cols.push_back(A.col_idx()[k]);
                vals.push_back(v);
            }
        }
        row_ptr[i + 1] = vals.size();
    }
    return SparseModMatrix(F, n, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseIntMatrix gen_random_sparse(std::size_t n, std::size_t nnz_per_row, long entry_bound,
                                  u64 seed) {
    if (n == 0 || nnz_per_row == 0 || nnz_per_row > n || entry_bound < 1) {
        throw InvalidParams("gen_random_sparse: need n >= 1, 1 <= nnz_per_row <= n, bound >= 1");
    }
    Rng rng(derive_seed(seed, "gen_random_sparse"));
    std::uniform_int_distribution<std::size_t> col_dist(0, n - 1);
    std::uniform_int_distribution<long> mag_dist(1, entry_bound);
    std::bernoulli_distribution sign_dist(0.5);

    std::vector<std::size_t> row_ptr(n + 1, 0), cols;
    std::vector<BigInt> vals;
    std::vector<char> taken(n, 0);
    std::vector<std::size_t> perm;
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < n; ++i) {
        picked.clear();
        if (2 * nnz_per_row > n) {
            // Dense-ish rows: partial Fisher-Yates.
            perm.resize(n);
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            for (std::size_t k = 0; k < nnz_per_row; ++k) {
                std::uniform_int_distribution<std::size_t> d(k, n - 1);
                std::swap(perm[k], perm[d(rng)]);
                picked.push_back(perm[k]);
            }
        } else {
            // Collisions are resampled, so each row gets exactly nnz_per_row slots.
            while (picked.size() < nnz_per_row) {
                std::size_t c = col_dist(rng);
                if (!taken[c]) {
                    taken[c] = 1;
                    picked.push_back(c);
                }
            }
            for (std::size_t c : picked) taken[c] = 0;
        }
        bool has_diag = false;
        std::vector<std::pair<std::size_t, long>> row;
        for (std::size_t c : picked) {
            long v = mag_dist(rng);
            if (sign_dist(rng)) v = -v;
            row.emplace_back(c, v);
            has_diag = has_diag || c == i;
        }
        if (!has_diag) row.emplace_back(i, mag_dist(rng));
        std::sort(row.begin(), row.end());
        for (const auto& [c, v] : row) {
            cols.push_back(c);
            vals.emplace_back(v);
        }
        row_ptr[i + 1] = vals.size();
    }
    return SparseIntMatrix(n, std::move(row_ptr), std::move(cols), std::move(vals));
}

std::vector<BigInt> gen_random_vector(std::size_t n, long bound, u64 seed) {
    if (bound < 0) throw InvalidParams("gen_random_vector: negative bound");
    Rng rng(derive_seed(seed, "gen_random_vector"));
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<BigInt> b(n);
    for (auto& x : b) x = dist(rng);
    return b;
}

BigInt norm_inf(const SparseIntMatrix& A) {
    return norm_inf_vec(A.values());
}

BigInt norm_inf_vec(std::span<const BigInt> b) {
    BigInt best = 0;
    for (const auto& v : b) {
        if (mpz_cmpabs(v.get_mpz_t(), best.get_mpz_t()) > 0) best = abs(v);
    }
    return best;
}

std::vector<u64> reduce_vec(std::span<const BigInt> b, const PrimeField& F) {
    std::vector<u64> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = F.reduce(b[i]);
    return out;
}

}  // namespace blocksolve
