#include "blocksolve/densemodp.hpp"

#include <algorithm>
#include <string>

namespace blocksolve {

namespace {

// C = A * B with A r x k (leading dim lda), B k x c (leading dim ldb).
// Products are accumulated unreduced in 128 bits for lazy_terms() steps.
void gemm(const PrimeField& F, const u64* A, std::size_t lda, const u64* B, std::size_t ldb,
          u64* C, std::size_t ldc, std::size_t r, std::size_t k, std::size_t c) {
    const std::size_t lazy = F.lazy_terms();
    std::vector<u128> acc(c);
    for (std::size_t i = 0; i < r; ++i) {
        std::fill(acc.begin(), acc.end(), u128{0});
        std::size_t pending = 0;
        const u64* arow = A + i * lda;
        for (std::size_t l = 0; l < k; ++l) {
            const u64 a = arow[l];
            if (a != 0) {
                const u64* brow = B + l * ldb;
                for (std::size_t j = 0; j < c; ++j) acc[j] += static_cast<u128>(a) * brow[j];
                if (++pending == lazy) {
                    for (auto& x : acc) x = F.reduce128(x);
                    pending = 0;
                }
            }
        }
        u64* crow = C + i * ldc;
        for (std::size_t j = 0; j < c; ++j) crow[j] = F.reduce128(acc[j]);
    }
}

void require_same_field(const DenseModMatrix& A, const DenseModMatrix& B, const char* op) {
    if (!(A.field() == B.field())) throw InvalidParams(std::string(op) + ": operands over different fields");
}

// row[j] -= f * pivot_row[j] for j in [from, len).
void axpy_row(const PrimeField& F, u64* row, const u64* pivot_row, u64 f, std::size_t from,
              std::size_t len) {
    if (f == 0) return;
    const u64 nf = F.neg(f);
    const u64 nfp = F.shoup_precompute(nf);
    for (std::size_t j = from; j < len; ++j) {
        row[j] = F.add(row[j], F.mul_shoup(pivot_row[j], nf, nfp));
    }
}

void scale_row(const PrimeField& F, u64* row, u64 f, std::size_t from, std::size_t len) {
    const u64 fp = F.shoup_precompute(f);
    for (std::size_t j = from; j < len; ++j) row[j] = F.mul_shoup(row[j], f, fp);
}

}  // namespace

DenseModMatrix::DenseModMatrix(PrimeField F, std::size_t rows, std::size_t cols)
    : F_(F), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

DenseModMatrix::DenseModMatrix(PrimeField F, std::size_t rows, std::size_t cols,
                               std::vector<u64> data)
    : F_(F), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DimensionMismatch("DenseModMatrix: data size");
    for (u64 v : data_) {
        if (v >= F_.modulus()) throw InvalidParams("DenseModMatrix: entry not reduced");
    }
}

DenseModMatrix DenseModMatrix::identity(PrimeField F, std::size_t n) {
    DenseModMatrix I(F, n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

DenseModMatrix DenseModMatrix::from_rows(PrimeField F, const std::vector<std::vector<long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    DenseModMatrix M(F, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j) M(i, j) = F.reduce(static_cast<std::int64_t>(rows[i][j]));
    }
    return M;
}

bool DenseModMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](u64 v) { return v == 0; });
}

DenseModMatrix DenseModMatrix::transpose() const {
    DenseModMatrix T(F_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
    }
    return T;
}

DenseModMatrix mat_mul(const DenseModMatrix& A, const DenseModMatrix& B) {
    require_same_field(A, B, "mat_mul");
    if (A.cols() != B.rows()) throw DimensionMismatch("mat_mul: inner dimensions differ");
    DenseModMatrix C(A.field(), A.rows(), B.cols());
    if (C.rows() == 0 || C.cols() == 0) return C;
    std::vector<u64> out(A.rows() * B.cols());
    gemm(A.field(), A.data().data(), A.cols(), B.data().data(), B.cols(), out.data(), B.cols(),
         A.rows(), A.cols(), B.cols());
    return DenseModMatrix(A.field(), A.rows(), B.cols(), std::move(out));
}

DenseModMatrix mat_add(const DenseModMatrix& A, const DenseModMatrix& B) {
    require_same_field(A, B, "mat_add");
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw DimensionMismatch("mat_add: shapes differ");
    const auto& F = A.field();
    std::vector<u64> out(A.data().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.add(A.data()[i], B.data()[i]);
    return DenseModMatrix(F, A.rows(), A.cols(), std::move(out));
}

DenseModMatrix mat_sub(const DenseModMatrix& A, const DenseModMatrix& B) {
    require_same_field(A, B, "mat_sub");
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw DimensionMismatch("mat_sub: shapes differ");
    const auto& F = A.field();
    std::vector<u64> out(A.data().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.sub(A.data()[i], B.data()[i]);
    return DenseModMatrix(F, A.rows(), A.cols(), std::move(out));
}

DenseModMatrix mat_scale(const DenseModMatrix& A, u64 c) {
    const auto& F = A.field();
    std::vector<u64> out(A.data().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.mul(A.data()[i], c);
    return DenseModMatrix(F, A.rows(), A.cols(), std::move(out));
}

std::vector<u64> mat_vec(const DenseModMatrix& A, std::span<const u64> x) {
    if (x.size() != A.cols()) throw DimensionMismatch("mat_vec: vector length");
    const auto& F = A.field();
    const std::size_t lazy = F.lazy_terms();
    std::vector<u64> y(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const auto row = A.row(i);
        u128 acc = 0;
        std::size_t pending = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            acc += static_cast<u128>(row[j]) * x[j];
            if (++pending == lazy) {
                acc = F.reduce128(acc);
                pending = 0;
            }
        }
        y[i] = F.reduce128(acc);
    }
    return y;
}

DenseModMatrix mat_inverse(const DenseModMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionMismatch("mat_inverse: matrix is not square");
    const auto& F = A.field();
    const std::size_t n = A.rows();
    const std::size_t w = 2 * n;
    std::vector<u64> aug(n * w, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(A.row(i).begin(), A.row(i).end(), aug.begin() + static_cast<std::ptrdiff_t>(i * w));
        aug[i * w + n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && aug[piv * w + col] == 0) ++piv;
        if (piv == n) throw SingularMod("mat_inverse: matrix is singular mod " + std::to_string(F.modulus()));
        if (piv != col) {
            std::swap_ranges(aug.begin() + static_cast<std::ptrdiff_t>(piv * w),
                             aug.begin() + static_cast<std::ptrdiff_t>(piv * w + w),
                             aug.begin() + static_cast<std::ptrdiff_t>(col * w));
        }
        u64* prow = aug.data() + col * w;
        scale_row(F, prow, F.inv(prow[col]), col, w);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            u64* row = aug.data() + r * w;
            axpy_row(F, row, prow, row[col], col, w);
        }
    }
    std::vector<u64> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy_n(aug.begin() + static_cast<std::ptrdiff_t>(i * w + n), n,
                    out.begin() + static_cast<std::ptrdiff_t>(i * n));
    }
    return DenseModMatrix(F, n, n, std::move(out));
}

std::vector<u64> lu_solve(const DenseModMatrix& A, std::span<const u64> b) {
    if (A.rows() != A.cols()) throw DimensionMismatch("lu_solve: matrix is not square");
    if (b.size() != A.rows()) throw DimensionMismatch("lu_solve: right-hand side length");
    const auto& F = A.field();
    const std::size_t n = A.rows();
    const std::size_t w = n + 1;
    std::vector<u64> aug(n * w);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(A.row(i).begin(), A.row(i).end(), aug.begin() + static_cast<std::ptrdiff_t>(i * w));
        aug[i * w + n] = b[i] % F.modulus();
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && aug[piv * w + col] == 0) ++piv;
        if (piv == n) throw SingularMod("lu_solve: matrix is singular mod " + std::to_string(F.modulus()));
        if (piv != col) {
            std::swap_ranges(aug.begin() + static_cast<std::ptrdiff_t>(piv * w),
                             aug.begin() + static_cast<std::ptrdiff_t>(piv * w + w),
                             aug.begin() + static_cast<std::ptrdiff_t>(col * w));
        }
        const u64* prow = aug.data() + col * w;
        const u64 pinv = F.inv(prow[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            u64* row = aug.data() + r * w;
            axpy_row(F, row, prow, F.mul(row[col], pinv), col, w);
        }
    }
    std::vector<u64> x(n);
    for (std::size_t i = n; i-- > 0;) {
        const u64* row = aug.data() + i * w;
        u64 acc = row[n];
        for (std::size_t j = i + 1; j < n; ++j) acc = F.sub(acc, F.mul(row[j], x[j]));
        x[i] = F.mul(acc, F.inv(row[i]));
    }
    return x;
}

std::size_t rank_mod(DenseModMatrix A) {
    const auto& F = A.field();
    const std::size_t r = A.rows(), c = A.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        std::size_t piv = rank;
        while (piv < r && A(piv, col) == 0) ++piv;
        if (piv == r) continue;
        if (piv != rank) std::swap_ranges(A.row(piv).begin(), A.row(piv).end(), A.row(rank).begin());
        const u64 pinv = F.inv(A(rank, col));
        for (std::size_t i = rank + 1; i < r; ++i) {
            axpy_row(F, A.row(i).data(), A.row(rank).data(), F.mul(A(i, col), pinv), col, c);
        }
        ++rank;
    }
    return rank;
}

VandermondeContext::VandermondeContext(PrimeField F, std::size_t t)
    : t_(t), forward_(F, t, t), inverse_(F, t, t) {
    if (t == 0) throw InvalidParams("VandermondeContext: need at least one point");
    if (static_cast<u64>(t) >= F.modulus()) {
        throw InvalidParams("VandermondeContext: prime too small for " + std::to_string(t) + " points");
    }
    points_.resize(t);
    for (std::size_t k = 0; k < t; ++k) {
        points_[k] = k + 1;
        u64 pw = 1;
        for (std::size_t j = 0; j < t; ++j) {
            forward_(k, j) = pw;
            pw = F.mul(pw, points_[k]);
        }
    }
    inverse_ = mat_inverse(forward_);
    if (!(mat_mul(inverse_, forward_) == DenseModMatrix::identity(F, t))) {
        throw Error("VandermondeContext: inverse check failed");
    }
}

DenseModMatrix vand_eval(const DenseModMatrix& coeffs, const VandermondeContext& ctx) {
    const std::size_t t = ctx.size();
    if (coeffs.rows() > t) {
        throw DegreeTooHigh("vand_eval: " + std::to_string(coeffs.rows()) + " coefficients for " +
                            std::to_string(t) + " points");
    }
    const auto& F = coeffs.field();
    std::vector<u64> out(t * coeffs.cols());
    if (coeffs.rows() == 0) return DenseModMatrix(F, t, coeffs.cols(), std::move(out));
    gemm(F, ctx.forward().data().data(), t, coeffs.data().data(), coeffs.cols(), out.data(),
         coeffs.cols(), t, coeffs.rows(), coeffs.cols());
    return DenseModMatrix(F, t, coeffs.cols(), std::move(out));
}

DenseModMatrix vand_interp(const DenseModMatrix& values, const VandermondeContext& ctx) {
    if (values.rows() != ctx.size()) {
        throw DimensionMismatch("vand_interp: expected " + std::to_string(ctx.size()) + " value rows");
    }
    return mat_mul(ctx.inverse(), values);
}

}  // namespace blocksolve
