#pragma once

#include <random>
#include <vector>

#include "blocksolve/arith.hpp"
#include "blocksolve/densemodp.hpp"
#include "blocksolve/sparsemat.hpp"
#include "oracle/oracle.hpp"

namespace test {

using blocksolve::BigInt;
using blocksolve::DenseModMatrix;
using blocksolve::PrimeField;
using blocksolve::u64;

inline oracle::ModMatrix to_oracle(const DenseModMatrix& A) {
    oracle::ModMatrix out(A.rows(), std::vector<u64>(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) out[i][j] = A(i, j);
    }
    return out;
}

inline DenseModMatrix from_oracle(const PrimeField& F, const oracle::ModMatrix& A) {
    DenseModMatrix out(F, A.size(), A.empty() ? 0 : A[0].size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = 0; j < A[i].size(); ++j) out(i, j) = A[i][j];
    }
    return out;
}

inline oracle::IntMatrix to_oracle(const blocksolve::SparseIntMatrix& A) { return A.to_dense(); }

// Dense n x n copy of a sparse mod-p matrix.
inline oracle::ModMatrix to_oracle(const blocksolve::SparseModMatrix& A) {
    const std::size_t n = A.dim();
    const std::vector<u64> d = A.to_dense();
    oracle::ModMatrix out(n, std::vector<u64>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[i][j] = d[i * n + j];
    }
    return out;
}

inline DenseModMatrix random_dense(const PrimeField& F, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> dist(0, F.modulus() - 1);
    DenseModMatrix A(F, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) A(i, j) = dist(rng);
    }
    return A;
}

inline std::vector<u64> random_vec(const PrimeField& F, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> dist(0, F.modulus() - 1);
    std::vector<u64> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

// Fixed 59-bit prime used where a specific field is convenient.
inline constexpr u64 kPrime59 = 576460752303423619ULL;

}  // namespace test
