#pragma once

#include <span>
#include <vector>

#include "blocksolve/arith.hpp"
#include "blocksolve/sparsemat.hpp"

namespace blocksolve {

// Minimal generating polynomial of a scalar sequence: monic f, coefficients
// low to high, with sum_k f[k] seq[i + k] = 0 for every window inside seq.
std::vector<u64> berlekamp_massey(const PrimeField& F, std::span<const u64> seq);

// Minimal polynomial of u^T A^i v, i < 2n (2n - 1 products with A).
std::vector<u64> projected_minpoly(const SparseModMatrix& A, std::span<const u64> u, std::span<const u64> v);

// projected_minpoly with u, v uniform from the seed; with high probability
// this is the minimal polynomial of A.
std::vector<u64> wiedemann_minpoly(const SparseModMatrix& A, u64 seed);

// -f[0]^-1 sum_{k>=1} f[k] A^(k-1) r, which is A^-1 r when f(A) r = 0.
// Horner evaluation with deg f - 1 products. Throws BadMinPoly if f[0] == 0.
std::vector<u64> minpoly_solve(const SparseModMatrix& A, std::span<const u64> f, std::span<const u64> r);

// True when a random projected minimal polynomial has a zero constant term,
// which proves A singular mod p.
bool minpoly_detects_singular(const SparseModMatrix& A, u64 seed);

}  // namespace blocksolve
