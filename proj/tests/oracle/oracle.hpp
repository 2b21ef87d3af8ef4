#pragma once

// Brute-force reference implementations for the tests. Nothing here calls
// into the library: integers and rationals come straight from GMP and the
// mod-p routines use plain 128-bit remainders.

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using u64 = std::uint64_t;
using IntMatrix = std::vector<std::vector<mpz_class>>;
using DenseRationalMatrix = std::vector<std::vector<mpq_class>>;
using ModMatrix = std::vector<std::vector<u64>>;

struct SingularError {};

IntMatrix to_int_matrix(const std::vector<std::vector<long>>& rows);

// Fraction-free (Bareiss) elimination on [A | b] followed by rational back
// substitution. Throws SingularError.
std::vector<mpq_class> oracle_solve(const IntMatrix& A, std::span<const mpz_class> b);

mpz_class oracle_det(IntMatrix A);

u64 mulmod(u64 a, u64 b, u64 p);
u64 powmod(u64 a, u64 e, u64 p);
u64 invmod(u64 a, u64 p);  // by Fermat; p prime, a != 0
bool trial_division_prime(u64 q);

ModMatrix mod_identity(std::size_t n);
ModMatrix mod_mul(const ModMatrix& A, const ModMatrix& B, u64 p);
std::vector<u64> mod_mat_vec(const ModMatrix& A, std::span<const u64> x, u64 p);
u64 mod_det(ModMatrix A, u64 p);
std::size_t mod_rank(ModMatrix A, u64 p);
// Gauss-Jordan; returns an empty matrix when A is singular.
ModMatrix mod_inverse(ModMatrix A, u64 p);
ModMatrix mod_pow(const ModMatrix& A, std::size_t e, u64 p);

// K(B, v) = [v | Bv | ... | B^(m-1) v] for an n x s block v.
ModMatrix oracle_krylov(const ModMatrix& B, const ModMatrix& v, std::size_t m, u64 p);

// Coefficient k of a product of matrix polynomials by direct convolution.
std::vector<ModMatrix> poly_mul_naive(const std::vector<ModMatrix>& A, const std::vector<ModMatrix>& B, u64 p);

}  // namespace oracle
