#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "blocksolve/errors.hpp"

namespace blocksolve {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

using BigInt = mpz_class;
using Rational = mpq_class;

bool is_prime(u64 n);

// Z/pZ for a word-size prime p < 2^62.
//
// Products are reduced with the Moller-Granlund preinverted 2-by-1 division,
// so reduce128() accepts any x < p * 2^64. That bound is what lets callers
// accumulate up to lazy_terms() products of reduced elements on top of a
// reduced value before reducing again.
class PrimeField {
public:
    explicit PrimeField(u64 p);

    u64 modulus() const noexcept { return p_; }
    unsigned bits() const noexcept { return 64U - static_cast<unsigned>(__builtin_clzll(p_)); }
    std::size_t lazy_terms() const noexcept { return lazy_; }

    u64 add(u64 a, u64 b) const noexcept {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const noexcept { return reduce128(static_cast<u128>(a) * b); }
    u64 pow(u64 a, u64 e) const noexcept;
    u64 inv(u64 a) const;  // throws ZeroInverse

    u64 reduce128(u128 x) const noexcept {
        u64 u1 = static_cast<u64>(x >> 64);
        u64 u0 = static_cast<u64>(x);
        if (shift_ != 0) {
            u1 = (u1 << shift_) | (u0 >> (64 - shift_));
            u0 <<= shift_;
        }
        u128 q = static_cast<u128>(vinv_) * u1 + ((static_cast<u128>(u1) << 64) | u0);
        u64 q1 = static_cast<u64>(q >> 64) + 1;
        u64 q0 = static_cast<u64>(q);
        u64 r = u0 - q1 * dnorm_;
        if (r > q0) r += dnorm_;
        if (r >= dnorm_) r -= dnorm_;
        return r >> shift_;
    }

    u64 reduce(const BigInt& x) const;
    u64 reduce(std::int64_t x) const noexcept {
        if (x >= 0) return static_cast<u64>(x) % p_;
        u64 r = static_cast<u64>(-(x + 1)) % p_;  // -(x) - 1 without overflow
        return p_ - 1 - r;
    }

    // Shoup multiplication by a fixed operand: precompute once, then each
    // product costs two multiplications and no division.
    u64 shoup_precompute(u64 w) const noexcept {
        return static_cast<u64>((static_cast<u128>(w) << 64) / p_);
    }
    u64 mul_shoup(u64 x, u64 w, u64 wp) const noexcept {
        u64 q = static_cast<u64>((static_cast<u128>(x) * wp) >> 64);
        u64 r = x * w - q * p_;
        return r >= p_ ? r - p_ : r;
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept {
        return a.p_ == b.p_;
    }

private:
    u64 p_;
    u64 dnorm_;
    u64 vinv_;
    unsigned shift_;
    std::size_t lazy_;
};

u64 mod_inverse(u64 a, const PrimeField& F);

// Uniformly random prime with exactly bit_length bits, 20 <= bit_length <= 62.
PrimeField random_prime(unsigned bit_length, u64 seed);

// result[j] = sum_i digits[i][j] * p^i, combined by a balanced product tree.
std::vector<BigInt> radix_combine(const std::vector<std::vector<u64>>& digits,
                                  const PrimeField& F);

// Symmetric-bound reconstruction: |num|, den <= floor(sqrt(M/2)).
Rational rational_reconstruct(const BigInt& x, const BigInt& M);

// Reconstruction with explicit bounds; requires 2 * num_bound * den_bound < M
// for uniqueness. Throws NoReconstruction when no fraction fits the bounds.
Rational rational_reconstruct(const BigInt& x, const BigInt& M, const BigInt& num_bound,
                              const BigInt& den_bound);

// Solution of an integer system as a numerator vector over a positive common
// denominator, kept in lowest terms (gcd of all numerators and den is 1).
struct RationalVector {
    std::vector<BigInt> numerators;
    BigInt denominator{1};

    std::size_t size() const noexcept { return numerators.size(); }
    Rational entry(std::size_t i) const;
    std::vector<Rational> entries() const;
    void normalize();

    static RationalVector from_entries(std::span<const Rational> xs);

    friend bool operator==(const RationalVector& a, const RationalVector& b) {
        return a.denominator == b.denominator && a.numerators == b.numerators;
    }
};

BigInt isqrt(const BigInt& x);

}  // namespace blocksolve
