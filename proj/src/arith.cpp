#include "blocksolve/arith.hpp"

#include <algorithm>
#include <string>

#include "blocksolve/random.hpp"

namespace blocksolve {

namespace {

u64 mulmod64(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1U) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1U;
    }
    return r;
}

}  // namespace

// Miller-Rabin with the first twelve prime bases, which is deterministic for
// every n < 3.3 * 10^24 and in particular for all 64-bit n.
bool is_prime(u64 n) {
    if (n < 2) return false;
    constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : small) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    unsigned r = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++r;
    }
    for (u64 a : small) {
        u64 x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (p < 3 || p >= (u64{1} << 62) || !is_prime(p)) {
        throw InvalidParams("PrimeField: modulus " + std::to_string(p) +
                            " is not an odd prime below 2^62");
    }
    shift_ = static_cast<unsigned>(__builtin_clzll(p));
    dnorm_ = p << shift_;
    vinv_ = static_cast<u64>(~static_cast<u128>(0) / dnorm_ - (static_cast<u128>(1) << 64));
    lazy_ = static_cast<std::size_t>(~u64{0} / p);
}

u64 PrimeField::pow(u64 a, u64 e) const noexcept {
    u64 r = 1;
    while (e != 0) {
        if (e & 1U) r = mul(r, a);
        a = mul(a, a);
        e >>= 1U;
    }
    return r;
}

u64 PrimeField::inv(u64 a) const {
    return mod_inverse(a, *this);
}

u64 PrimeField::reduce(const BigInt& x) const {
    return mpz_fdiv_ui(x.get_mpz_t(), p_);
}

u64 mod_inverse(u64 a, const PrimeField& F) {
    const u64 p = F.modulus();
    a %= p;
    if (a == 0) throw ZeroInverse("mod_inverse: 0 has no inverse mod " + std::to_string(p));
    // Extended Euclid on signed 128-bit cofactors.
    __int128 r0 = p, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        __int128 q = r0 / r1;
        __int128 tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t0 < 0) t0 += p;
    return static_cast<u64>(t0);
}

PrimeField random_prime(unsigned bit_length, u64 seed) {
    if (bit_length < 20 || bit_length > 62) {
        throw InvalidParams("random_prime: bit_length " + std::to_string(bit_length) +
                            " outside [20, 62]");
    }
    Rng rng(derive_seed(seed, "random_prime", bit_length));
    const u64 top = u64{1} << (bit_length - 1);
    std::uniform_int_distribution<u64> dist(0, top - 1);
    for (;;) {
        u64 candidate = top | dist(rng) | 1U;
        if (is_prime(candidate)) return PrimeField(candidate);
    }
}

std::vector<BigInt> radix_combine(const std::vector<std::vector<u64>>& digits,
                                  const PrimeField& F) {
    if (digits.empty()) return {};
    const std::size_t width = digits.front().size();
    for (const auto& d : digits) {
        if (d.size() != width) throw DimensionMismatch("radix_combine: ragged digit vectors");
    }
    // Level 0 holds the digits themselves; each level pairs neighbours as
    // lo + hi * p^(2^level), so the cost is dominated by a few large products.
    std::vector<std::vector<BigInt>> level(digits.size(), std::vector<BigInt>(width));
    for (std::size_t i = 0; i < digits.size(); ++i) {
        for (std::size_t j = 0; j < width; ++j) {
            mpz_set_ui(level[i][j].get_mpz_t(), digits[i][j]);
        }
    }
    BigInt power = F.modulus();
    while (level.size() > 1) {
        std::vector<std::vector<BigInt>> next((level.size() + 1) / 2);
        for (std::size_t k = 0; k < next.size(); ++k) {
            if (2 * k + 1 < level.size()) {
                next[k] = std::move(level[2 * k]);
                const auto& hi = level[2 * k + 1];
                for (std::size_t j = 0; j < width; ++j) {
                    mpz_addmul(next[k][j].get_mpz_t(), hi[j].get_mpz_t(), power.get_mpz_t());
                }
            } else {
                next[k] = std::move(level[2 * k]);
            }
        }
        level = std::move(next);
        power *= power;
    }
    return std::move(level.front());
}

Rational rational_reconstruct(const BigInt& x, const BigInt& M) {
    if (M <= 1) throw InvalidParams("rational_reconstruct: modulus must exceed 1");
    BigInt half = M / 2;
    BigInt bound = isqrt(half);
    return rational_reconstruct(x, M, bound, bound);
}

Rational rational_reconstruct(const BigInt& x, const BigInt& M, const BigInt& num_bound,
                              const BigInt& den_bound) {
    if (x < 0 || x >= M) throw InvalidParams("rational_reconstruct: residue outside [0, M)");
    // Half extended Euclid: walk the remainder sequence of (M, x) until the
    // remainder drops to num_bound; the matching cofactor is the denominator.
    BigInt r0 = M, r1 = x, t0 = 0, t1 = 1, q, tmp;
    while (r1 > num_bound) {
        mpz_fdiv_qr(q.get_mpz_t(), tmp.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        r0.swap(r1);
        r1.swap(tmp);
        tmp = t0 - q * t1;
        t0.swap(t1);
        t1.swap(tmp);
    }
    BigInt den = abs(t1);
    if (den == 0 || den > den_bound) {
        throw NoReconstruction("rational_reconstruct: no fraction within bounds");
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
    if (g != 1) throw NoReconstruction("rational_reconstruct: denominator not invertible mod M");
    BigInt num = sgn(t1) < 0 ? BigInt(-r1) : r1;
    Rational out(num, den);
    out.canonicalize();
    return out;
}

BigInt isqrt(const BigInt& x) {
    if (x < 0) throw InvalidParams("isqrt: negative argument");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

Rational RationalVector::entry(std::size_t i) const {
    Rational q(numerators.at(i), denominator);
    q.canonicalize();
    return q;
}

std::vector<Rational> RationalVector::entries() const {
    std::vector<Rational> out;
    out.reserve(numerators.size());
    for (std::size_t i = 0; i < numerators.size(); ++i) out.push_back(entry(i));
    return out;
}

void RationalVector::normalize() {
    if (denominator == 0) throw InvalidParams("RationalVector: zero denominator");
    if (denominator < 0) {
        denominator = -denominator;
        for (auto& v : numerators) v = -v;
    }
    BigInt g = denominator;
    for (const auto& v : numerators) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (g != 1) {
        for (auto& v : numerators) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(denominator.get_mpz_t(), denominator.get_mpz_t(), g.get_mpz_t());
    }
}

RationalVector RationalVector::from_entries(std::span<const Rational> xs) {
    RationalVector out;
    BigInt den = 1;
    for (const auto& q : xs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    out.denominator = den;
    out.numerators.reserve(xs.size());
    for (const auto& q : xs) {
        BigInt scale = den / BigInt(q.get_den());
        out.numerators.push_back(BigInt(q.get_num()) * scale);
    }
    out.normalize();
    return out;
}

}  // namespace blocksolve
