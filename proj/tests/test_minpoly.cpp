#include <doctest.h>

#include <random>

#include "blocksolve/minpoly.hpp"
#include "support.hpp"

using namespace blocksolve;

TEST_CASE("berlekamp_massey on known sequences") {
    const PrimeField F(101);
    // Fibonacci: f = z^2 - z - 1.
    std::vector<u64> fib{1, 1};
    for (int i = 0; i < 10; ++i) fib.push_back((fib[fib.size() - 1] + fib[fib.size() - 2]) % 101);
    CHECK(berlekamp_massey(F, fib) == std::vector<u64>{100, 100, 1});
    // Geometric 3^i: f = z - 3.
    std::vector<u64> geo{1};
    for (int i = 0; i < 7; ++i) geo.push_back(geo.back() * 3 % 101);
    CHECK(berlekamp_massey(F, geo) == std::vector<u64>{98, 1});
    // All zeros: f = 1.
    CHECK(berlekamp_massey(F, std::vector<u64>(6, 0)) == std::vector<u64>{1});
    // 0, 0, 1, 0, 0, 0: f = z^3.
    CHECK(berlekamp_massey(F, std::vector<u64>{0, 0, 1, 0, 0, 0}) == std::vector<u64>{0, 0, 0, 1});
}

TEST_CASE("berlekamp_massey annihilates random linear recurrences") {
    std::mt19937_64 rng(1);
    const PrimeField F(test::kPrime59);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 1 + rng() % 8;
        auto c = test::random_vec(F, d, rng);
        auto seq = test::random_vec(F, d, rng);
        for (std::size_t i = d; i < 2 * d + 4; ++i) {
            u64 acc = 0;
            for (std::size_t k = 0; k < d; ++k) acc = F.add(acc, F.mul(c[k], seq[i - d + k]));
            seq.push_back(acc);
        }
        const auto f = berlekamp_massey(F, seq);
        CHECK(f.back() == 1);
        CHECK(f.size() <= d + 1);
        const std::size_t L = f.size() - 1;
        for (std::size_t i = 0; i + L < seq.size(); ++i) {
            u64 acc = 0;
            for (std::size_t k = 0; k <= L; ++k) acc = F.add(acc, F.mul(f[k], seq[i + k]));
            CHECK(acc == 0);
        }
    }
}

TEST_CASE("projected and random minimal polynomials") {
    const PrimeField F(101);
    const auto D = reduce_mod(SparseIntMatrix::from_dense({{2, 0}, {0, 3}}), F);
    // (z - 2)(z - 3) = z^2 - 5z + 6.
    CHECK(projected_minpoly(D, std::vector<u64>{1, 1}, std::vector<u64>{1, 1}) == std::vector<u64>{6, 96, 1});
    CHECK(projected_minpoly(D, std::vector<u64>{1, 0}, std::vector<u64>{1, 1}) == std::vector<u64>{99, 1});
    CHECK(D.matvecs().get() == 6);

    const PrimeField G(test::kPrime59);
    const auto A = reduce_mod(gen_random_sparse(30, 5, 50, 2), G);
    const auto f = wiedemann_minpoly(A, 7);
    CHECK(f.size() == 31);
    CHECK(f[0] != 0);
    CHECK_FALSE(minpoly_detects_singular(A, 7));

    const auto S = reduce_mod(SparseIntMatrix::from_dense({{1, 2, 0}, {2, 4, 0}, {0, 0, 5}}), G);
    CHECK(minpoly_detects_singular(S, 3));
}

TEST_CASE("minpoly_solve") {
    const PrimeField F(101);
    const auto D = reduce_mod(SparseIntMatrix::from_dense({{2, 0}, {0, 3}}), F);
    const std::vector<u64> f{6, 96, 1};
    const auto x = minpoly_solve(D, f, std::vector<u64>{2, 3});
    CHECK(x == std::vector<u64>{1, 1});
    CHECK_THROWS_AS(minpoly_solve(D, std::vector<u64>{0, 1}, std::vector<u64>{1, 1}), BadMinPoly);

    std::mt19937_64 rng(3);
    const PrimeField G(test::kPrime59);
    for (u64 seed = 0; seed < 10; ++seed) {
        const auto A = reduce_mod(gen_random_sparse(25, 4, 50, seed), G);
        const auto g = wiedemann_minpoly(A, seed);
        const auto r = test::random_vec(G, 25, rng);
        const u64 before = A.matvecs().get();
        const auto y = minpoly_solve(A, g, r);
        CHECK(A.matvecs().get() - before == g.size() - 2);
        CHECK(A.apply(y) == r);
    }
}
