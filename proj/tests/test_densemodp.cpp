#include <doctest.h>

#include <random>

#include "blocksolve/densemodp.hpp"
#include "support.hpp"

using namespace blocksolve;

TEST_CASE("mat_mul examples") {
    const PrimeField F(5);
    const auto A = DenseModMatrix::from_rows(F, {{1, 1}, {0, 1}});
    const auto B = DenseModMatrix::from_rows(F, {{1, 0}, {1, 1}});
    CHECK(mat_mul(A, B) == DenseModMatrix::from_rows(F, {{2, 1}, {1, 1}}));
    CHECK(mat_mul(DenseModMatrix::identity(F, 2), B) == B);
    CHECK(mat_mul(A, DenseModMatrix(F, 2, 2)).is_zero());
    CHECK_THROWS_AS(mat_mul(A, DenseModMatrix(F, 3, 2)), DimensionMismatch);
}

TEST_CASE("mat_mul against the oracle for large primes and long inner dimension") {
    std::mt19937_64 rng(1);
    for (u64 p : {test::kPrime59, u64{4611686018427387847ULL}}) {
        const PrimeField F(p);
        for (auto [r, k, c] : {std::tuple{1, 1, 1}, std::tuple{3, 70, 5}, std::tuple{17, 40, 9}}) {
            const auto A = test::random_dense(F, r, k, rng);
            const auto B = test::random_dense(F, k, c, rng);
            CHECK(test::to_oracle(mat_mul(A, B)) == oracle::mod_mul(test::to_oracle(A), test::to_oracle(B), p));
            const auto x = test::random_vec(F, k, rng);
            CHECK(mat_vec(A, x) == oracle::mod_mat_vec(test::to_oracle(A), x, p));
        }
    }
}

TEST_CASE("mat_inverse examples") {
    const PrimeField F7(7), F5(5);
    CHECK(mat_inverse(DenseModMatrix::identity(F7, 3)) == DenseModMatrix::identity(F7, 3));
    CHECK(mat_inverse(DenseModMatrix::from_rows(F7, {{2}})) == DenseModMatrix::from_rows(F7, {{4}}));
    CHECK(mat_inverse(DenseModMatrix::from_rows(F5, {{1, 1}, {1, 2}})) == DenseModMatrix::from_rows(F5, {{2, 4}, {4, 1}}));
    CHECK_THROWS_AS(mat_inverse(DenseModMatrix::from_rows(F5, {{1, 2}, {2, 4}})), SingularMod);
    CHECK_THROWS_AS(mat_inverse(DenseModMatrix(F5, 2, 3)), DimensionMismatch);
}

TEST_CASE("mat_inverse on random matrices") {
    std::mt19937_64 rng(2);
    for (u64 p : {u64{3}, u64{10007}, test::kPrime59}) {
        const PrimeField F(p);
        for (std::size_t n = 1; n <= 16; ++n) {
            for (int trial = 0; trial < 200; ++trial) {
                const auto A = test::random_dense(F, n, n, rng);
                const bool singular = oracle::mod_det(test::to_oracle(A), p) == 0;
                if (singular) {
                    CHECK_THROWS_AS(mat_inverse(A), SingularMod);
                    continue;
                }
                const auto Ainv = mat_inverse(A);
                CHECK(mat_mul(Ainv, A) == DenseModMatrix::identity(F, n));
                CHECK(rank_mod(A) == n);
            }
        }
    }
}

TEST_CASE("lu_solve") {
    const PrimeField F(7);
    CHECK(lu_solve(DenseModMatrix::identity(F, 3), std::vector<u64>{1, 2, 3}) == std::vector<u64>{1, 2, 3});
    CHECK(lu_solve(DenseModMatrix::from_rows(F, {{3}}), std::vector<u64>{1}) == std::vector<u64>{5});
    CHECK_THROWS_AS(lu_solve(DenseModMatrix::from_rows(F, {{1, 1}, {1, 1}}), std::vector<u64>{1, 1}), SingularMod);

    std::mt19937_64 rng(4);
    const PrimeField G(test::kPrime59);
    for (int trial = 0; trial < 50; ++trial) {
        const auto A = test::random_dense(G, 12, 12, rng);
        const auto b = test::random_vec(G, 12, rng);
        CHECK(mat_vec(A, lu_solve(A, b)) == b);
    }
}

TEST_CASE("rank_mod against the oracle") {
    std::mt19937_64 rng(6);
    const PrimeField F(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto A = test::random_dense(F, 4, 6, rng);
        CHECK(rank_mod(A) == oracle::mod_rank(test::to_oracle(A), 5));
    }
}

TEST_CASE("Vandermonde evaluation and interpolation") {
    const PrimeField F(7);
    const VandermondeContext ctx2(F, 2);
    CHECK(vand_eval(DenseModMatrix::from_rows(F, {{1}, {1}}), ctx2) == DenseModMatrix::from_rows(F, {{2}, {3}}));
    CHECK(vand_interp(DenseModMatrix::from_rows(F, {{2}, {3}}), ctx2) == DenseModMatrix::from_rows(F, {{1}, {1}}));
    const VandermondeContext ctx4(F, 4);
    const auto c = DenseModMatrix::from_rows(F, {{5, 2}});
    CHECK(vand_eval(c, ctx4) == DenseModMatrix::from_rows(F, {{5, 2}, {5, 2}, {5, 2}, {5, 2}}));
    CHECK(vand_eval(DenseModMatrix(F, 3, 2), ctx4).is_zero());
    CHECK_THROWS_AS(vand_eval(DenseModMatrix(F, 5, 1), ctx4), DegreeTooHigh);
    CHECK_THROWS_AS(vand_interp(DenseModMatrix(F, 3, 1), ctx4), DimensionMismatch);
    CHECK_THROWS_AS(VandermondeContext(F, 7), InvalidParams);

    std::mt19937_64 rng(8);
    const PrimeField G(test::kPrime59);
    for (std::size_t t = 1; t <= 64; t += 7) {
        const VandermondeContext ctx(G, t);
        for (std::size_t deg = 1; deg <= t; deg += 3) {
            const auto coeffs = test::random_dense(G, deg, 3, rng);
            const auto vals = vand_eval(coeffs, ctx);
            // Horner at each point.
            for (std::size_t k = 0; k < t; ++k) {
                for (std::size_t j = 0; j < 3; ++j) {
                    u64 acc = 0;
                    for (std::size_t d = deg; d-- > 0;) acc = G.add(G.mul(acc, k + 1), coeffs(d, j));
                    CHECK(vals(k, j) == acc);
                }
            }
            const auto back = vand_interp(vals, ctx);
            for (std::size_t d = 0; d < t; ++d) {
                for (std::size_t j = 0; j < 3; ++j) CHECK(back(d, j) == (d < deg ? coeffs(d, j) : 0));
            }
        }
    }
}
