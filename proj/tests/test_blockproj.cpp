#include <doctest.h>

#include <random>

#include "blocksolve/blockproj.hpp"
#include "support.hpp"

using namespace blocksolve;

namespace {

// The 4 x 4 matrix whose structured Krylov matrix is always singular.
SparseIntMatrix krylov_counterexample() {
    return SparseIntMatrix::from_dense({{3, 0, 0, 0}, {0, 5, -1, 0}, {0, 4, 10, 0}, {0, 0, 0, 12}});
}

}  // namespace

TEST_CASE("make_projection layout") {
    const PrimeField F(test::kPrime59);
    const auto P = make_projection(4, 2, F, 1);
    CHECK(P.m() == 2);
    const auto v = P.dense_v();
    CHECK(v(0, 0) != 0);
    CHECK(v(1, 0) != 0);
    CHECK(v(2, 0) == 0);
    CHECK(v(3, 0) == 0);
    CHECK(v(0, 1) == 0);
    CHECK(v(1, 1) == 0);
    CHECK(v(2, 1) != 0);
    CHECK(v(3, 1) != 0);
    const auto u = P.dense_u();
    CHECK(u(0, 0) != 0);
    CHECK(u(0, 2) == 0);
    CHECK(u(1, 2) != 0);

    const auto P1 = make_projection(6, 1, F, 1);
    const auto v1 = P1.dense_v();
    for (std::size_t i = 0; i < 6; ++i) CHECK(v1(i, 0) != 0);
    CHECK_THROWS_AS(make_projection(6, 4, F, 1), InvalidBlocking);
    CHECK_THROWS_AS(make_projection(6, 0, F, 1), InvalidBlocking);

    const auto again = make_projection(4, 2, F, 1);
    CHECK(again.dense_u() == P.dense_u());
    CHECK(again.dense_v() == P.dense_v());
    CHECK(std::vector<u64>(again.r_diag().begin(), again.r_diag().end()) ==
          std::vector<u64>(P.r_diag().begin(), P.r_diag().end()));
}

TEST_CASE("apply_R and apply_R_int") {
    const PrimeField F(101);
    const BlockProjection ones(F, 2, 1, {1, 1}, {{1, 1}}, {{1, 1}});
    CHECK(ones.apply_R(std::vector<u64>{7, 9}) == std::vector<u64>{7, 9});
    const BlockProjection P(F, 2, 1, {2, 3}, {{1, 1}}, {{1, 1}});
    CHECK(P.apply_R(std::vector<u64>{1, 1}) == std::vector<u64>{2, 3});
    CHECK(P.apply_R_int(std::vector<BigInt>{BigInt(-5), BigInt(100)}) == std::vector<BigInt>{-10, 300});
    CHECK_THROWS_AS(P.apply_R(std::vector<u64>{1}), DimensionMismatch);
    CHECK_THROWS_AS(BlockProjection(F, 2, 1, {0, 1}, {{1, 1}}, {{1, 1}}), InvalidParams);
    CHECK_THROWS_AS(BlockProjection(F, 2, 1, {1, 1}, {{1, 0}}, {{1, 1}}), InvalidParams);
}

TEST_CASE("apply_u and apply_v against dense products") {
    const PrimeField F(101);
    const BlockProjection P(F, 4, 2, {1, 1, 1, 1}, {{2, 3}, {4, 5}}, {{1, 1}, {1, 1}});
    CHECK(P.apply_v(std::vector<u64>{1, 0}) == std::vector<u64>{1, 1, 0, 0});
    CHECK(P.apply_u(std::vector<u64>{1, 0, 0, 0}) == std::vector<u64>{2, 0});

    std::mt19937_64 rng(1);
    const PrimeField G(test::kPrime59);
    for (auto [n, s] : {std::pair{12, 3}, std::pair{12, 12}, std::pair{30, 5}, std::pair{64, 8}}) {
        const auto Q = make_projection(n, s, G, rng());
        const auto u = test::to_oracle(Q.dense_u()), v = test::to_oracle(Q.dense_v());
        const auto x = test::random_vec(G, s, rng), w = test::random_vec(G, n, rng);
        const u64 before = Q.scalar_ops().get();
        CHECK(Q.apply_v(x) == oracle::mod_mat_vec(v, x, G.modulus()));
        CHECK(Q.apply_u(w) == oracle::mod_mat_vec(u, w, G.modulus()));
        CHECK(Q.scalar_ops().get() - before == 2 * static_cast<u64>(n));
        oracle::ModMatrix vt(s, std::vector<u64>(n)), ut(n, std::vector<u64>(s));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < s; ++j) {
                vt[j][i] = v[i][j];
                ut[i][j] = u[j][i];
            }
        }
        CHECK(Q.apply_v_transpose(w) == oracle::mod_mat_vec(vt, w, G.modulus()));
        CHECK(Q.apply_u_transpose(x) == oracle::mod_mat_vec(ut, x, G.modulus()));
        std::vector<u64> rw(n);
        for (int i = 0; i < n; ++i) rw[i] = oracle::mulmod(Q.r_diag()[i], w[i], G.modulus());
        CHECK(Q.apply_R(w) == rw);
    }
}

TEST_CASE("verify_projection on the structured counterexample is always false") {
    std::mt19937_64 rng(2);
    const PrimeField F = random_prime(59, 17);
    const auto Ap = reduce_mod(krylov_counterexample(), F);
    std::uniform_int_distribution<u64> dist(1, F.modulus() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        const BlockProjection P(F, 4, 2, {1, 1, 1, 1}, {{dist(rng), dist(rng)}, {dist(rng), dist(rng)}},
                                {{dist(rng), dist(rng)}, {dist(rng), dist(rng)}});
        CHECK_FALSE(verify_projection(Ap, P));
        CHECK(oracle::mod_det(oracle::oracle_krylov(test::to_oracle(Ap), test::to_oracle(P.dense_v()), 2, F.modulus()),
                              F.modulus()) == 0);
    }
}

TEST_CASE("verify_projection positive cases") {
    const PrimeField F(test::kPrime59);
    const auto D = reduce_mod(SparseIntMatrix::from_dense({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}), F);
    const auto P = make_projection(3, 1, F, 3);
    CHECK(verify_projection(D, P));
    // m = 1: K is v itself.
    const auto D2 = reduce_mod(SparseIntMatrix::from_dense({{2, 0}, {0, 3}}), F);
    CHECK(verify_projection(D2, make_projection(2, 2, F, 4)));
    // Identity with m > 1 has a rank-s Krylov space.
    const auto I4 = reduce_mod(SparseIntMatrix::identity(4), F);
    CHECK_FALSE(verify_projection(I4, make_projection(4, 2, F, 5)));
    CHECK_THROWS_AS(verify_projection(I4, make_projection(2, 1, F, 5)), DimensionMismatch);
}

TEST_CASE("verify_projection agrees with the oracle Krylov rank") {
    std::mt19937_64 rng(3);
    const PrimeField F(10007);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 12, s = 3;
        const auto A = gen_random_sparse(n, 3, 5, rng());
        const auto P = make_projection(n, s, F, rng());
        const auto B = reduce_mod(A, F).scale_columns(P.r_diag());
        const auto Bd = test::to_oracle(B);
        oracle::ModMatrix Bt(n, std::vector<u64>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) Bt[j][i] = Bd[i][j];
        }
        oracle::ModMatrix ut(n, std::vector<u64>(s));
        const auto u = test::to_oracle(P.dense_u());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < s; ++j) ut[i][j] = u[j][i];
        }
        const bool expect = oracle::mod_rank(oracle::oracle_krylov(Bd, test::to_oracle(P.dense_v()), n / s, 10007), 10007) == n &&
                            oracle::mod_rank(oracle::oracle_krylov(Bt, ut, n / s, 10007), 10007) == n;
        CHECK(verify_projection(B, P) == expect);
    }
}

TEST_CASE("oracle_krylov sanity") {
    const u64 p = 101;
    const auto I = oracle::mod_identity(3);
    const oracle::ModMatrix v{{1}, {2}, {3}};
    const auto K = oracle::oracle_krylov(I, v, 3, p);
    for (std::size_t i = 0; i < 3; ++i) CHECK(K[i] == std::vector<u64>(3, v[i][0]));
    const oracle::ModMatrix D{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}};
    CHECK(oracle::mod_det(oracle::oracle_krylov(D, v, 3, p), p) != 0);
}
