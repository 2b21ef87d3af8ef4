#include <doctest.h>

#include <random>

#include "blocksolve/blockhankel.hpp"
#include "support.hpp"

using namespace blocksolve;

namespace {

BlockHankelRep random_hankel(const PrimeField& F, std::size_t m, std::size_t s, std::mt19937_64& rng) {
    BlockHankelRep H{F, m, s, {}};
    for (std::size_t k = 0; k + 1 < 2 * m; ++k) H.alphas.push_back(test::random_dense(F, s, s, rng));
    return H;
}

// B = A R mod p for a random sparse A, with a projection that gives a
// nonsingular H.
struct Instance {
    SparseModMatrix B;
    BlockProjection proj;
};

Instance random_instance(const PrimeField& F, std::size_t n, std::size_t s, u64 seed) {
    for (u64 k = 0;; ++k) {
        const auto A = gen_random_sparse(n, std::min<std::size_t>(n, 4), 50, seed + 1000 * k);
        auto proj = make_projection(n, s, F, seed + k);
        auto B = reduce_mod(A, F).scale_columns(proj.r_diag());
        if (verify_projection(B, proj)) return {std::move(B), std::move(proj)};
    }
}

}  // namespace

TEST_CASE("compute_H small examples") {
    const PrimeField F(7);
    const auto B = reduce_mod(SparseIntMatrix::from_dense({{2, 0}, {0, 3}}), F);
    const BlockProjection P(F, 2, 1, {1, 1}, {{1, 1}}, {{1, 1}});
    const auto H = compute_H(B, P);
    REQUIRE(H.alphas.size() == 3);
    CHECK(H.alphas[0](0, 0) == 5);
    CHECK(H.alphas[1](0, 0) == 6);
    CHECK(H.alphas[2](0, 0) == 0);
    CHECK(B.matvecs().get() == 3);

    const PrimeField G(test::kPrime59);
    const auto I = reduce_mod(SparseIntMatrix::identity(6), G);
    const auto Q = make_projection(6, 2, G, 1);
    const auto HI = compute_H(I, Q);
    const auto uv = mat_mul(Q.dense_u(), Q.dense_v());
    for (const auto& a : HI.alphas) CHECK(a == uv);
}

TEST_CASE("compute_H matches u B^i v") {
    const PrimeField F(test::kPrime59);
    const auto A = gen_random_sparse(12, 4, 50, 3);
    const auto P = make_projection(12, 3, F, 3);
    const auto B = reduce_mod(A, F).scale_columns(P.r_diag());
    const auto H = compute_H(B, P);
    CHECK(B.matvecs().get() == (2 * 4 - 1) * 3);
    const auto Bd = test::to_oracle(B), u = test::to_oracle(P.dense_u()), v = test::to_oracle(P.dense_v());
    for (std::size_t i = 1; i <= 7; ++i) {
        const auto expect = oracle::mod_mul(u, oracle::mod_mul(oracle::mod_pow(Bd, i, F.modulus()), v, F.modulus()), F.modulus());
        CHECK(test::to_oracle(H.alphas[i - 1]) == expect);
    }
    // Anti-diagonal constancy of the materialised matrix.
    const auto M = H.materialize();
    for (std::size_t bi = 0; bi < 4; ++bi) {
        for (std::size_t bj = 0; bj < 4; ++bj) {
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = 0; j < 3; ++j) CHECK(M(bi * 3 + i, bj * 3 + j) == H.alphas[bi + bj](i, j));
            }
        }
    }
}

TEST_CASE("invert_offdiag single block") {
    const PrimeField F(test::kPrime59);
    std::mt19937_64 rng(1);
    const auto H = random_hankel(F, 1, 3, rng);
    const auto inv = invert_offdiag(H);
    CHECK(inv.materialize() == mat_inverse(H.alphas[0]));
}

TEST_CASE("invert_offdiag n=4, s=2 equals the dense inverse") {
    const PrimeField F(test::kPrime59);
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto H = random_hankel(F, 2, 2, rng);
        const auto dense = test::to_oracle(H.materialize());
        const auto expect = oracle::mod_inverse(dense, F.modulus());
        if (expect.empty()) continue;
        CHECK(test::to_oracle(invert_offdiag(H).materialize()) == expect);
    }
}

TEST_CASE("invert_offdiag all algorithms on random H") {
    const PrimeField F(test::kPrime59);
    std::mt19937_64 rng(3);
    for (auto alg : {SigmaBasisAlgorithm::m_basis, SigmaBasisAlgorithm::m_basis_half, SigmaBasisAlgorithm::pm_basis}) {
        for (std::size_t s = 1; s <= 4; ++s) {
            for (std::size_t m = 1; m <= 8; ++m) {
                const auto H = random_hankel(F, m, s, rng);
                const auto inv = invert_offdiag(H, {alg, 0});
                CHECK(mat_mul(inv.materialize(), H.materialize()) == DenseModMatrix::identity(F, m * s));
            }
        }
    }
}

TEST_CASE("invert_offdiag on structured nonsingular H with degenerate basis degrees") {
    // Over a tiny field random Hankel matrices often have singular leading
    // minors, which exercises the approximant-space extraction.
    const PrimeField F(3);
    std::mt19937_64 rng(4);
    int nonsingular = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t s = 1 + rng() % 3, m = 1 + rng() % 5;
        const auto H = random_hankel(F, m, s, rng);
        const auto dense = test::to_oracle(H.materialize());
        const bool singular = oracle::mod_det(dense, 3) == 0;
        if (singular) {
            CHECK_THROWS_AS(invert_offdiag(H, {SigmaBasisAlgorithm::m_basis, 0}), SingularHankel);
            continue;
        }
        ++nonsingular;
        const auto inv = invert_offdiag(H, {SigmaBasisAlgorithm::m_basis, 0});
        CHECK(test::to_oracle(inv.materialize()) == oracle::mod_inverse(dense, 3));
    }
    CHECK(nonsingular > 50);
}

TEST_CASE("invert_offdiag rejects singular H") {
    const PrimeField F(test::kPrime59);
    const auto I = reduce_mod(SparseIntMatrix::identity(6), F);
    const auto P = make_projection(6, 2, F, 1);
    CHECK_THROWS_AS(invert_offdiag(compute_H(I, P)), SingularHankel);
    BlockHankelRep Z{F, 1, 2, {DenseModMatrix(F, 2, 2)}};
    CHECK_THROWS_AS(invert_offdiag(Z), SingularHankel);
}

TEST_CASE("apply_Hinv matches the dense inverse") {
    const PrimeField F(test::kPrime59);
    std::mt19937_64 rng(5);
    for (auto [m, s] : {std::pair{1, 1}, std::pair{1, 4}, std::pair{2, 3}, std::pair{5, 2}, std::pair{8, 8}, std::pair{16, 4}}) {
        const auto H = random_hankel(F, m, s, rng);
        const auto inv = invert_offdiag(H);
        const HinvApplyContext ctx(inv);
        CHECK(ctx.points() == static_cast<std::size_t>(2 * m - 1));
        const auto Hinv = oracle::mod_inverse(test::to_oracle(H.materialize()), F.modulus());
        REQUIRE_FALSE(Hinv.empty());
        for (int k = 0; k < 5; ++k) {
            const auto w = test::random_vec(F, m * s, rng);
            CHECK(apply_Hinv(ctx, w) == oracle::mod_mat_vec(Hinv, w, F.modulus()));
        }
        CHECK(ctx.field_ops().get() > 0);
        CHECK_THROWS_AS(ctx.apply(std::vector<u64>(m * s + 1)), DimensionMismatch);
    }
    // H = I.
    const auto I = DenseModMatrix::identity(F, 2);
    const BlockHankelRep HI{F, 1, 2, {I}};
    const HinvApplyContext ctxI(invert_offdiag(HI));
    CHECK(ctxI.apply(std::vector<u64>{3, 4}) == std::vector<u64>{3, 4});
}

TEST_CASE("apply_U and apply_V") {
    const PrimeField F(7);
    const auto B = reduce_mod(SparseIntMatrix::from_dense({{2, 0}, {0, 3}}), F);
    const BlockProjection P(F, 2, 1, {1, 1}, {{1, 1}}, {{1, 1}});
    // U w = (u w, u B w).
    CHECK(apply_U(B, P, std::vector<u64>{1, 1}) == std::vector<u64>{2, 5});
    CHECK(B.matvecs().get() == 1);

    const PrimeField G(test::kPrime59);
    const auto I = reduce_mod(SparseIntMatrix::identity(6), G);
    const auto Q = make_projection(6, 2, G, 9);
    const std::vector<u64> w{1, 2, 3, 4, 5, 6};
    const auto uw = Q.apply_u(w);
    CHECK(apply_U(I, Q, w) == std::vector<u64>{uw[0], uw[1], uw[0], uw[1], uw[0], uw[1]});
    // V y = v (y_0 + y_1 + y_2) for B = I.
    const std::vector<u64> sum{G.add(G.add(1, 3), 5), G.add(G.add(2, 4), 6)};
    CHECK(apply_V(I, Q, w) == Q.apply_v(sum));

    std::mt19937_64 rng(6);
    const auto A = gen_random_sparse(20, 4, 50, 6);
    const auto R = make_projection(20, 4, G, 6);
    const auto Bg = reduce_mod(A, G).scale_columns(R.r_diag());
    const auto Bd = test::to_oracle(Bg), u = test::to_oracle(R.dense_u()), v = test::to_oracle(R.dense_v());
    const auto x = test::random_vec(G, 20, rng);
    std::vector<u64> expectU;
    std::vector<u64> expectV(20, 0);
    for (std::size_t i = 0; i < 5; ++i) {
        const auto Bi = oracle::mod_pow(Bd, i, G.modulus());
        const auto c = oracle::mod_mat_vec(oracle::mod_mul(u, Bi, G.modulus()), x, G.modulus());
        expectU.insert(expectU.end(), c.begin(), c.end());
        const std::vector<u64> yi(x.begin() + i * 4, x.begin() + (i + 1) * 4);
        const auto t = oracle::mod_mat_vec(oracle::mod_mul(Bi, v, G.modulus()), yi, G.modulus());
        for (std::size_t k = 0; k < 20; ++k) expectV[k] = (expectV[k] + t[k]) % G.modulus();
    }
    u64 before = Bg.matvecs().get();
    CHECK(apply_U(Bg, R, x) == expectU);
    CHECK(Bg.matvecs().get() - before == 4);
    before = Bg.matvecs().get();
    CHECK(apply_V(Bg, R, x) == expectV);
    CHECK(Bg.matvecs().get() - before == 4);

    const auto Q1 = make_projection(6, 6, G, 10);
    const std::vector<u64> y{1, 2, 3, 4, 5, 6};
    CHECK(apply_V(I, Q1, y) == Q1.apply_v(y));
}

TEST_CASE("apply_Binv inverts B") {
    const PrimeField F(test::kPrime59);
    std::mt19937_64 rng(7);

    // B = I with m = 1.
    const auto I = reduce_mod(SparseIntMatrix::identity(4), F);
    const auto P = make_projection(4, 4, F, 1);
    const BlockInverse id(I, P);
    const std::vector<u64> w{9, 8, 7, 6};
    CHECK(apply_Binv(id, w) == w);

    for (auto [n, s] : {std::pair{16, 4}, std::pair{12, 1}, std::pair{30, 5}, std::pair{64, 8}, std::pair{48, 6}}) {
        auto inst = random_instance(F, n, s, rng());
        const BlockInverse inv(inst.B, inst.proj);
        const auto Binv = oracle::mod_inverse(test::to_oracle(inst.B), F.modulus());
        REQUIRE_FALSE(Binv.empty());
        for (int k = 0; k < 5; ++k) {
            const auto x = test::random_vec(F, n, rng);
            const u64 before = inst.B.matvecs().get();
            const auto y = inv.apply(x);
            CHECK(inst.B.matvecs().get() - before == 2 * (static_cast<u64>(n / s) - 1));
            CHECK(inst.B.apply(y) == x);
            CHECK(y == oracle::mod_mat_vec(Binv, x, F.modulus()));
        }
    }
}
