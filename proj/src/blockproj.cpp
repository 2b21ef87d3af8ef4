#include "blocksolve/blockproj.hpp"

#include <string>

#include "blocksolve/random.hpp"

namespace blocksolve {

BlockProjection::BlockProjection(PrimeField F, std::size_t n, std::size_t s, std::vector<u64> r_diag,
                                 std::vector<std::vector<u64>> u_blocks,
                                 std::vector<std::vector<u64>> v_blocks)
    : F_(F), n_(n), s_(s), m_(s == 0 ? 0 : n / s), r_(std::move(r_diag)), u_(std::move(u_blocks)),
      v_(std::move(v_blocks)) {
    if (s == 0 || n == 0 || n % s != 0) {
        throw InvalidBlocking("blocking factor " + std::to_string(s) + " does not divide " + std::to_string(n));
    }
    if (r_.size() != n_ || u_.size() != s_ || v_.size() != s_) {
        throw DimensionMismatch("BlockProjection: component sizes");
    }
    for (u64 r : r_) {
        if (r == 0 || r >= F_.modulus()) throw InvalidParams("BlockProjection: R entry not in [1, p)");
    }
    for (std::size_t j = 0; j < s_; ++j) {
        if (u_[j].size() != m_ || v_[j].size() != m_) throw DimensionMismatch("BlockProjection: block size");
        for (std::size_t i = 0; i < m_; ++i) {
            if (u_[j][i] == 0 || v_[j][i] == 0 || u_[j][i] >= F_.modulus() || v_[j][i] >= F_.modulus()) {
                throw InvalidParams("BlockProjection: block entry not in [1, p)");
            }
        }
    }
}

std::vector<u64> BlockProjection::apply_R(std::span<const u64> w) const {
    if (w.size() != n_) throw DimensionMismatch("apply_R: vector length");
    std::vector<u64> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = F_.mul(w[i], r_[i]);
    return out;
}

std::vector<BigInt> BlockProjection::apply_R_int(std::span<const BigInt> w) const {
    if (w.size() != n_) throw DimensionMismatch("apply_R_int: vector length");
    std::vector<BigInt> out(n_);
    for (std::size_t i = 0; i < n_; ++i) mpz_mul_ui(out[i].get_mpz_t(), w[i].get_mpz_t(), r_[i]);
    return out;
}

std::vector<BigInt> BlockProjection::apply_R_int(std::span<const u64> w) const {
    if (w.size() != n_) throw DimensionMismatch("apply_R_int: vector length");
    std::vector<BigInt> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        mpz_set_ui(out[i].get_mpz_t(), w[i]);
        mpz_mul_ui(out[i].get_mpz_t(), out[i].get_mpz_t(), r_[i]);
    }
    return out;
}

std::vector<u64> BlockProjection::apply_v(std::span<const u64> x) const {
    if (x.size() != s_) throw DimensionMismatch("apply_v: vector length");
    std::vector<u64> out(n_);
    for (std::size_t j = 0; j < s_; ++j) {
        const u64 xp = F_.shoup_precompute(x[j]);
        for (std::size_t i = 0; i < m_; ++i) out[j * m_ + i] = F_.mul_shoup(v_[j][i], x[j], xp);
    }
    scalar_ops_.add(n_);
    return out;
}

std::vector<u64> BlockProjection::apply_v_transpose(std::span<const u64> y) const {
    if (y.size() != n_) throw DimensionMismatch("apply_v_transpose: vector length");
    std::vector<u64> out(s_);
    for (std::size_t j = 0; j < s_; ++j) {
        u64 acc = 0;
        for (std::size_t i = 0; i < m_; ++i) acc = F_.add(acc, F_.mul(v_[j][i], y[j * m_ + i]));
        out[j] = acc;
    }
    scalar_ops_.add(n_);
    return out;
}

std::vector<u64> BlockProjection::apply_u(std::span<const u64> w) const {
    if (w.size() != n_) throw DimensionMismatch("apply_u: vector length");
    std::vector<u64> out(s_);
    const std::size_t lazy = F_.lazy_terms();
    for (std::size_t j = 0; j < s_; ++j) {
        u128 acc = 0;
        std::size_t pending = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            acc += static_cast<u128>(u_[j][i]) * w[j * m_ + i];
            if (++pending == lazy) {
                acc = F_.reduce128(acc);
                pending = 0;
            }
        }
        out[j] = F_.reduce128(acc);
    }
    scalar_ops_.add(n_);
    return out;
}

std::vector<u64> BlockProjection::apply_u_transpose(std::span<const u64> x) const {
    if (x.size() != s_) throw DimensionMismatch("apply_u_transpose: vector length");
    std::vector<u64> out(n_);
    for (std::size_t j = 0; j < s_; ++j) {
        for (std::size_t i = 0; i < m_; ++i) out[j * m_ + i] = F_.mul(u_[j][i], x[j]);
    }
    scalar_ops_.add(n_);
    return out;
}

DenseModMatrix BlockProjection::dense_u() const {
    DenseModMatrix U(F_, s_, n_);
    for (std::size_t j = 0; j < s_; ++j) {
        for (std::size_t i = 0; i < m_; ++i) U(j, j * m_ + i) = u_[j][i];
    }
    return U;
}

DenseModMatrix BlockProjection::dense_v() const {
    DenseModMatrix V(F_, n_, s_);
    for (std::size_t j = 0; j < s_; ++j) {
        for (std::size_t i = 0; i < m_; ++i) V(j * m_ + i, j) = v_[j][i];
    }
    return V;
}

BlockProjection make_projection(std::size_t n, std::size_t s, const PrimeField& F, u64 seed) {
    if (s == 0 || n == 0 || n % s != 0) {
        throw InvalidBlocking("blocking factor " + std::to_string(s) + " does not divide " + std::to_string(n));
    }
    const std::size_t m = n / s;
    Rng rng(derive_seed(seed, "make_projection"));
    std::uniform_int_distribution<u64> dist(1, F.modulus() - 1);
    std::vector<u64> r(n);
    for (auto& x : r) x = dist(rng);
    std::vector<std::vector<u64>> u(s, std::vector<u64>(m)), v(s, std::vector<u64>(m));
    for (auto& blk : v) {
        for (auto& x : blk) x = dist(rng);
    }
    for (auto& blk : u) {
        for (auto& x : blk) x = dist(rng);
    }
    return BlockProjection(F, n, s, std::move(r), std::move(u), std::move(v));
}

bool verify_projection(const SparseModMatrix& B_p, const BlockProjection& proj) {
    const std::size_t n = proj.n();
    if (B_p.dim() != n) throw DimensionMismatch("verify_projection: dimensions differ");
    if (!(B_p.field() == proj.field())) throw InvalidParams("verify_projection: different fields");
    if (n > kVerifyProjectionCap) {
        throw InvalidParams("verify_projection: n = " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kVerifyProjectionCap));
    }
    const std::size_t s = proj.s(), m = proj.m();
    const auto& F = proj.field();
    // Columns of K(B, v) and K(B^T, u^T) in block order; nonsingularity does
    // not depend on the column order.
    DenseModMatrix Kv(F, n, n), Ku(F, n, n);
    std::vector<u64> e(s, 0);
    for (std::size_t j = 0; j < s; ++j) {
        e.assign(s, 0);
        e[j] = 1;
        std::vector<u64> cv = proj.apply_v(e);
        std::vector<u64> cu = proj.apply_u_transpose(e);
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t col = k * s + j;
            for (std::size_t i = 0; i < n; ++i) {
                Kv(i, col) = cv[i];
                Ku(i, col) = cu[i];
            }
            if (k + 1 < m) {
                cv = B_p.apply(cv);
                cu = B_p.apply_transpose(cu);
            }
        }
    }
    return rank_mod(Kv) == n && rank_mod(Ku) == n;
}

}  // namespace blocksolve
