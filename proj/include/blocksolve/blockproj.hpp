#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "blocksolve/arith.hpp"
#include "blocksolve/counter.hpp"
#include "blocksolve/densemodp.hpp"
#include "blocksolve/sparsemat.hpp"

namespace blocksolve {

// Structured block projection (R, u, v) for an n x n matrix with blocking
// factor s and Krylov depth m = n / s.
//
//   R = diag(r_diag)
//   v (n x s): column j is zero except rows [j*m, (j+1)*m), which hold v_blocks[j]
//   u (s x n): row j is zero except columns [j*m, (j+1)*m), which hold u_blocks[j]
//
// so u and v each carry exactly n nonzero entries and apply in Theta(n).
class BlockProjection {
public:
    BlockProjection(PrimeField F, std::size_t n, std::size_t s, std::vector<u64> r_diag,
                    std::vector<std::vector<u64>> u_blocks, std::vector<std::vector<u64>> v_blocks);

    const PrimeField& field() const noexcept { return F_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t s() const noexcept { return s_; }
    std::size_t m() const noexcept { return m_; }
    std::span<const u64> r_diag() const noexcept { return r_; }
    const std::vector<std::vector<u64>>& u_blocks() const noexcept { return u_; }
    const std::vector<std::vector<u64>>& v_blocks() const noexcept { return v_; }

    std::vector<u64> apply_R(std::span<const u64> w) const;
    // R with entries lifted to [1, p-1] in Z.
    std::vector<BigInt> apply_R_int(std::span<const BigInt> w) const;
    std::vector<BigInt> apply_R_int(std::span<const u64> w) const;

    std::vector<u64> apply_v(std::span<const u64> x) const;            // v x,    s -> n
    std::vector<u64> apply_v_transpose(std::span<const u64> y) const;  // v^T y,  n -> s
    std::vector<u64> apply_u(std::span<const u64> w) const;            // u w,    n -> s
    std::vector<u64> apply_u_transpose(std::span<const u64> x) const;  // u^T x,  s -> n

    // Scalar multiply-adds performed by the u/v applications.
    const OpCounter& scalar_ops() const noexcept { return scalar_ops_; }

    DenseModMatrix dense_u() const;
    DenseModMatrix dense_v() const;

private:
    PrimeField F_;
    std::size_t n_;
    std::size_t s_;
    std::size_t m_;
    std::vector<u64> r_;
    std::vector<std::vector<u64>> u_;
    std::vector<std::vector<u64>> v_;
    OpCounter scalar_ops_;
};

// All entries uniform in [1, p-1]; throws InvalidBlocking unless s divides n.
BlockProjection make_projection(std::size_t n, std::size_t s, const PrimeField& F, u64 seed);

// Largest n for which verify_projection materialises Krylov matrices.
inline constexpr std::size_t kVerifyProjectionCap = 512;

// True iff K(B, v) = [v | Bv | ... | B^(m-1) v] and K(B^T, u^T) are both
// nonsingular mod p. B_p is the already-preconditioned matrix A R.
bool verify_projection(const SparseModMatrix& B_p, const BlockProjection& proj);

}  // namespace blocksolve
