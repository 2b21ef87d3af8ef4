#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "blocksolve/blockproj.hpp"
#include "blocksolve/counter.hpp"
#include "blocksolve/densemodp.hpp"
#include "blocksolve/sparsemat.hpp"

namespace blocksolve {

// Block-Hankel matrix H = U B V with s x s blocks; block (i, j) (0-based) is
// alphas[i + j], where alphas[k] = u B^(k+1) v for k = 0 .. 2m-2.
struct BlockHankelRep {
    PrimeField field;
    std::size_t m;
    std::size_t s;
    std::vector<DenseModMatrix> alphas;

    std::size_t n() const noexcept { return m * s; }
    const DenseModMatrix& block(std::size_t i, std::size_t j) const { return alphas.at(i + j); }
    DenseModMatrix materialize() const;
};

BlockHankelRep compute_H(const SparseModMatrix& B_p, const BlockProjection& proj);

enum class SigmaBasisAlgorithm {
    m_basis,       // full iterative basis
    m_basis_half,  // only the columns multiplying H are stored
    pm_basis,      // divide and conquer
};

#ifdef NDEBUG
inline constexpr std::size_t kSelfCheckCap = 0;
#else
inline constexpr std::size_t kSelfCheckCap = 512;
#endif

struct OffDiagOptions {
    SigmaBasisAlgorithm algorithm = SigmaBasisAlgorithm::m_basis;
    // Materialise the formula and check it against H when n <= this cap.
    std::size_t self_check_cap = kSelfCheckCap;
};

// Inverse of a block-Hankel H held as four block sequences (each m blocks):
//
//   last_col     x: H x = e_{m-1}                       (last block column of H^-1)
//   last_row     w: w H = e_{m-1}^T                     (last block row of H^-1)
//   shifted_col  y: H y = [a_m; ...; a_{2m-2}; 0]
//   shifted_row  r: r H = [a_m, ..., a_{2m-2}, 0]
//
// with a_k = alphas[k]. Writing x(z) = sum x_k z^k and so on, and
// Y(z) = y(z) - z^m I, the inverse is the difference of two
// Hankel-times-upper-triangular-Toeplitz products
//
//   H^-1 = Hank(x_1 .. x_{m-1}, 0) Toep(r_0 .. r_{m-1})
//        - Hank(Y_1 .. Y_m)        Toep(w_0 .. w_{m-1})
//
// where Hank(c_1 .. c_m) has block (a, b) = c_{a+b+1} (zero past m) and
// Toep(c_0 .. c_{m-1}) has block (b, j) = c_{j-b} for j >= b.
struct OffDiagInverse {
    PrimeField field;
    std::size_t m;
    std::size_t s;
    std::vector<DenseModMatrix> last_col;
    std::vector<DenseModMatrix> last_row;
    std::vector<DenseModMatrix> shifted_col;
    std::vector<DenseModMatrix> shifted_row;

    std::size_t n() const noexcept { return m * s; }
    DenseModMatrix materialize() const;
};

// Builds the representation from left order bases of [H(z); I] at orders
// 2m-2 and 2m (and the same for the transposed blocks, giving the right
// bases). Throws SingularHankel if H is singular.
OffDiagInverse invert_offdiag(const BlockHankelRep& H, const OffDiagOptions& opts = {});

// Precomputed values of the four sequences at t = 2m - 1 points, so each
// application of H^-1 is a few Vandermonde products plus t small s x s
// matrix-vector products.
class HinvApplyContext {
public:
    explicit HinvApplyContext(const OffDiagInverse& inv);

    std::size_t n() const noexcept { return m_ * s_; }
    std::size_t points() const noexcept { return t_; }
    std::vector<u64> apply(std::span<const u64> w) const;

    // Field multiply-adds spent in apply().
    const OpCounter& field_ops() const noexcept { return field_ops_; }

private:
    DenseModMatrix pointwise(const std::vector<DenseModMatrix>& at, const DenseModMatrix& vals) const;

    PrimeField F_;
    std::size_t m_;
    std::size_t s_;
    std::size_t t_;
    VandermondeContext vand_;
    std::vector<DenseModMatrix> x_at_, w_at_, y_at_, r_at_;
    OpCounter field_ops_;
};

std::vector<u64> apply_Hinv(const HinvApplyContext& ctx, std::span<const u64> w);

// U w: chunk i (entries [i*s, (i+1)*s)) is u B^i w. Uses m-1 products with B.
std::vector<u64> apply_U(const SparseModMatrix& B_p, const BlockProjection& proj, std::span<const u64> w);

// V y = sum_i B^i v y_i evaluated by Horner. Uses m-1 products with B.
std::vector<u64> apply_V(const SparseModMatrix& B_p, const BlockProjection& proj, std::span<const u64> y);

// B^-1 mod p as V H^-1 U, with all precomputation done at construction.
class BlockInverse {
public:
    // B_p and proj must outlive this object.
    BlockInverse(const SparseModMatrix& B_p, const BlockProjection& proj, const OffDiagOptions& opts = {});

    const BlockHankelRep& hankel() const noexcept { return H_; }
    const OffDiagInverse& offdiag() const noexcept { return inv_; }
    const HinvApplyContext& context() const noexcept { return *ctx_; }

    std::vector<u64> apply(std::span<const u64> w) const;

private:
    const SparseModMatrix& B_;
    const BlockProjection& proj_;
    BlockHankelRep H_;
    OffDiagInverse inv_;
    std::unique_ptr<HinvApplyContext> ctx_;
};

std::vector<u64> apply_Binv(const BlockInverse& state, std::span<const u64> w);

}  // namespace blocksolve
