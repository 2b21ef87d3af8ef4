#include "blocksolve/blockhankel.hpp"

#include <optional>
#include <string>
#include <utility>

#include "blocksolve/errors.hpp"
#include "blocksolve/polymat.hpp"

namespace blocksolve {

namespace {

DenseModMatrix top_rows(const DenseModMatrix& A, std::size_t k) {
    auto d = A.data();
    return DenseModMatrix(A.field(), k, A.cols(), std::vector<u64>(d.begin(), d.begin() + k * A.cols()));
}

// Values at the points of ctx of sum_l seq[l] z^l, one s x s matrix per point.
std::vector<DenseModMatrix> evaluate_blocks(const std::vector<DenseModMatrix>& seq, std::size_t s,
                                            const VandermondeContext& ctx) {
    const PrimeField& F = ctx.forward().field();
    DenseModMatrix flat(F, seq.size(), s * s);
    for (std::size_t l = 0; l < seq.size(); ++l) {
        auto src = seq[l].data();
        std::copy(src.begin(), src.end(), flat.row(l).begin());
    }
    DenseModMatrix vals = vand_eval(flat, ctx);
    std::vector<DenseModMatrix> out;
    out.reserve(ctx.size());
    for (std::size_t k = 0; k < ctx.size(); ++k) {
        auto r = vals.row(k);
        out.emplace_back(F, s, s, std::vector<u64>(r.begin(), r.end()));
    }
    return out;
}

// Basis of the approximants of shifted degree <= delta, as coefficient
// matrices of the leading s columns (one row per approximant). Each row of a
// reduced basis contributes itself times 1, z, ..., z^(delta - deg).
std::vector<DenseModMatrix> low_degree_space(const PolyMatrix& basis, const std::vector<long>& degrees,
                                             std::size_t s, long delta) {
    const PrimeField& F = basis.field();
    std::vector<DenseModMatrix> out(static_cast<std::size_t>(delta) + 1, DenseModMatrix(F, s, s));
    std::size_t row = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] > delta) continue;
        for (long j = 0; j <= delta - degrees[i]; ++j) {
            if (row == s) throw SingularHankel("block Hankel matrix is singular (approximant space too large)");
            for (std::size_t k = 0; k < basis.length(); ++k) {
                const std::size_t dst = k + static_cast<std::size_t>(j);
                if (dst > static_cast<std::size_t>(delta)) break;
                const DenseModMatrix& c = basis.coeffs()[k];
                for (std::size_t col = 0; col < s; ++col) out[dst](row, col) = c(i, col);
            }
            ++row;
        }
    }
    if (row != s) throw SingularHankel("block Hankel matrix is singular (approximant space too small)");
    return out;
}

DenseModMatrix invert_or_singular(const DenseModMatrix& A) {
    try {
        return mat_inverse(A);
    } catch (const SingularMod&) {
        throw SingularHankel("block Hankel matrix is singular");
    }
}

struct LeftPair {
    std::vector<DenseModMatrix> last_row;
    std::vector<DenseModMatrix> shifted_row;
};

// Solves w H = e_{m-1}^T and r H = [a_m, ..., a_{2m-2}, 0] from left order
// bases of [H(z); I] with shift (0, ..., 0, 1, ..., 1).
LeftPair left_pair(const PrimeField& F, const std::vector<DenseModMatrix>& a, std::size_t m, std::size_t s,
                   SigmaBasisAlgorithm alg) {
    const std::size_t order_w = 2 * m - 2, order_r = 2 * m;
    std::vector<DenseModMatrix> coeffs;
    coeffs.reserve(order_r);
    for (std::size_t k = 0; k < order_r; ++k) {
        DenseModMatrix c(F, 2 * s, s);
        if (k < a.size()) {
            for (std::size_t i = 0; i < s; ++i) {
                for (std::size_t j = 0; j < s; ++j) c(i, j) = a[k](i, j);
            }
        }
        if (k == 0) {
            for (std::size_t i = 0; i < s; ++i) c(s + i, i) = 1;
        }
        coeffs.push_back(std::move(c));
    }
    const PolyMatrix series(F, 2 * s, s, std::move(coeffs));
    std::vector<long> shift(2 * s, 0);
    for (std::size_t i = s; i < 2 * s; ++i) shift[i] = 1;

    std::optional<SigmaBasis> Sw, Sr;
    if (alg == SigmaBasisAlgorithm::pm_basis) {
        Sw = pm_basis(series, order_w, shift);
        Sr = pm_basis(series, order_r, shift);
    } else {
        const std::size_t tracked = alg == SigmaBasisAlgorithm::m_basis_half ? s : 2 * s;
        MBasisEngine engine(series, order_r, shift, tracked);
        engine.advance_to(order_w);
        Sw = engine.snapshot();
        engine.advance_to(order_r);
        Sr = engine.snapshot();
    }

    LeftPair out;
    const long md = static_cast<long>(m);

    // Coefficient 2m-2 of W(z) H(z) is the product of the reversed w with
    // the last block column of H.
    auto Wk = low_degree_space(Sw->basis, Sw->degrees, s, md - 1);
    DenseModMatrix C(F, s, s);
    for (std::size_t l = 0; l < m; ++l) C = mat_add(C, mat_mul(Wk[l], a[2 * m - 2 - l]));
    const DenseModMatrix Cinv = invert_or_singular(C);
    out.last_row.resize(m, DenseModMatrix(F, s, s));
    for (std::size_t i = 0; i < m; ++i) out.last_row[i] = mat_mul(Cinv, Wk[m - 1 - i]);

    auto Rk = low_degree_space(Sr->basis, Sr->degrees, s, md);
    const DenseModMatrix Dinv = mat_scale(invert_or_singular(Rk[0]), F.neg(1));
    out.shifted_row.resize(m, DenseModMatrix(F, s, s));
    for (std::size_t i = 0; i < m; ++i) out.shifted_row[i] = mat_mul(Dinv, Rk[m - i]);
    return out;
}

}  // namespace

DenseModMatrix BlockHankelRep::materialize() const {
    DenseModMatrix M(field, n(), n());
    for (std::size_t bi = 0; bi < m; ++bi) {
        for (std::size_t bj = 0; bj < m; ++bj) {
            const DenseModMatrix& c = block(bi, bj);
            for (std::size_t i = 0; i < s; ++i) {
                for (std::size_t j = 0; j < s; ++j) M(bi * s + i, bj * s + j) = c(i, j);
            }
        }
    }
    return M;
}

BlockHankelRep compute_H(const SparseModMatrix& B_p, const BlockProjection& proj) {
    const std::size_t n = proj.n(), s = proj.s(), m = proj.m();
    if (B_p.dim() != n) throw DimensionMismatch("compute_H: matrix and projection sizes differ");
    if (!(B_p.field() == proj.field())) throw InvalidParams("compute_H: different fields");
    const PrimeField& F = proj.field();

    BlockHankelRep H{F, m, s, std::vector<DenseModMatrix>(2 * m - 1, DenseModMatrix(F, s, s))};
    std::vector<u64> e(s);
    std::vector<u64> next(n);
    for (std::size_t j = 0; j < s; ++j) {
        e.assign(s, 0);
        e[j] = 1;
        std::vector<u64> col = proj.apply_v(e);
        for (std::size_t k = 0; k + 1 < 2 * m; ++k) {
            B_p.apply_into(col, next);
            col.swap(next);
            const std::vector<u64> a = proj.apply_u(col);
            for (std::size_t i = 0; i < s; ++i) H.alphas[k](i, j) = a[i];
        }
    }
    return H;
}

OffDiagInverse invert_offdiag(const BlockHankelRep& H, const OffDiagOptions& opts) {
    const std::size_t m = H.m, s = H.s;
    const PrimeField& F = H.field;
    if (m == 0 || s == 0 || H.alphas.size() != 2 * m - 1) throw DimensionMismatch("invert_offdiag: block count");

    OffDiagInverse inv{F, m, s, {}, {}, {}, {}};
    if (m == 1) {
        const DenseModMatrix a0inv = invert_or_singular(H.alphas[0]);
        inv.last_col = {a0inv};
        inv.last_row = {a0inv};
        inv.shifted_col = {DenseModMatrix(F, s, s)};
        inv.shifted_row = {DenseModMatrix(F, s, s)};
    } else {
        LeftPair left = left_pair(F, H.alphas, m, s, opts.algorithm);
        std::vector<DenseModMatrix> at;
        at.reserve(H.alphas.size());
        for (const auto& a : H.alphas) at.push_back(a.transpose());
        LeftPair right = left_pair(F, at, m, s, opts.algorithm);
        inv.last_row = std::move(left.last_row);
        inv.shifted_row = std::move(left.shifted_row);
        for (std::size_t i = 0; i < m; ++i) {
            inv.last_col.push_back(right.last_row[i].transpose());
            inv.shifted_col.push_back(right.shifted_row[i].transpose());
        }
    }

    if (H.n() <= opts.self_check_cap) {
        const DenseModMatrix prod = mat_mul(inv.materialize(), H.materialize());
        if (!(prod == DenseModMatrix::identity(F, H.n()))) {
            throw Error("invert_offdiag: self-check failed for n = " + std::to_string(H.n()));
        }
    }
    return inv;
}

DenseModMatrix OffDiagInverse::materialize() const {
    const PrimeField& F = field;
    const DenseModMatrix zero(F, s, s);
    const DenseModMatrix minus_id = mat_scale(DenseModMatrix::identity(F, s), F.neg(1));
    auto x_at = [&](std::size_t k) -> const DenseModMatrix& { return k < m ? last_col[k] : zero; };
    auto y_at = [&](std::size_t k) -> const DenseModMatrix& { return k < m ? shifted_col[k] : minus_id; };

    DenseModMatrix X(F, n(), n());
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t j = 0; j < m; ++j) {
            DenseModMatrix blk(F, s, s);
            for (std::size_t k = a + 1; k <= m && k <= j + a + 1; ++k) {
                const std::size_t l = j + a + 1 - k;
                blk = mat_add(blk, mat_sub(mat_mul(x_at(k), shifted_row[l]), mat_mul(y_at(k), last_row[l])));
            }
            for (std::size_t i = 0; i < s; ++i) {
                for (std::size_t c = 0; c < s; ++c) X(a * s + i, j * s + c) = blk(i, c);
            }
        }
    }
    return X;
}

HinvApplyContext::HinvApplyContext(const OffDiagInverse& inv)
    : F_(inv.field), m_(inv.m), s_(inv.s), t_(2 * inv.m - 1), vand_(inv.field, 2 * inv.m - 1),
      x_at_(evaluate_blocks(inv.last_col, inv.s, vand_)), w_at_(evaluate_blocks(inv.last_row, inv.s, vand_)),
      y_at_(evaluate_blocks(inv.shifted_col, inv.s, vand_)),
      r_at_(evaluate_blocks(inv.shifted_row, inv.s, vand_)) {}

DenseModMatrix HinvApplyContext::pointwise(const std::vector<DenseModMatrix>& at, const DenseModMatrix& vals) const {
    DenseModMatrix out(F_, t_, s_);
    for (std::size_t k = 0; k < t_; ++k) {
        const std::vector<u64> r = mat_vec(at[k], vals.row(k));
        std::copy(r.begin(), r.end(), out.row(k).begin());
    }
    return out;
}

// With v^R(z) = sum_j v_j z^(m-1-j), D = r v^R mod z^m and E = w v^R mod z^m,
// block a of H^-1 v is coefficient m+a of x D - y E plus E_a. Every product
// has degree <= 2m-2, so t = 2m-1 points determine it.
std::vector<u64> HinvApplyContext::apply(std::span<const u64> w) const {
    if (w.size() != n()) throw DimensionMismatch("apply_Hinv: vector length");
    DenseModMatrix vr(F_, m_, s_);
    for (std::size_t c = 0; c < m_; ++c) {
        auto src = w.subspan((m_ - 1 - c) * s_, s_);
        std::copy(src.begin(), src.end(), vr.row(c).begin());
    }
    const DenseModMatrix vr_at = vand_eval(vr, vand_);
    const DenseModMatrix D = top_rows(vand_interp(pointwise(r_at_, vr_at), vand_), m_);
    const DenseModMatrix E = top_rows(vand_interp(pointwise(w_at_, vr_at), vand_), m_);
    const DenseModMatrix q_at = mat_sub(pointwise(x_at_, vand_eval(D, vand_)), pointwise(y_at_, vand_eval(E, vand_)));
    const DenseModMatrix q = vand_interp(q_at, vand_);

    std::vector<u64> out(n());
    for (std::size_t a = 0; a < m_; ++a) {
        for (std::size_t i = 0; i < s_; ++i) {
            const u64 hi = m_ + a < t_ ? q(m_ + a, i) : 0;
            out[a * s_ + i] = F_.add(hi, E(a, i));
        }
    }
    field_ops_.add(3 * t_ * m_ * s_ + 4 * t_ * s_ * s_ + 3 * t_ * t_ * s_);
    return out;
}

std::vector<u64> apply_Hinv(const HinvApplyContext& ctx, std::span<const u64> w) { return ctx.apply(w); }

std::vector<u64> apply_U(const SparseModMatrix& B_p, const BlockProjection& proj, std::span<const u64> w) {
    const std::size_t n = proj.n(), s = proj.s(), m = proj.m();
    if (w.size() != n || B_p.dim() != n) throw DimensionMismatch("apply_U: sizes");
    std::vector<u64> out(n);
    std::vector<u64> cur(w.begin(), w.end()), next(n);
    for (std::size_t i = 0; i < m; ++i) {
        const std::vector<u64> c = proj.apply_u(cur);
        std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>(i * s));
        if (i + 1 < m) {
            B_p.apply_into(cur, next);
            cur.swap(next);
        }
    }
    return out;
}

std::vector<u64> apply_V(const SparseModMatrix& B_p, const BlockProjection& proj, std::span<const u64> y) {
    const std::size_t n = proj.n(), s = proj.s(), m = proj.m();
    if (y.size() != n || B_p.dim() != n) throw DimensionMismatch("apply_V: sizes");
    const PrimeField& F = proj.field();
    std::vector<u64> acc = proj.apply_v(y.subspan((m - 1) * s, s));
    std::vector<u64> next(n);
    for (std::size_t i = m - 1; i-- > 0;) {
        B_p.apply_into(acc, next);
        const std::vector<u64> vy = proj.apply_v(y.subspan(i * s, s));
        for (std::size_t k = 0; k < n; ++k) acc[k] = F.add(next[k], vy[k]);
    }
    return acc;
}

BlockInverse::BlockInverse(const SparseModMatrix& B_p, const BlockProjection& proj, const OffDiagOptions& opts)
    : B_(B_p), proj_(proj), H_(compute_H(B_p, proj)), inv_(invert_offdiag(H_, opts)),
      ctx_(std::make_unique<HinvApplyContext>(inv_)) {}

std::vector<u64> BlockInverse::apply(std::span<const u64> w) const {
    return apply_V(B_, proj_, ctx_->apply(apply_U(B_, proj_, w)));
}

std::vector<u64> apply_Binv(const BlockInverse& state, std::span<const u64> w) { return state.apply(w); }

}  // namespace blocksolve
