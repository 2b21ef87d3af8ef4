#include "blocksolve/polymat.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace blocksolve {

namespace {

void check_same(const PolyMatrix& A, const PolyMatrix& B, const char* op) {
    if (!(A.field() == B.field())) throw InvalidParams(std::string(op) + ": different fields");
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw DimensionMismatch(std::string(op) + ": shapes differ");
}

using Coeffs = std::vector<DenseModMatrix>;

// out[i + off] += a[i] for all i.
void add_into(Coeffs& out, const Coeffs& a, std::size_t off) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i + off] = mat_add(out[i + off], a[i]);
}

Coeffs add_seq(const Coeffs& a, const Coeffs& b, const DenseModMatrix& zero) {
    Coeffs out(std::max(a.size(), b.size()), zero);
    add_into(out, a, 0);
    add_into(out, b, 0);
    return out;
}

DenseModMatrix zero_like(const DenseModMatrix& M) { return DenseModMatrix(M.field(), M.rows(), M.cols()); }

Coeffs mul_naive(const Coeffs& a, const Coeffs& b, const DenseModMatrix& zero) {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1, zero);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = mat_add(out[i + j], mat_mul(a[i], b[j]));
        }
    }
    return out;
}

Coeffs mul_karatsuba(const Coeffs& a, const Coeffs& b, const DenseModMatrix& zero) {
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) < kKaratsubaThreshold) return mul_naive(a, b, zero);
    const std::size_t h = std::max(a.size(), b.size()) / 2;
    if (std::min(a.size(), b.size()) <= h) return mul_naive(a, b, zero);
    Coeffs a0(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(h));
    Coeffs a1(a.begin() + static_cast<std::ptrdiff_t>(h), a.end());
    Coeffs b0(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(h));
    Coeffs b1(b.begin() + static_cast<std::ptrdiff_t>(h), b.end());
    // Matrix coefficients do not commute, but Karatsuba's middle term
    // (a0 + a1)(b0 + b1) - a0 b0 - a1 b1 = a0 b1 + a1 b0 keeps the order.
    Coeffs p0 = mul_karatsuba(a0, b0, zero);
    Coeffs p2 = mul_karatsuba(a1, b1, zero);
    Coeffs p1 = mul_karatsuba(add_seq(a0, a1, zero_like(a[0])), add_seq(b0, b1, zero_like(b[0])), zero);
    for (std::size_t i = 0; i < p0.size(); ++i) p1[i] = mat_sub(p1[i], p0[i]);
    for (std::size_t i = 0; i < p2.size(); ++i) p1[i] = mat_sub(p1[i], p2[i]);
    Coeffs out(a.size() + b.size() - 1, zero);
    add_into(out, p0, 0);
    add_into(out, p1, h);
    add_into(out, p2, 2 * h);
    return out;
}

}  // namespace

PolyMatrix::PolyMatrix(PrimeField F, std::size_t rows, std::size_t cols)
    : F_(F), rows_(rows), cols_(cols) {}

PolyMatrix::PolyMatrix(PrimeField F, std::size_t rows, std::size_t cols,
                       std::vector<DenseModMatrix> coeffs)
    : F_(F), rows_(rows), cols_(cols), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
        if (c.rows() != rows_ || c.cols() != cols_) throw DimensionMismatch("PolyMatrix: coefficient shape");
        if (!(c.field() == F_)) throw InvalidParams("PolyMatrix: coefficient over a different field");
    }
    trim();
}

PolyMatrix PolyMatrix::identity(PrimeField F, std::size_t n) {
    return PolyMatrix(F, n, n, {DenseModMatrix::identity(F, n)});
}

PolyMatrix PolyMatrix::monomial(const DenseModMatrix& c, std::size_t degree) {
    std::vector<DenseModMatrix> coeffs(degree + 1, DenseModMatrix(c.field(), c.rows(), c.cols()));
    coeffs[degree] = c;
    return PolyMatrix(c.field(), c.rows(), c.cols(), std::move(coeffs));
}

void PolyMatrix::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

DenseModMatrix PolyMatrix::coeff(std::size_t k) const {
    if (k < coeffs_.size()) return coeffs_[k];
    return DenseModMatrix(F_, rows_, cols_);
}

PolyMatrix PolyMatrix::transpose() const {
    std::vector<DenseModMatrix> t;
    t.reserve(coeffs_.size());
    for (const auto& c : coeffs_) t.push_back(c.transpose());
    return PolyMatrix(F_, cols_, rows_, std::move(t));
}

PolyMatrix PolyMatrix::truncate(std::size_t d) const {
    std::vector<DenseModMatrix> t(coeffs_.begin(),
                                  coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(d, coeffs_.size())));
    return PolyMatrix(F_, rows_, cols_, std::move(t));
}

PolyMatrix PolyMatrix::shift_down(std::size_t k) const {
    if (k >= coeffs_.size()) return PolyMatrix(F_, rows_, cols_);
    std::vector<DenseModMatrix> t(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end());
    return PolyMatrix(F_, rows_, cols_, std::move(t));
}

DenseModMatrix PolyMatrix::evaluate(u64 point) const {
    DenseModMatrix acc(F_, rows_, cols_);
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = mat_add(mat_scale(acc, point), coeffs_[k]);
    return acc;
}

PolyMatrix poly_add(const PolyMatrix& A, const PolyMatrix& B) {
    check_same(A, B, "poly_add");
    DenseModMatrix zero(A.field(), A.rows(), A.cols());
    return PolyMatrix(A.field(), A.rows(), A.cols(), add_seq(A.coeffs(), B.coeffs(), zero));
}

PolyMatrix poly_sub(const PolyMatrix& A, const PolyMatrix& B) {
    check_same(A, B, "poly_sub");
    const std::size_t len = std::max(A.length(), B.length());
    std::vector<DenseModMatrix> out;
    out.reserve(len);
    for (std::size_t k = 0; k < len; ++k) out.push_back(mat_sub(A.coeff(k), B.coeff(k)));
    return PolyMatrix(A.field(), A.rows(), A.cols(), std::move(out));
}

PolyMatrix poly_mul(const PolyMatrix& A, const PolyMatrix& B) {
    if (!(A.field() == B.field())) throw InvalidParams("poly_mul: different fields");
    if (A.cols() != B.rows()) throw DimensionMismatch("poly_mul: inner dimensions differ");
    DenseModMatrix zero(A.field(), A.rows(), B.cols());
    return PolyMatrix(A.field(), A.rows(), B.cols(), mul_karatsuba(A.coeffs(), B.coeffs(), zero));
}

PolyMatrix poly_mul_naive(const PolyMatrix& A, const PolyMatrix& B) {
    if (!(A.field() == B.field())) throw InvalidParams("poly_mul: different fields");
    if (A.cols() != B.rows()) throw DimensionMismatch("poly_mul: inner dimensions differ");
    DenseModMatrix zero(A.field(), A.rows(), B.cols());
    return PolyMatrix(A.field(), A.rows(), B.cols(), mul_naive(A.coeffs(), B.coeffs(), zero));
}

MBasisEngine::MBasisEngine(const PolyMatrix& F, std::size_t max_order, std::span<const long> shift,
                           std::size_t tracked_cols)
    : F_(F.field()), k_(F.rows()), l_(F.cols()), tracked_(std::min(tracked_cols, F.rows())),
      max_order_(max_order) {
    if (!shift.empty() && shift.size() != k_) throw DimensionMismatch("m_basis: shift length");
    degrees_.assign(k_, 0);
    if (!shift.empty()) std::copy(shift.begin(), shift.end(), degrees_.begin());
    DenseModMatrix I(F_, k_, tracked_);
    for (std::size_t i = 0; i < tracked_; ++i) I(i, i) = 1;
    basis_.push_back(std::move(I));
    residual_.reserve(max_order_);
    for (std::size_t d = 0; d < max_order_; ++d) residual_.push_back(F.coeff(d));
}

void MBasisEngine::advance_to(std::size_t order) {
    if (order > max_order_) {
        throw InvalidParams("m_basis: order " + std::to_string(order) + " beyond engine capacity " +
                            std::to_string(max_order_));
    }
    while (order_ < order) step();
}

void MBasisEngine::step() {
    const std::size_t sigma = order_;
    std::vector<std::size_t> rows(k_);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::stable_sort(rows.begin(), rows.end(),
                     [&](std::size_t a, std::size_t b) { return degrees_[a] < degrees_[b]; });

    DenseModMatrix& delta = residual_[sigma];
    std::vector<char> is_pivot(k_, 0);
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < l_; ++c) {
        std::size_t piv = k_;
        for (std::size_t r : rows) {
            if (!is_pivot[r] && delta(r, c) != 0) {
                piv = r;
                break;
            }
        }
        if (piv == k_) continue;
        is_pivot[piv] = 1;
        pivots.push_back(piv);
        const u64 pinv = F_.inv(delta(piv, c));
        for (std::size_t r : rows) {
            if (is_pivot[r] || delta(r, c) == 0) continue;
            // Every remaining nonzero row sorts after piv, so its degree is
            // at least deg(piv) and the update cannot raise it.
            const u64 f = F_.neg(F_.mul(delta(r, c), pinv));
            const u64 fp = F_.shoup_precompute(f);
            for (std::size_t d = sigma; d < max_order_; ++d) {
                auto dst = residual_[d].row(r);
                auto src = residual_[d].row(piv);
                for (std::size_t j = 0; j < l_; ++j) dst[j] = F_.add(dst[j], F_.mul_shoup(src[j], f, fp));
            }
            for (auto& coeff : basis_) {
                auto dst = coeff.row(r);
                auto src = coeff.row(piv);
                for (std::size_t j = 0; j < tracked_; ++j) dst[j] = F_.add(dst[j], F_.mul_shoup(src[j], f, fp));
            }
        }
    }
    if (!pivots.empty()) {
        basis_.emplace_back(F_, k_, tracked_);
        for (std::size_t r : pivots) {
            for (std::size_t d = basis_.size() - 1; d > 0; --d) {
                auto dst = basis_[d].row(r);
                auto src = basis_[d - 1].row(r);
                std::copy(src.begin(), src.end(), dst.begin());
            }
            auto low = basis_[0].row(r);
            std::fill(low.begin(), low.end(), 0);
            for (std::size_t d = max_order_ - 1; d > sigma; --d) {
                auto dst = residual_[d].row(r);
                auto src = residual_[d - 1].row(r);
                std::copy(src.begin(), src.end(), dst.begin());
            }
            auto res = residual_[sigma].row(r);
            std::fill(res.begin(), res.end(), 0);
            ++degrees_[r];
        }
        while (basis_.size() > 1 && basis_.back().is_zero()) basis_.pop_back();
    }
    ++order_;
}

PolyMatrix MBasisEngine::basis() const {
    return PolyMatrix(F_, k_, tracked_, basis_);
}

SigmaBasis MBasisEngine::snapshot() const {
    return SigmaBasis{basis(), degrees_, order_, Side::left};
}

SigmaBasis m_basis(const PolyMatrix& F, std::size_t d, std::span<const long> shift) {
    MBasisEngine engine(F, d, shift);
    engine.advance_to(d);
    return engine.snapshot();
}

SigmaBasis pm_basis(const PolyMatrix& F, std::size_t d, std::span<const long> shift) {
    if (d <= 1) return m_basis(F, d, shift);
    const std::size_t d1 = d / 2;
    SigmaBasis low = pm_basis(F.truncate(d1), d1, shift);
    PolyMatrix residual = poly_mul(low.basis, F.truncate(d)).truncate(d).shift_down(d1);
    SigmaBasis high = pm_basis(residual, d - d1, low.degrees);
    return SigmaBasis{poly_mul(high.basis, low.basis), high.degrees, d, Side::left};
}

SigmaBasis right_m_basis(const PolyMatrix& F, std::size_t d, std::span<const long> shift) {
    SigmaBasis S = m_basis(F.transpose(), d, shift);
    return SigmaBasis{S.basis.transpose(), std::move(S.degrees), d, Side::right};
}

SigmaBasis right_pm_basis(const PolyMatrix& F, std::size_t d, std::span<const long> shift) {
    SigmaBasis S = pm_basis(F.transpose(), d, shift);
    return SigmaBasis{S.basis.transpose(), std::move(S.degrees), d, Side::right};
}

bool satisfies_order(const SigmaBasis& S, const PolyMatrix& F) {
    PolyMatrix prod = S.side == Side::left ? poly_mul_naive(S.basis, F) : poly_mul_naive(F, S.basis);
    return prod.truncate(S.order).is_zero();
}

u64 det_at(const PolyMatrix& P, u64 point) {
    if (P.rows() != P.cols()) throw DimensionMismatch("det_at: matrix is not square");
    DenseModMatrix M = P.evaluate(point);
    const auto& F = P.field();
    const std::size_t n = M.rows();
    u64 det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap_ranges(M.row(piv).begin(), M.row(piv).end(), M.row(col).begin());
            det = F.neg(det);
        }
        det = F.mul(det, M(col, col));
        const u64 pinv = F.inv(M(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const u64 f = F.mul(M(r, col), pinv);
            for (std::size_t j = col; j < n; ++j) M(r, j) = F.sub(M(r, j), F.mul(f, M(col, j)));
        }
    }
    return det;
}

}  // namespace blocksolve
