#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "blocksolve/densemodp.hpp"

namespace blocksolve {

// Matrix polynomial over Z_p stored as its coefficient matrices, index =
// degree. Trailing zero coefficients are trimmed, so the zero polynomial has
// no coefficients and degree -1.
class PolyMatrix {
public:
    PolyMatrix(PrimeField F, std::size_t rows, std::size_t cols);
    PolyMatrix(PrimeField F, std::size_t rows, std::size_t cols, std::vector<DenseModMatrix> coeffs);

    static PolyMatrix identity(PrimeField F, std::size_t n);
    static PolyMatrix monomial(const DenseModMatrix& c, std::size_t degree);

    const PrimeField& field() const noexcept { return F_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    std::size_t length() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    // Zero matrix when k exceeds the degree.
    DenseModMatrix coeff(std::size_t k) const;
    const std::vector<DenseModMatrix>& coeffs() const noexcept { return coeffs_; }

    PolyMatrix transpose() const;
    PolyMatrix truncate(std::size_t d) const;   // mod z^d
    PolyMatrix shift_down(std::size_t k) const;  // quotient by z^k
    DenseModMatrix evaluate(u64 point) const;

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.F_ == b.F_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.coeffs_ == b.coeffs_;
    }

private:
    void trim();

    PrimeField F_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<DenseModMatrix> coeffs_;
};

PolyMatrix poly_add(const PolyMatrix& A, const PolyMatrix& B);
PolyMatrix poly_sub(const PolyMatrix& A, const PolyMatrix& B);

// Schoolbook convolution below kKaratsubaThreshold coefficients, Karatsuba
// above; neither needs an FFT-friendly prime.
inline constexpr std::size_t kKaratsubaThreshold = 32;
PolyMatrix poly_mul(const PolyMatrix& A, const PolyMatrix& B);
PolyMatrix poly_mul_naive(const PolyMatrix& A, const PolyMatrix& B);

enum class Side { left, right };

// Order basis of a matrix power series F.
//   left:  basis * F == 0 mod z^order, row i of basis has degree <= degrees[i]
//   right: F * basis == 0 mod z^order, column j has degree <= degrees[j]
// degrees are shifted degrees: the shift plus the number of times the row
// (column) was multiplied by z.
struct SigmaBasis {
    PolyMatrix basis;
    std::vector<long> degrees;
    std::size_t order = 0;
    Side side = Side::left;
};

// Iterative order-by-order construction. At each order the residual
// coefficient is eliminated using rows of smallest shifted degree as pivots
// (ties: lowest row index) and the pivot rows are multiplied by z.
class MBasisEngine {
public:
    // max_order bounds the orders advance_to() may reach. When tracked_cols
    // is smaller than F.rows(), only the first tracked_cols columns of the
    // basis are stored; the residual carries everything needed to continue.
    MBasisEngine(const PolyMatrix& F, std::size_t max_order, std::span<const long> shift = {},
                 std::size_t tracked_cols = static_cast<std::size_t>(-1));

    void advance_to(std::size_t order);
    std::size_t order() const noexcept { return order_; }
    const std::vector<long>& degrees() const noexcept { return degrees_; }

    // Current basis (restricted to the tracked columns).
    PolyMatrix basis() const;
    SigmaBasis snapshot() const;

private:
    void step();

    PrimeField F_;
    std::size_t k_;
    std::size_t l_;
    std::size_t tracked_;
    std::size_t max_order_;
    std::size_t order_ = 0;
    std::vector<long> degrees_;
    std::vector<DenseModMatrix> basis_;     // k x tracked coefficients
    std::vector<DenseModMatrix> residual_;  // k x l coefficients of basis*F mod z^max_order
};

SigmaBasis m_basis(const PolyMatrix& F, std::size_t d, std::span<const long> shift = {});

// Divide and conquer: basis of order d/2, residual middle product, basis of
// the remaining order with the propagated shift, then one product.
SigmaBasis pm_basis(const PolyMatrix& F, std::size_t d, std::span<const long> shift = {});

// Right bases via transposition of the left engine.
SigmaBasis right_m_basis(const PolyMatrix& F, std::size_t d, std::span<const long> shift = {});
SigmaBasis right_pm_basis(const PolyMatrix& F, std::size_t d, std::span<const long> shift = {});

// Order condition: basis*F (left) or F*basis (right) vanishes mod z^order.
bool satisfies_order(const SigmaBasis& S, const PolyMatrix& F);

// Determinant of a square polynomial matrix evaluated at a point.
u64 det_at(const PolyMatrix& P, u64 point);

}  // namespace blocksolve
