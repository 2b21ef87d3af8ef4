#include "blocksolve/minpoly.hpp"

#include <algorithm>

#include "blocksolve/random.hpp"

namespace blocksolve {

std::vector<u64> berlekamp_massey(const PrimeField& F, std::span<const u64> seq) {
    // C(z) = 1 + c_1 z + ... + c_L z^L is the connection polynomial.
    std::vector<u64> C{1}, Bp{1};
    std::size_t L = 0, shift = 1;
    u64 b = 1;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        u64 d = seq[i];
        for (std::size_t j = 1; j <= L && j < C.size(); ++j) d = F.add(d, F.mul(C[j], seq[i - j]));
        if (d == 0) {
            ++shift;
            continue;
        }
        const u64 coef = F.mul(d, F.inv(b));
        std::vector<u64> T = C;
        if (C.size() < Bp.size() + shift) C.resize(Bp.size() + shift, 0);
        for (std::size_t j = 0; j < Bp.size(); ++j) C[j + shift] = F.sub(C[j + shift], F.mul(coef, Bp[j]));
        if (2 * L <= i) {
            L = i + 1 - L;
            Bp = std::move(T);
            b = d;
            shift = 1;
        } else {
            ++shift;
        }
    }
    C.resize(L + 1, 0);
    std::vector<u64> f(L + 1);
    for (std::size_t k = 0; k <= L; ++k) f[k] = C[L - k];
    return f;
}

std::vector<u64> projected_minpoly(const SparseModMatrix& A, std::span<const u64> u, std::span<const u64> v) {
    const std::size_t n = A.dim();
    if (u.size() != n || v.size() != n) throw DimensionMismatch("projected_minpoly: vector length");
    const PrimeField& F = A.field();
    std::vector<u64> seq(2 * n);
    std::vector<u64> cur(v.begin(), v.end()), next(n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
        u128 acc = 0;
        std::size_t pending = 0;
        for (std::size_t k = 0; k < n; ++k) {
            acc += static_cast<u128>(u[k]) * cur[k];
            if (++pending == F.lazy_terms()) {
                acc = F.reduce128(acc);
                pending = 0;
            }
        }
        seq[i] = F.reduce128(acc);
        if (i + 1 < 2 * n) {
            A.apply_into(cur, next);
            cur.swap(next);
        }
    }
    return berlekamp_massey(F, seq);
}

std::vector<u64> wiedemann_minpoly(const SparseModMatrix& A, u64 seed) {
    const std::size_t n = A.dim();
    Rng rng(derive_seed(seed, "wiedemann_minpoly"));
    std::uniform_int_distribution<u64> dist(0, A.field().modulus() - 1);
    std::vector<u64> u(n), v(n);
    for (auto& x : u) x = dist(rng);
    for (auto& x : v) x = dist(rng);
    return projected_minpoly(A, u, v);
}

std::vector<u64> minpoly_solve(const SparseModMatrix& A, std::span<const u64> f, std::span<const u64> r) {
    const std::size_t n = A.dim();
    if (r.size() != n) throw DimensionMismatch("minpoly_solve: vector length");
    if (f.empty() || f[0] == 0) throw BadMinPoly("minimal polynomial has zero constant term");
    const PrimeField& F = A.field();
    const std::size_t d = f.size() - 1;
    std::vector<u64> acc(n, 0), next(n);
    if (d >= 1) {
        const u64 fp = F.shoup_precompute(f[d]);
        for (std::size_t k = 0; k < n; ++k) acc[k] = F.mul_shoup(r[k], f[d], fp);
        for (std::size_t j = d - 1; j >= 1; --j) {
            A.apply_into(acc, next);
            const u64 jp = F.shoup_precompute(f[j]);
            for (std::size_t k = 0; k < n; ++k) acc[k] = F.add(next[k], F.mul_shoup(r[k], f[j], jp));
        }
    }
    const u64 scale = F.neg(F.inv(f[0]));
    for (auto& x : acc) x = F.mul(x, scale);
    return acc;
}

bool minpoly_detects_singular(const SparseModMatrix& A, u64 seed) {
    const std::vector<u64> f = wiedemann_minpoly(A, seed);
    return !f.empty() && f[0] == 0 && f.size() > 1;
}

}  // namespace blocksolve
