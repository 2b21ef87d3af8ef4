#include "blocksolve/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>

#include "blocksolve/blockproj.hpp"
#include "blocksolve/densemodp.hpp"
#include "blocksolve/minpoly.hpp"
#include "blocksolve/random.hpp"

namespace blocksolve {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

BigInt clamp1(const BigInt& x) { return x < 1 ? BigInt(1) : x; }

void check_system(const SparseIntMatrix& A, std::span<const BigInt> b) {
    if (A.dim() == 0) throw InvalidParams("empty system");
    if (b.size() != A.dim()) throw DimensionMismatch("right-hand side length differs from matrix dimension");
}

BigInt pow_ui(const BigInt& base, std::size_t e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

std::vector<BigInt> to_big(std::span<const u64> x) {
    std::vector<BigInt> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) mpz_set_ui(out[i].get_mpz_t(), x[i]);
    return out;
}

// Maps a vector in the lifting frame to the vector the integer matrix is
// applied to (identity, or R for the block solver).
using FrameMap = std::function<std::vector<BigInt>(std::span<const BigInt>)>;
using DigitSolver = std::function<std::vector<u64>(std::span<const u64>)>;

struct LiftSetup {
    const SparseIntMatrix& A;
    std::span<const BigInt> b;
    const PrimeField& F;
    std::size_t steps;  // l; runs l + 1 extractions
    FrameMap frame;
    DigitSolver solve;
    const OpCounter* mod_counter = nullptr;  // products inside solve()
    std::uint64_t extra_per_step = 0;        // products not visible to mod_counter
    BigInt den_bound;
    const SolveOptions& opts;
    // Turns a reconstructed frame solution into the final answer.
    std::function<RationalVector(RationalVector)> finish;
};

struct LiftResult {
    bool ok = false;  // false: some residual was not divisible by p
    LiftingState state;
    std::optional<RationalVector> early;
    std::uint64_t matvecs = 0;
    std::uint64_t min_step = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_step = 0;
};

BigInt power_of(const PrimeField& F, std::size_t k) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), F.modulus(), k);
    return r;
}

LiftResult run_lifting(const LiftSetup& L) {
    const std::size_t n = L.A.dim();
    const u64 p = L.F.modulus();
    LiftResult out;
    out.state.residual.assign(L.b.begin(), L.b.end());
    out.state.digits.reserve(L.steps + 1);
    const std::size_t early_every = std::max<std::size_t>(1, (L.steps + 7) / 8);

    for (std::size_t i = 0; i <= L.steps; ++i) {
        const std::uint64_t before = L.mod_counter ? L.mod_counter->get() : 0;
        std::vector<u64> xi = L.solve(reduce_vec(out.state.residual, L.F));
        const std::vector<BigInt> img = L.A.apply(L.frame(to_big(xi)));
        for (std::size_t k = 0; k < n; ++k) {
            BigInt& res = out.state.residual[k];
            res -= img[k];
            if (!mpz_divisible_ui_p(res.get_mpz_t(), p)) return out;
            mpz_divexact_ui(res.get_mpz_t(), res.get_mpz_t(), p);
        }
        const std::uint64_t step = (L.mod_counter ? L.mod_counter->get() - before : 0) + 1 + L.extra_per_step;
        out.matvecs += step;
        out.min_step = std::min(out.min_step, step);
        out.max_step = std::max(out.max_step, step);
        out.state.digits.push_back(std::move(xi));
        out.state.step = i + 1;

        if (L.opts.debug_checks && L.opts.debug_interval > 0 && (i + 1) % L.opts.debug_interval == 0) {
            const std::vector<BigInt> X = radix_combine(out.state.digits, L.F);
            const std::vector<BigInt> AX = L.A.apply(L.frame(X));
            const BigInt pk = power_of(L.F, i + 1);
            for (std::size_t k = 0; k < n; ++k) {
                if (L.b[k] - AX[k] != pk * out.state.residual[k]) {
                    throw Error("lifting invariant violated at step " + std::to_string(i));
                }
            }
        }
        if (L.opts.early_exit && i < L.steps && (i + 1) % early_every == 0) {
            const BigInt M = power_of(L.F, i + 1);
            BigInt db = isqrt(BigInt((M - 1) / 2));
            if (L.den_bound < db) db = L.den_bound;
            if (db < 1) continue;
            try {
                const std::vector<BigInt> X = radix_combine(out.state.digits, L.F);
                RationalVector cand = L.finish(reconstruct_vector(X, M, db));
                out.matvecs += 1;
                if (verify_solution(L.A, L.b, cand)) {
                    out.early = std::move(cand);
                    out.ok = true;
                    return out;
                }
            } catch (const NoReconstruction&) {
            }
        }
    }
    out.ok = true;
    return out;
}

void fill_lift_stats(SolveReport& rep, const LiftResult& lr) {
    rep.matvec_count += lr.matvecs;
    rep.min_step_matvecs = lr.min_step == std::numeric_limits<std::uint64_t>::max() ? 0 : lr.min_step;
    rep.max_step_matvecs = lr.max_step;
}

// Reconstructs, applies finish() and verifies; nullopt if anything fails.
std::optional<RationalVector> reconstruct_and_verify(const LiftSetup& L, const LiftResult& lr, SolveReport& rep) {
    const auto t0 = Clock::now();
    std::optional<RationalVector> result;
    if (lr.early) {
        result = *lr.early;
    } else {
        try {
            const std::vector<BigInt> X = radix_combine(lr.state.digits, L.F);
            const BigInt M = power_of(L.F, lr.state.digits.size());
            RationalVector cand = L.finish(reconstruct_vector(X, M, L.den_bound));
            if (verify_solution(L.A, L.b, cand)) result = std::move(cand);
        } catch (const NoReconstruction&) {
        }
    }
    rep.timings.recon_s += seconds_since(t0);
    return result;
}

RationalVector identity_finish(RationalVector y) { return y; }

}  // namespace

std::size_t lifting_steps_bound(std::size_t n, const BigInt& normA, const BigInt& normB, const PrimeField& F) {
    if (n == 0) throw InvalidParams("lifting_steps_bound: n must be positive");
    const BigInt a = clamp1(normA), b = clamp1(normB);
    const BigInt X = BigInt(static_cast<unsigned long>(n)) * a * a;
    const BigInt Y = BigInt(static_cast<unsigned long>(n - 1)) * a * a + b * b;
    const BigInt target = X * Y;
    std::size_t c = 0;
    BigInt pc = 1;
    while (pc < target) {
        pc *= F.modulus();
        ++c;
    }
    return (n * c + 1) / 2;
}

CramerBounds cramer_bounds(std::size_t n, const BigInt& normA, const BigInt& normB) {
    const BigInt a = clamp1(normA), b = clamp1(normB);
    const BigInt X = BigInt(static_cast<unsigned long>(n)) * a * a;
    const BigInt Y = BigInt(static_cast<unsigned long>(n - 1)) * a * a + b * b;
    return {isqrt(pow_ui(Y, n)), isqrt(pow_ui(X, n))};
}

RationalVector reconstruct_vector(std::span<const BigInt> residues, const BigInt& M, const BigInt& den_bound) {
    if (den_bound < 1) throw InvalidParams("reconstruct_vector: denominator bound must be positive");
    RationalVector out;
    out.numerators.resize(residues.size());
    BigInt d = 1;  // running common denominator
    std::vector<BigInt> scaled_by(residues.size());
    const BigInt half = M / 2;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        BigInt y = (d * residues[i]) % M;
        if (y < 0) y += M;
        const BigInt dr = den_bound / d;
        if (dr < 1) throw NoReconstruction("reconstruct_vector: denominator bound exhausted");
        const BigInt nr = (M - 1) / (2 * dr);
        BigInt sym = y > half ? BigInt(y - M) : y;
        if (abs(sym) <= nr) {
            out.numerators[i] = sym;
            scaled_by[i] = d;
            continue;
        }
        const Rational q = rational_reconstruct(y, M, nr, dr);
        // entry i = q / d = num / (d * e); scale earlier entries later.
        d *= q.get_den();
        out.numerators[i] = q.get_num();
        scaled_by[i] = d;
    }
    // entry i is numerators[i] / scaled_by[i]; bring all to denominator d.
    for (std::size_t i = 0; i < residues.size(); ++i) {
        if (scaled_by[i] != d) out.numerators[i] *= d / scaled_by[i];
    }
    out.denominator = d;
    out.normalize();
    return out;
}

bool verify_solution(const SparseIntMatrix& A, std::span<const BigInt> b, const RationalVector& x) {
    if (b.size() != A.dim() || x.size() != A.dim() || x.denominator <= 0) return false;
    const std::vector<BigInt> Ax = A.apply(x.numerators);
    for (std::size_t i = 0; i < Ax.size(); ++i) {
        if (Ax[i] != x.denominator * b[i]) return false;
    }
    return true;
}

SolveReport solve_dixon_dense(const SparseIntMatrix& A, std::span<const BigInt> b, const SolveOptions& opts) {
    check_system(A, b);
    const auto t_start = Clock::now();
    const std::size_t n = A.dim();
    SolveReport rep;
    rep.algorithm = kAlgoDixon;
    const BigInt normA = norm_inf(A), normB = norm_inf_vec(b);
    const BigInt den_bound = cramer_bounds(n, normA, normB).den_bound;

    for (std::size_t attempt = 0; attempt < opts.max_primes; ++attempt) {
        auto t0 = Clock::now();
        const PrimeField F = random_prime(opts.prime_bits, derive_seed(opts.seed, "prime", attempt));
        ++rep.primes_used;
        const SparseModMatrix Ap = reduce_mod(A, F);
        std::optional<DenseModMatrix> inv;
        try {
            inv = mat_inverse(DenseModMatrix(F, n, n, Ap.to_dense()));
        } catch (const SingularMod&) {
            ++rep.retries;
            rep.timings.setup_s += seconds_since(t0);
            continue;
        }
        rep.timings.setup_s += seconds_since(t0);

        const std::size_t steps = lifting_steps_bound(n, normA, normB, F);
        const LiftSetup L{A,
                          b,
                          F,
                          steps,
                          [](std::span<const BigInt> x) { return std::vector<BigInt>(x.begin(), x.end()); },
                          [&](std::span<const u64> r) { return mat_vec(*inv, r); },
                          nullptr,
                          1,
                          den_bound,
                          opts,
                          identity_finish};
        t0 = Clock::now();
        LiftResult lr = run_lifting(L);
        rep.timings.lift_s += seconds_since(t0);
        fill_lift_stats(rep, lr);
        if (!lr.ok) {
            ++rep.retries;
            continue;
        }
        if (auto x = reconstruct_and_verify(L, lr, rep)) {
            rep.solution = std::move(*x);
            rep.prime = F.modulus();
            rep.lifting_steps = steps;
            rep.timings.total_s = seconds_since(t_start);
            return rep;
        }
        ++rep.retries;
    }
    throw Singular("matrix is singular modulo " + std::to_string(opts.max_primes) + " distinct primes");
}

SolveReport solve_block_sparse(const SparseIntMatrix& A, std::span<const BigInt> b, const SolveOptions& opts) {
    check_system(A, b);
    const auto t_start = Clock::now();
    const std::size_t n0 = A.dim();
    std::size_t s = opts.block_size;
    if (s == 0) {
        s = static_cast<std::size_t>(isqrt(BigInt(static_cast<unsigned long>(n0))).get_ui());
        if (s == 0) s = 1;
    }
    if (s > n0) {
        throw InvalidParams("blocking factor " + std::to_string(s) + " exceeds dimension " + std::to_string(n0));
    }
    const std::size_t n = s * ((n0 + s - 1) / s);
    const SparseIntMatrix Apad = n == n0 ? A : A.padded(n);
    std::vector<BigInt> bpad(b.begin(), b.end());
    bpad.resize(n, BigInt(0));

    SolveReport rep;
    rep.algorithm = kAlgoBlock;
    rep.block_size = s;
    rep.padded_dim = n;
    const BigInt normA = norm_inf(Apad), normB = norm_inf_vec(bpad);

    std::size_t singular_primes = 0;
    for (std::size_t attempt = 0; attempt < opts.max_primes; ++attempt) {
        const PrimeField F = random_prime(opts.prime_bits, derive_seed(opts.seed, "prime", attempt));
        ++rep.primes_used;
        const SparseModMatrix Ap = reduce_mod(Apad, F);
        for (std::size_t draw = 0; draw < opts.max_projection_draws; ++draw) {
            auto t0 = Clock::now();
            const BlockProjection proj =
                make_projection(n, s, F, derive_seed(opts.seed, "projection", attempt * opts.max_projection_draws + draw));
            const SparseModMatrix Bp = Ap.scale_columns(proj.r_diag());
            std::optional<BlockInverse> binv;
            try {
                binv.emplace(Bp, proj, OffDiagOptions{opts.sigma_algorithm, kSelfCheckCap});
            } catch (const SingularHankel&) {
                rep.matvec_count += Bp.matvecs().get();
                rep.setup_matvecs += Bp.matvecs().get();
                rep.timings.setup_s += seconds_since(t0);
                ++rep.retries;
                continue;
            }
            rep.matvec_count += Bp.matvecs().get();
            rep.setup_matvecs += Bp.matvecs().get();
            rep.timings.setup_s += seconds_since(t0);

            // |B| = max |a_ij| r_j with r_j in [1, p-1] read as integers.
            BigInt normBmat = 0;
            {
                const auto cols = Apad.col_idx();
                const auto vals = Apad.values();
                const auto r = proj.r_diag();
                for (std::size_t k = 0; k < vals.size(); ++k) {
                    BigInt v = abs(vals[k]);
                    v *= static_cast<unsigned long>(r[cols[k]]);
                    if (v > normBmat) normBmat = v;
                }
            }
            const std::size_t steps = lifting_steps_bound(n, normBmat, normB, F);
            const BigInt den_bound = cramer_bounds(n, normBmat, normB).den_bound;
            const LiftSetup L{Apad,
                              bpad,
                              F,
                              steps,
                              [&](std::span<const BigInt> x) { return proj.apply_R_int(x); },
                              [&](std::span<const u64> r) { return binv->apply(r); },
                              &Bp.matvecs(),
                              0,
                              den_bound,
                              opts,
                              [&](RationalVector y) {
                                  // Early-exit candidates are verified against the padded system.
                                  RationalVector x;
                                  x.numerators = proj.apply_R_int(y.numerators);
                                  x.denominator = y.denominator;
                                  x.normalize();
                                  return x;
                              }};
            t0 = Clock::now();
            LiftResult lr = run_lifting(L);
            rep.timings.lift_s += seconds_since(t0);
            fill_lift_stats(rep, lr);
            if (!lr.ok) {
                ++rep.retries;
                continue;
            }
            if (auto xpad = reconstruct_and_verify(L, lr, rep)) {
                RationalVector x;
                x.numerators.assign(xpad->numerators.begin(),
                                    xpad->numerators.begin() + static_cast<std::ptrdiff_t>(n0));
                x.denominator = xpad->denominator;
                x.normalize();
                rep.solution = std::move(x);
                rep.prime = F.modulus();
                rep.lifting_steps = steps;
                rep.timings.total_s = seconds_since(t_start);
                return rep;
            }
            ++rep.retries;
        }
        if (minpoly_detects_singular(Ap, derive_seed(opts.seed, "singularity", attempt))) ++singular_primes;
    }
    if (singular_primes == opts.max_primes) {
        throw Singular("matrix is singular modulo " + std::to_string(opts.max_primes) + " distinct primes");
    }
    throw ProjectionFailure("no usable block projection after " + std::to_string(rep.retries) + " attempts");
}

SolveReport solve_wiedemann_padic(const SparseIntMatrix& A, std::span<const BigInt> b, const SolveOptions& opts) {
    check_system(A, b);
    const auto t_start = Clock::now();
    const std::size_t n = A.dim();
    SolveReport rep;
    rep.algorithm = kAlgoWiedemannPadic;
    const BigInt normA = norm_inf(A), normB = norm_inf_vec(b);
    const BigInt den_bound = cramer_bounds(n, normA, normB).den_bound;

    std::size_t singular_primes = 0;
    for (std::size_t attempt = 0; attempt < opts.max_primes; ++attempt) {
        const PrimeField F = random_prime(opts.prime_bits, derive_seed(opts.seed, "prime", attempt));
        ++rep.primes_used;
        const SparseModMatrix Ap = reduce_mod(A, F);
        for (std::size_t draw = 0; draw < opts.max_projection_draws; ++draw) {
            auto t0 = Clock::now();
            const std::uint64_t before = Ap.matvecs().get();
            const std::vector<u64> f =
                wiedemann_minpoly(Ap, derive_seed(opts.seed, "projection", attempt * opts.max_projection_draws + draw));
            rep.matvec_count += Ap.matvecs().get() - before;
            rep.setup_matvecs += Ap.matvecs().get() - before;
            rep.timings.setup_s += seconds_since(t0);
            if (f[0] == 0) {
                // z divides the minimal polynomial: A is singular mod p.
                ++rep.retries;
                ++singular_primes;
                break;
            }
            const std::size_t steps = lifting_steps_bound(n, normA, normB, F);
            const LiftSetup L{A,
                              b,
                              F,
                              steps,
                              [](std::span<const BigInt> x) { return std::vector<BigInt>(x.begin(), x.end()); },
                              [&](std::span<const u64> r) { return minpoly_solve(Ap, f, r); },
                              &Ap.matvecs(),
                              0,
                              den_bound,
                              opts,
                              identity_finish};
            t0 = Clock::now();
            LiftResult lr = run_lifting(L);
            rep.timings.lift_s += seconds_since(t0);
            fill_lift_stats(rep, lr);
            if (!lr.ok) {
                // The projected polynomial missed part of the minimal polynomial.
                ++rep.retries;
                continue;
            }
            if (auto x = reconstruct_and_verify(L, lr, rep)) {
                rep.solution = std::move(*x);
                rep.prime = F.modulus();
                rep.lifting_steps = steps;
                rep.timings.total_s = seconds_since(t_start);
                return rep;
            }
            ++rep.retries;
        }
    }
    if (singular_primes == opts.max_primes) {
        throw Singular("matrix is singular modulo " + std::to_string(opts.max_primes) + " distinct primes");
    }
    throw ProjectionFailure("no valid minimal polynomial after " + std::to_string(rep.retries) + " attempts");
}

SolveReport solve_cra_wiedemann(const SparseIntMatrix& A, std::span<const BigInt> b, const SolveOptions& opts) {
    check_system(A, b);
    const auto t_start = Clock::now();
    const std::size_t n = A.dim();
    SolveReport rep;
    rep.algorithm = kAlgoCraWiedemann;
    const CramerBounds cb = cramer_bounds(n, norm_inf(A), norm_inf_vec(b));
    const BigInt target = 2 * cb.num_bound * cb.den_bound;
    rep.timings.setup_s = seconds_since(t_start);

    auto t0 = Clock::now();
    std::vector<BigInt> X(n, BigInt(0));
    BigInt M = 1;
    std::set<u64> seen;
    std::size_t consecutive_failures = 0, successes = 0;
    bool nonsingular_seen = false;
    for (std::size_t idx = 0; M <= target; ++idx) {
        const PrimeField F = random_prime(opts.prime_bits, derive_seed(opts.seed, "prime", idx));
        if (!seen.insert(F.modulus()).second) continue;
        ++rep.primes_used;
        const SparseModMatrix Ap = reduce_mod(A, F);
        const std::vector<u64> bp = reduce_vec(b, F);

        Rng rng(derive_seed(opts.seed, "projection", idx));
        std::uniform_int_distribution<u64> dist(0, F.modulus() - 1);
        std::vector<u64> u(n);
        for (auto& x : u) x = dist(rng);

        bool ok = false;
        std::vector<u64> x;
        const std::vector<u64> f = projected_minpoly(Ap, u, bp);
        if (f[0] != 0) {
            x = minpoly_solve(Ap, f, bp);
            ok = Ap.apply(x) == bp;
        }
        // A consistent singular system also passes the check above. A full
        // degree projected minpoly with f(0) != 0 proves A invertible mod p;
        // otherwise test once with a random minpoly.
        if (ok && !nonsingular_seen) {
            if (f.size() == n + 1) {
                nonsingular_seen = true;
            } else if (minpoly_detects_singular(Ap, derive_seed(opts.seed, "singular", idx))) {
                ok = false;
            } else {
                nonsingular_seen = true;
            }
        }
        rep.matvec_count += Ap.matvecs().get();
        if (!ok) {
            ++rep.retries;
            if (++consecutive_failures >= opts.max_primes && successes == 0) {
                throw Singular("no solution modulo " + std::to_string(consecutive_failures) + " consecutive primes");
            }
            continue;
        }
        consecutive_failures = 0;
        ++successes;

        // Garner step: X <- X + M * ((x - X) M^-1 mod p).
        const u64 p = F.modulus();
        const u64 minv = F.inv(static_cast<u64>(mpz_fdiv_ui(M.get_mpz_t(), p)));
        const u64 mp = F.shoup_precompute(minv);
        for (std::size_t j = 0; j < n; ++j) {
            const u64 cur = static_cast<u64>(mpz_fdiv_ui(X[j].get_mpz_t(), p));
            const u64 t = F.mul_shoup(F.sub(x[j], cur), minv, mp);
            mpz_addmul_ui(X[j].get_mpz_t(), M.get_mpz_t(), t);
        }
        M *= p;
        rep.prime = p;
    }
    rep.timings.lift_s = seconds_since(t0);

    t0 = Clock::now();
    RationalVector sol;
    try {
        sol = reconstruct_vector(X, M, cb.den_bound);
    } catch (const NoReconstruction&) {
        throw Singular("Chinese remainder images do not reconstruct to a solution");
    }
    const bool good = verify_solution(A, b, sol);
    rep.timings.recon_s = seconds_since(t0);
    if (!good) throw Singular("combined solution fails verification");
    rep.solution = std::move(sol);
    rep.timings.total_s = seconds_since(t_start);
    return rep;
}

SolveReport solve_with(const std::string& algorithm, const SparseIntMatrix& A, std::span<const BigInt> b,
                       const SolveOptions& opts) {
    if (algorithm == kAlgoBlock) return solve_block_sparse(A, b, opts);
    if (algorithm == kAlgoDixon) return solve_dixon_dense(A, b, opts);
    if (algorithm == kAlgoWiedemannPadic) return solve_wiedemann_padic(A, b, opts);
    if (algorithm == kAlgoCraWiedemann) return solve_cra_wiedemann(A, b, opts);
    throw InvalidParams("unknown algorithm '" + algorithm + "'");
}

}  // namespace blocksolve
