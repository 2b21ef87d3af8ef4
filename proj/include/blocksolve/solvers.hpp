#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blocksolve/arith.hpp"
#include "blocksolve/blockhankel.hpp"
#include "blocksolve/sparsemat.hpp"

namespace blocksolve {

struct PhaseTimings {
    double setup_s = 0;
    double lift_s = 0;
    double recon_s = 0;
    double total_s = 0;
};

struct SolveReport {
    std::string algorithm;
    RationalVector solution;
    u64 prime = 0;                   // lifting prime (last prime for CRA)
    std::size_t lifting_steps = 0;   // l; the loop runs l + 1 digit extractions
    std::size_t block_size = 0;      // block solver only
    std::size_t padded_dim = 0;      // block solver only
    std::size_t primes_used = 0;
    std::size_t retries = 0;         // failed projection draws plus failed primes
    std::uint64_t matvec_count = 0;  // sparse (and, for Dixon, dense) products with the matrix
    std::uint64_t setup_matvecs = 0;
    std::uint64_t min_step_matvecs = 0;
    std::uint64_t max_step_matvecs = 0;
    PhaseTimings timings;
};

struct SolveOptions {
    u64 seed = 0;
    std::size_t block_size = 0;  // 0 selects floor(sqrt(n))
    unsigned prime_bits = 60;
    std::size_t max_primes = 3;
    std::size_t max_projection_draws = 5;
    SigmaBasisAlgorithm sigma_algorithm = SigmaBasisAlgorithm::m_basis;
    // Try to reconstruct every ceil(l/8) steps and stop once the result verifies.
    bool early_exit = false;
    // Check b - A x == p^(i+1) b_(i+1) every debug_interval steps.
    bool debug_checks = false;
    std::size_t debug_interval = 16;
};

// Residual b_i, the mod-p digits x_0 .. x_(i-1) and the step index.
struct LiftingState {
    std::vector<BigInt> residual;
    std::vector<std::vector<u64>> digits;
    std::size_t step = 0;
};

// l = ceil(n/2 * c) where c is the least integer with
// p^c >= (n |A|^2) ((n-1) |A|^2 + |b|^2); norms below 1 are clamped to 1.
std::size_t lifting_steps_bound(std::size_t n, const BigInt& normA, const BigInt& normB, const PrimeField& F);

// Row-wise Hadamard bounds for A x = b: |det A| <= den_bound and every
// Cramer numerator is at most num_bound in absolute value.
struct CramerBounds {
    BigInt num_bound;
    BigInt den_bound;
};
CramerBounds cramer_bounds(std::size_t n, const BigInt& normA, const BigInt& normB);

// Recovers a vector of rationals with denominators dividing a common D <=
// den_bound from residues mod M (requires M > 2 * num_bound * den_bound).
// Later entries reuse the running common denominator, so most entries need
// a single multiplication instead of a full reconstruction.
RationalVector reconstruct_vector(std::span<const BigInt> residues, const BigInt& M, const BigInt& den_bound);

SolveReport solve_dixon_dense(const SparseIntMatrix& A, std::span<const BigInt> b, const SolveOptions& opts = {});
SolveReport solve_block_sparse(const SparseIntMatrix& A, std::span<const BigInt> b, const SolveOptions& opts = {});
SolveReport solve_wiedemann_padic(const SparseIntMatrix& A, std::span<const BigInt> b,
                                  const SolveOptions& opts = {});
SolveReport solve_cra_wiedemann(const SparseIntMatrix& A, std::span<const BigInt> b,
                                const SolveOptions& opts = {});

bool verify_solution(const SparseIntMatrix& A, std::span<const BigInt> b, const RationalVector& x);

// Algorithm names as used by the CLI and the bench harness.
inline constexpr const char* kAlgoBlock = "block";
inline constexpr const char* kAlgoDixon = "dixon";
inline constexpr const char* kAlgoWiedemannPadic = "wiedemann-padic";
inline constexpr const char* kAlgoCraWiedemann = "cra-wiedemann";

// Dispatches on one of the names above; throws InvalidParams otherwise.
SolveReport solve_with(const std::string& algorithm, const SparseIntMatrix& A, std::span<const BigInt> b,
                       const SolveOptions& opts = {});

}  // namespace blocksolve
