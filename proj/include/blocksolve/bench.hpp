#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "blocksolve/solvers.hpp"

namespace blocksolve {

struct BenchRecord {
    std::string algo;
    std::size_t n = 0;
    std::size_t nnz_per_row = 0;
    std::size_t block_size = 0;  // 0 for the non-block algorithms
    u64 seed = 0;
    double setup_s = 0;
    double lift_s = 0;
    double recon_s = 0;
    double total_s = 0;
    std::uint64_t matvecs = 0;
    std::size_t retries = 0;
    bool success = false;  // true only when the solution passed verify_solution
    std::string error;     // exception message of a failed run (not written to CSV)
    std::optional<RationalVector> solution;
};

struct BenchConfig {
    std::vector<std::size_t> sizes;
    std::vector<std::string> algos{kAlgoBlock, kAlgoDixon, kAlgoWiedemannPadic, kAlgoCraWiedemann};
    std::size_t nnz_per_row = 10;
    std::size_t trials = 1;
    long entry_bound = 100;
    long rhs_bound = 100;
    u64 seed = 0;
    std::size_t block_size = 0;  // 0: floor(sqrt(n))
    bool keep_solutions = false;
};

// The test system used by generate, bench and sweep for a given seed.
struct GeneratedSystem {
    SparseIntMatrix A;
    std::vector<BigInt> b;
};
GeneratedSystem generate_system(std::size_t n, std::size_t nnz_per_row, long entry_bound, long rhs_bound, u64 seed);

// Runs one solve and turns the outcome (or the failure) into a record.
BenchRecord run_one(const std::string& algo, const GeneratedSystem& sys, std::size_t nnz_per_row, u64 seed,
                    const SolveOptions& opts, bool keep_solution = false);

// One record per (size, algorithm, trial); trial t uses seed + t. Failures
// are recorded and the harness moves on.
std::vector<BenchRecord> run_bench(const BenchConfig& cfg);

struct SweepConfig {
    std::size_t n = 0;
    std::vector<std::size_t> block_sizes;
    std::size_t nnz_per_row = 10;
    long entry_bound = 100;
    long rhs_bound = 100;
    u64 seed = 0;
};

// solve_block_sparse once per blocking factor on a single fixed system.
std::vector<BenchRecord> run_sweep(const SweepConfig& cfg);

// Index of the fastest successful record, if any.
std::optional<std::size_t> fastest(const std::vector<BenchRecord>& records);

inline constexpr const char* kCsvHeader =
    "algo,n,nnz_per_row,block_size,seed,setup_s,lift_s,recon_s,total_s,matvecs,retries,success";

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records);
void write_csv_row(std::ostream& os, const BenchRecord& r);

}  // namespace blocksolve
