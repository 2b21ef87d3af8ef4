#include "blocksolve/bench.hpp"

#include <algorithm>
#include <cstdio>

#include "blocksolve/random.hpp"

namespace blocksolve {

GeneratedSystem generate_system(std::size_t n, std::size_t nnz_per_row, long entry_bound, long rhs_bound, u64 seed) {
    const std::size_t nnz = std::min(nnz_per_row, n);
    return {gen_random_sparse(n, nnz, entry_bound, derive_seed(seed, "matrix")),
            gen_random_vector(n, rhs_bound, derive_seed(seed, "rhs"))};
}

BenchRecord run_one(const std::string& algo, const GeneratedSystem& sys, std::size_t nnz_per_row, u64 seed,
                    const SolveOptions& opts, bool keep_solution) {
    BenchRecord rec;
    rec.algo = algo;
    rec.n = sys.A.dim();
    rec.nnz_per_row = std::min(nnz_per_row, rec.n);
    rec.seed = seed;
    if (algo == kAlgoBlock) {
        rec.block_size = opts.block_size;
        if (rec.block_size == 0) rec.block_size = static_cast<std::size_t>(isqrt(BigInt(static_cast<unsigned long>(rec.n))).get_ui());
    }
    try {
        SolveReport rep = solve_with(algo, sys.A, sys.b, opts);
        rec.setup_s = rep.timings.setup_s;
        rec.lift_s = rep.timings.lift_s;
        rec.recon_s = rep.timings.recon_s;
        rec.total_s = rep.timings.total_s;
        rec.matvecs = rep.matvec_count;
        rec.retries = rep.retries;
        rec.success = verify_solution(sys.A, sys.b, rep.solution);
        if (keep_solution) rec.solution = std::move(rep.solution);
    } catch (const Error& e) {
        rec.success = false;
        rec.error = e.what();
    }
    return rec;
}

std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
    std::vector<BenchRecord> out;
    for (std::size_t n : cfg.sizes) {
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            const u64 seed = cfg.seed + t;
            const GeneratedSystem sys = generate_system(n, cfg.nnz_per_row, cfg.entry_bound, cfg.rhs_bound, seed);
            SolveOptions opts;
            opts.seed = seed;
            opts.block_size = cfg.block_size;
            for (const auto& algo : cfg.algos) {
                out.push_back(run_one(algo, sys, cfg.nnz_per_row, seed, opts, cfg.keep_solutions));
            }
        }
    }
    return out;
}

std::vector<BenchRecord> run_sweep(const SweepConfig& cfg) {
    std::vector<BenchRecord> out;
    const GeneratedSystem sys = generate_system(cfg.n, cfg.nnz_per_row, cfg.entry_bound, cfg.rhs_bound, cfg.seed);
    for (std::size_t s : cfg.block_sizes) {
        SolveOptions opts;
        opts.seed = cfg.seed;
        opts.block_size = s;
        BenchRecord rec = run_one(kAlgoBlock, sys, cfg.nnz_per_row, cfg.seed, opts);
        rec.block_size = s;
        out.push_back(std::move(rec));
    }
    return out;
}

std::optional<std::size_t> fastest(const std::vector<BenchRecord>& records) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].success) continue;
        if (!best || records[i].total_s < records[*best].total_s) best = i;
    }
    return best;
}

void write_csv_row(std::ostream& os, const BenchRecord& r) {
    char times[128];
    std::snprintf(times, sizeof times, "%.6f,%.6f,%.6f,%.6f", r.setup_s, r.lift_s, r.recon_s, r.total_s);
    os << r.algo << ',' << r.n << ',' << r.nnz_per_row << ',' << r.block_size << ',' << r.seed << ',' << times
       << ',' << r.matvecs << ',' << r.retries << ',' << (r.success ? "true" : "false") << '\n';
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
    os << kCsvHeader << '\n';
    for (const auto& r : records) write_csv_row(os, r);
}

}  // namespace blocksolve
