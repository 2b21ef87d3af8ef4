#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blocksolve/bench.hpp"
#include "blocksolve/io.hpp"
#include "blocksolve/solvers.hpp"

using namespace blocksolve;

namespace {

enum Exit { kOk = 0, kSingular = 1, kProjection = 2, kIo = 3, kUsage = 4 };

std::vector<std::size_t> parse_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const unsigned long v = std::stoul(item, &pos);
        if (pos != item.size()) throw InvalidParams("not an integer: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void print_report(const SolveReport& r) {
    std::fprintf(stderr,
                 "algorithm=%s prime=%llu steps=%zu block_size=%zu padded_dim=%zu primes=%zu retries=%zu "
                 "matvecs=%llu setup_s=%.6f lift_s=%.6f recon_s=%.6f total_s=%.6f\n",
                 r.algorithm.c_str(), static_cast<unsigned long long>(r.prime), r.lifting_steps, r.block_size,
                 r.padded_dim, r.primes_used, r.retries, static_cast<unsigned long long>(r.matvec_count),
                 r.timings.setup_s, r.timings.lift_s, r.timings.recon_s, r.timings.total_s);
}

void emit_csv(const std::string& path, const std::vector<BenchRecord>& recs) {
    if (path.empty() || path == "-") {
        write_csv(std::cout, recs);
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    write_csv(out, recs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for sparse integer linear systems"};
    app.require_subcommand(1);

    std::size_t n = 0, nnz = 10, trials = 1;
    long bound = 100;
    u64 seed = 0;
    std::string out_matrix, out_rhs, matrix, rhs, out, algo = kAlgoBlock, block_size = "auto", csv;
    std::string sizes = "400,900,1600", algos = "block,dixon,wiedemann-padic,cra-wiedemann", block_sizes;
    bool full = false, early_exit = false;
    unsigned prime_bits = 60;

    auto* gen = app.add_subcommand("generate", "Write a random sparse system");
    gen->add_option("--n", n, "Dimension")->required();
    gen->add_option("--nnz-per-row", nnz, "Nonzeros per row (capped at n)");
    gen->add_option("--bound", bound, "Entry bound for the matrix and right-hand side");
    gen->add_option("--seed", seed);
    gen->add_option("--out-matrix", out_matrix)->required();
    gen->add_option("--out-rhs", out_rhs)->required();

    auto* solve = app.add_subcommand("solve", "Solve A x = b exactly");
    solve->add_option("--matrix", matrix)->required();
    solve->add_option("--rhs", rhs)->required();
    solve->add_option("--algo", algo)->check(
        CLI::IsMember({kAlgoBlock, kAlgoDixon, kAlgoWiedemannPadic, kAlgoCraWiedemann}));
    solve->add_option("--block-size", block_size, "Blocking factor or 'auto'");
    solve->add_option("--seed", seed);
    solve->add_option("--prime-bits", prime_bits)->check(CLI::Range(8u, 62u));
    solve->add_flag("--early-exit", early_exit, "Attempt reconstruction before the full bound");
    solve->add_option("--out", out, "Solution file (default stdout)");

    auto* bench = app.add_subcommand("bench", "Benchmark all algorithms on random systems");
    bench->add_option("--sizes", sizes, "Comma-separated dimensions");
    bench->add_option("--algos", algos, "Comma-separated algorithm names");
    bench->add_option("--nnz-per-row", nnz);
    bench->add_option("--trials", trials);
    bench->add_option("--seed", seed);
    bench->add_option("--csv", csv, "Output CSV (default stdout)");
    bench->add_flag("--full", full, "Append the larger sizes 2500,3600");

    auto* sweep = app.add_subcommand("sweep", "Time the block solver over blocking factors");
    sweep->add_option("--n", n)->required();
    sweep->add_option("--block-sizes", block_sizes, "Comma-separated blocking factors")->required();
    sweep->add_option("--nnz-per-row", nnz);
    sweep->add_option("--seed", seed);
    sweep->add_option("--csv", csv, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen) {
            const auto sys = generate_system(n, nnz, bound, bound, seed);
            write_matrix_market(out_matrix, sys.A);
            write_vector(out_rhs, sys.b);
        } else if (*solve) {
            const SparseIntMatrix A = read_matrix_market(matrix);
            const std::vector<BigInt> b = read_vector(rhs);
            SolveOptions opts;
            opts.seed = seed;
            opts.prime_bits = prime_bits;
            opts.early_exit = early_exit;
            if (block_size != "auto") {
                const auto v = parse_list(block_size);
                if (v.size() != 1) throw InvalidParams("--block-size expects an integer or 'auto'");
                opts.block_size = v[0];
            }
            const SolveReport rep = solve_with(algo, A, b, opts);
            if (!verify_solution(A, b, rep.solution)) throw Error("solution failed verification");
            print_report(rep);
            if (out.empty() || out == "-") {
                write_solution(std::cout, rep.solution);
            } else {
                write_solution(out, rep.solution);
            }
        } else if (*bench) {
            BenchConfig cfg;
            cfg.sizes = parse_list(sizes);
            if (full) {
                for (std::size_t extra : {2500u, 3600u}) cfg.sizes.push_back(extra);
            }
            cfg.algos = split(algos);
            for (const auto& a : cfg.algos) {
                if (a != kAlgoBlock && a != kAlgoDixon && a != kAlgoWiedemannPadic && a != kAlgoCraWiedemann) {
                    throw InvalidParams("unknown algorithm '" + a + "'");
                }
            }
            cfg.nnz_per_row = nnz;
            cfg.trials = trials;
            cfg.seed = seed;
            const auto recs = run_bench(cfg);
            emit_csv(csv, recs);
            for (const auto& r : recs) {
                if (!r.success) std::fprintf(stderr, "%s n=%zu seed=%llu failed: %s\n", r.algo.c_str(), r.n,
                                             static_cast<unsigned long long>(r.seed), r.error.c_str());
            }
        } else if (*sweep) {
            SweepConfig cfg;
            cfg.n = n;
            cfg.block_sizes = parse_list(block_sizes);
            cfg.nnz_per_row = nnz;
            cfg.seed = seed;
            const auto recs = run_sweep(cfg);
            emit_csv(csv, recs);
            if (const auto best = fastest(recs)) {
                std::fprintf(stderr, "fastest block size: %zu (%.6f s)\n", recs[*best].block_size, recs[*best].total_s);
            } else {
                std::fprintf(stderr, "no blocking factor succeeded\n");
            }
        }
    } catch (const Singular& e) {
        std::fprintf(stderr, "singular: %s\n", e.what());
        return kSingular;
    } catch (const ProjectionFailure& e) {
        std::fprintf(stderr, "projection failure: %s\n", e.what());
        return kProjection;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kIo;
    } catch (const InvalidParams& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return kUsage;
    } catch (const DimensionMismatch& e) {
        std::fprintf(stderr, "dimension mismatch: %s\n", e.what());
        return kIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kOk;
}
