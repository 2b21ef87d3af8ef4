#include <doctest.h>

#include <sstream>

#include "blocksolve/bench.hpp"

using namespace blocksolve;

TEST_CASE("write_csv with no records prints the header only") {
    std::stringstream ss;
    write_csv(ss, {});
    CHECK(ss.str() == std::string(kCsvHeader) + "\n");
}

TEST_CASE("generate_system is deterministic and caps nnz") {
    const auto a = generate_system(20, 5, 100, 100, 3);
    const auto b = generate_system(20, 5, 100, 100, 3);
    CHECK(a.A == b.A);
    CHECK(a.b == b.b);
    const auto small = generate_system(3, 10, 100, 100, 3);
    CHECK(small.A.dim() == 3);
}

TEST_CASE("run_bench records every algorithm and agrees") {
    BenchConfig cfg;
    cfg.sizes = {16, 25};
    cfg.trials = 2;
    cfg.seed = 7;
    cfg.keep_solutions = true;
    const auto recs = run_bench(cfg);
    REQUIRE(recs.size() == 2 * 2 * 4);
    for (std::size_t k = 0; k < recs.size(); k += 4) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(recs[k + j].success);
            CHECK(recs[k + j].solution == recs[k].solution);
            CHECK(recs[k + j].seed == recs[k].seed);
        }
        CHECK(recs[k].algo == std::string(kAlgoBlock));
        CHECK(recs[k].block_size == static_cast<std::size_t>(recs[k].n == 16 ? 4 : 5));
        CHECK(recs[k + 1].block_size == 0);
    }
    CHECK(recs[0].seed == 7);
    CHECK(recs[4].seed == 8);

    std::stringstream ss;
    write_csv(ss, recs);
    std::string line;
    std::getline(ss, line);
    CHECK(line == kCsvHeader);
    std::size_t rows = 0;
    while (std::getline(ss, line)) {
        ++rows;
        CHECK(line.substr(line.size() - 4) == "true");
    }
    CHECK(rows == recs.size());

    const auto again = run_bench(cfg);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(again[i].matvecs == recs[i].matvecs);
        CHECK(again[i].solution == recs[i].solution);
    }
}

TEST_CASE("run_sweep records failures and picks the fastest") {
    SweepConfig cfg;
    cfg.n = 16;
    cfg.block_sizes = {1, 2, 4, 17};
    cfg.seed = 1;
    const auto recs = run_sweep(cfg);
    REQUIRE(recs.size() == 4);
    CHECK(recs[0].success);
    CHECK(recs[2].success);
    CHECK_FALSE(recs[3].success);
    CHECK(recs[3].block_size == 17);
    CHECK_FALSE(recs[3].error.empty());
    const auto best = fastest(recs);
    REQUIRE(best.has_value());
    CHECK(*best < 3);
    CHECK_FALSE(fastest({recs[3]}).has_value());
}
