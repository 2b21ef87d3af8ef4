#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blocksolve/bench.hpp"
#include "blocksolve/solvers.hpp"

namespace py = pybind11;
using namespace blocksolve;

namespace {

// Python ints cross the boundary as decimal strings.
BigInt to_big(const py::handle& h) { return BigInt(py::str(h).cast<std::string>()); }

py::int_ to_py(const BigInt& x) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

SparseIntMatrix matrix_from(std::size_t n, const py::iterable& triplets) {
    std::vector<Triplet> t;
    for (const auto& item : triplets) {
        const auto tup = item.cast<py::tuple>();
        if (tup.size() != 3) throw InvalidParams("triplets must be (row, col, value)");
        t.push_back({tup[0].cast<std::size_t>(), tup[1].cast<std::size_t>(), to_big(tup[2])});
    }
    return SparseIntMatrix::from_triplets(n, std::move(t));
}

std::vector<BigInt> vector_from(const py::iterable& xs) {
    std::vector<BigInt> out;
    for (const auto& x : xs) out.push_back(to_big(x));
    return out;
}

py::list triplets_of(const SparseIntMatrix& A) {
    py::list out;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        for (std::size_t k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k) {
            out.append(py::make_tuple(i, A.col_idx()[k], to_py(A.values()[k])));
        }
    }
    return out;
}

py::list ints_of(const std::vector<BigInt>& xs) {
    py::list out;
    for (const auto& x : xs) out.append(to_py(x));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact sparse integer linear system solvers";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<Singular>(m, "Singular", m.attr("Error").ptr());
    py::register_exception<ProjectionFailure>(m, "ProjectionFailure", m.attr("Error").ptr());
    py::register_exception<InvalidParams>(m, "InvalidParams", m.attr("Error").ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", m.attr("Error").ptr());

    m.attr("ALGORITHMS") =
        py::make_tuple(kAlgoBlock, kAlgoDixon, kAlgoWiedemannPadic, kAlgoCraWiedemann);

    m.def(
        "solve",
        [](std::size_t n, const py::iterable& triplets, const py::iterable& b, const std::string& algo, u64 seed,
           std::size_t block_size, unsigned prime_bits, bool early_exit) {
            const SparseIntMatrix A = matrix_from(n, triplets);
            const std::vector<BigInt> rhs = vector_from(b);
            SolveOptions opts;
            opts.seed = seed;
            opts.block_size = block_size;
            opts.prime_bits = prime_bits;
            opts.early_exit = early_exit;
            SolveReport rep;
            {
                py::gil_scoped_release release;
                rep = solve_with(algo, A, rhs, opts);
            }
            py::dict d;
            d["numerators"] = ints_of(rep.solution.numerators);
            d["denominator"] = to_py(rep.solution.denominator);
            d["algorithm"] = rep.algorithm;
            d["prime"] = rep.prime;
            d["lifting_steps"] = rep.lifting_steps;
            d["block_size"] = rep.block_size;
            d["retries"] = rep.retries;
            d["matvecs"] = rep.matvec_count;
            d["total_s"] = rep.timings.total_s;
            return d;
        },
        py::arg("n"), py::arg("triplets"), py::arg("b"), py::arg("algo") = kAlgoBlock, py::arg("seed") = 0,
        py::arg("block_size") = 0, py::arg("prime_bits") = 60, py::arg("early_exit") = false,
        "Solve A x = b for A given as (row, col, value) triplets. Returns numerators over a common denominator.");

    m.def(
        "verify",
        [](std::size_t n, const py::iterable& triplets, const py::iterable& b, const py::iterable& numerators,
           const py::handle& denominator) {
            RationalVector x{vector_from(numerators), to_big(denominator)};
            return verify_solution(matrix_from(n, triplets), vector_from(b), x);
        },
        py::arg("n"), py::arg("triplets"), py::arg("b"), py::arg("numerators"), py::arg("denominator"));

    m.def(
        "generate",
        [](std::size_t n, std::size_t nnz_per_row, long bound, u64 seed) {
            const auto sys = generate_system(n, nnz_per_row, bound, bound, seed);
            return py::make_tuple(triplets_of(sys.A), ints_of(sys.b));
        },
        py::arg("n"), py::arg("nnz_per_row") = 10, py::arg("bound") = 100, py::arg("seed") = 0,
        "Random sparse system with a full diagonal: (triplets, rhs).");
}
